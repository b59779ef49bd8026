"""Per-matching summary statistics: unmatched rates, reported-rank
distributions, proposer-swap agreement, and blocking-pair incidence."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from .da import UNMATCHED, Matching, rank_of_match
from .market import DOCTORS, PreferenceProfile

MECHANISMS = ("DA", "Int-DA", "Tr-DA")


class RankFractions(NamedTuple):
    """Per threshold: fraction of doctors matched at or above it.

    ``matched`` conditions on being matched; ``overall`` divides by all
    doctors. Both variants are reported because published match statistics
    are usually conditional while simulation summaries often are not.
    """

    matched: dict[int, float]
    overall: dict[int, float]


@dataclass(frozen=True)
class MetricsRecord:
    """One simulated mechanism run, flattened to a CSV-friendly record."""

    run_id: str
    seed: int
    n: int
    lambda_d: float
    lambda_h: float
    k: int
    k_prime: int
    mechanism: str
    proposing_side: str
    unmatched_doctors: float
    unmatched_hospitals: float
    first_rank_matched: float
    first_rank_all: float
    top3_rank_matched: float
    top3_rank_all: float
    first_rank_original_matched: float
    top3_rank_original_matched: float
    same_partner_on_swap: float
    identical_to_da: float
    blocking_matched: float
    blocking_unmatched: float

    def __post_init__(self) -> None:
        if self.mechanism not in MECHANISMS:
            raise ValueError(f"unknown mechanism {self.mechanism!r}")
        for name in (
            "unmatched_doctors",
            "unmatched_hospitals",
            "first_rank_matched",
            "first_rank_all",
            "top3_rank_matched",
            "top3_rank_all",
            "same_partner_on_swap",
            "identical_to_da",
        ):
            value = getattr(self, name)
            if not math.isnan(value) and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.top3_rank_matched < self.first_rank_matched and not math.isnan(
            self.top3_rank_matched
        ):
            raise ValueError("top-3 fraction cannot be below the first-rank fraction")

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))


def unmatched_fraction(matching: Matching, side: str) -> float:
    """Fraction of the side's agents without a partner."""
    assigned = (
        matching.doctor_to_hospital if side == DOCTORS else matching.hospital_to_doctor
    )
    return sum(1 for p in assigned if p == UNMATCHED) / len(assigned)


def rank_fractions(
    matching: Matching,
    profile_for_ranks: PreferenceProfile,
    thresholds: tuple[int, ...] = (1, 3),
) -> RankFractions:
    """Fractions of doctors whose reported match rank is <= each threshold.

    Ranks are read from ``profile_for_ranks``: pass the full profile for a
    plain DA run and the truncated profile a mechanism actually submitted.
    Unmatched doctors never count toward the numerator; the ``matched``
    variant also removes them from the denominator (NaN when nobody matches).
    """
    ranks = [
        rank_of_match(matching, profile_for_ranks, d)
        for d in range(matching.n_doctors)
    ]
    matched = [r for r in ranks if r is not None]
    out_matched: dict[int, float] = {}
    out_all: dict[int, float] = {}
    for t in thresholds:
        hits = sum(1 for r in matched if r <= t)
        out_matched[t] = hits / len(matched) if matched else math.nan
        out_all[t] = hits / len(ranks)
    return RankFractions(matched=out_matched, overall=out_all)


def same_partner_on_swap(matching_a: Matching, matching_b: Matching) -> float:
    """Fraction of doctors with the same assignment in both matchings.

    Unmatched in both counts as the same: the unmatched set is invariant
    across stable matchings of a profile, so treating it otherwise would
    double-count disagreement.
    """
    if matching_a.n_doctors != matching_b.n_doctors:
        raise ValueError("matchings cover different doctor sets")
    agree = sum(
        1
        for a, b in zip(matching_a.doctor_to_hospital, matching_b.doctor_to_hospital)
        if a == b
    )
    return agree / matching_a.n_doctors


def identical_to_da(matching_mechanism: Matching, matching_da: Matching) -> float:
    """Fraction of doctors assigned the same partner as under plain DA."""
    return same_partner_on_swap(matching_mechanism, matching_da)


def blocking_proportions(
    matching: Matching,
    full_doctor_profile: PreferenceProfile,
    full_hospital_profile: PreferenceProfile,
) -> tuple[float, float]:
    """Average per-doctor share of hospitals forming a blocking pair.

    A pair (d, h) blocks when d prefers h to their assignment (or is
    unmatched and finds h acceptable) and h prefers d to its assignment (or
    has a vacancy and finds d acceptable), all judged in the original full
    preferences.  Returns (matched-doctor average, unmatched-doctor average),
    NaN for an empty group.
    """
    n_doctors = matching.n_doctors
    n_hospitals = matching.n_hospitals
    big_d = full_doctor_profile.n_partners + 1
    big_h = full_hospital_profile.n_partners + 1
    rank_d = full_doctor_profile.rank_matrix(missing=big_d)
    rank_h = full_hospital_profile.rank_matrix(missing=big_h)

    base_d = np.full(n_doctors, big_d, dtype=np.int64)
    for d, h in enumerate(matching.doctor_to_hospital):
        if h != UNMATCHED:
            base_d[d] = rank_d[d, h]
    base_h = np.full(n_hospitals, big_h, dtype=np.int64)
    for h, d in enumerate(matching.hospital_to_doctor):
        if d != UNMATCHED:
            base_h[h] = rank_h[h, d]

    blocks = (rank_d < base_d[:, None]) & (rank_h.T < base_h[None, :])
    per_doctor = blocks.mean(axis=1)

    matched_mask = np.array([h != UNMATCHED for h in matching.doctor_to_hospital])
    matched_avg = float(per_doctor[matched_mask].mean()) if matched_mask.any() else math.nan
    unmatched_avg = (
        float(per_doctor[~matched_mask].mean()) if (~matched_mask).any() else math.nan
    )
    return matched_avg, unmatched_avg
