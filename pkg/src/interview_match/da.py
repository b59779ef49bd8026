"""One-to-one deferred acceptance on strict, possibly truncated preference lists."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .market import DOCTORS, HOSPITALS, PreferenceProfile

#: Distinguished "no partner" value used in Matching arrays.  Never a valid
#: agent index, so it cannot be confused with agent 0.
UNMATCHED = -1


@dataclass(frozen=True)
class Matching:
    """One-to-one assignment; UNMATCHED marks agents without a partner."""

    doctor_to_hospital: tuple[int, ...]
    hospital_to_doctor: tuple[int, ...]

    def __post_init__(self) -> None:
        for d, h in enumerate(self.doctor_to_hospital):
            if h != UNMATCHED and self.hospital_to_doctor[h] != d:
                raise ValueError(f"doctor {d} and hospital {h} disagree on the match")
        for h, d in enumerate(self.hospital_to_doctor):
            if d != UNMATCHED and self.doctor_to_hospital[d] != h:
                raise ValueError(f"hospital {h} and doctor {d} disagree on the match")

    @classmethod
    def from_doctor_assignments(cls, doctor_to_hospital, n_hospitals: int) -> "Matching":
        h2d = [UNMATCHED] * n_hospitals
        for d, h in enumerate(doctor_to_hospital):
            if h != UNMATCHED:
                if h2d[h] != UNMATCHED:
                    raise ValueError(f"hospital {h} assigned twice")
                h2d[h] = d
        return cls(tuple(int(h) for h in doctor_to_hospital), tuple(h2d))

    @property
    def n_doctors(self) -> int:
        return len(self.doctor_to_hospital)

    @property
    def n_hospitals(self) -> int:
        return len(self.hospital_to_doctor)


def _check_profiles(doctors: PreferenceProfile, hospitals: PreferenceProfile) -> None:
    doctors.validate()
    hospitals.validate()
    if doctors.n_partners != hospitals.n_agents or hospitals.n_partners != doctors.n_agents:
        raise ValueError("doctor and hospital profiles disagree on market size")


def rank_rows(lists, n_agents: int, n_partners: int) -> list[list[int]]:
    """Dense 0-based rank lookup: rows[a][p] = position of p on a's list.

    Unlisted partners get ``n_partners + 1``, worse than any real rank.
    """
    missing = n_partners + 1
    out = np.full((n_agents, n_partners), missing, dtype=np.int64)
    for a, lst in enumerate(lists):
        if lst:
            out[a, list(lst)] = np.arange(len(lst))
    return out.tolist()


def _propose(proposer_lists, receiver_lists, n_receivers: int):
    """Core propose-and-reject loop; returns proposer -> receiver assignments.

    Receivers hold their best acceptable proposer so far.  Free proposers are
    processed LIFO; the outcome is the proposer-optimal stable matching and
    does not depend on that discipline.
    """
    n_proposers = len(proposer_lists)
    unlisted = n_proposers + 1
    receiver_rank = rank_rows(receiver_lists, n_receivers, n_proposers)
    held = [UNMATCHED] * n_receivers
    next_choice = [0] * n_proposers
    free = list(range(n_proposers - 1, -1, -1))

    while free:
        p = free.pop()
        lst = proposer_lists[p]
        while next_choice[p] < len(lst):
            r = lst[next_choice[p]]
            next_choice[p] += 1
            ranks_r = receiver_rank[r]
            rank_p = ranks_r[p]
            if rank_p == unlisted:
                continue
            incumbent = held[r]
            if incumbent == UNMATCHED:
                held[r] = p
                break
            if rank_p < ranks_r[incumbent]:
                held[r] = p
                free.append(incumbent)
                break
        # A proposer that exhausts its list stays unmatched.

    assignments = [UNMATCHED] * n_proposers
    for r, p in enumerate(held):
        if p != UNMATCHED:
            assignments[p] = r
    return assignments, held


def deferred_acceptance(
    doctors: PreferenceProfile,
    hospitals: PreferenceProfile,
    proposing_side: str = DOCTORS,
) -> Matching:
    """Proposing-side-optimal stable matching for the given strict profiles.

    Matched pairs always list each other, so the result is individually
    rational for both input profiles.
    """
    _check_profiles(doctors, hospitals)
    if proposing_side == DOCTORS:
        d2h, h2d = _propose(doctors.lists, hospitals.lists, hospitals.n_agents)
    elif proposing_side == HOSPITALS:
        h2d, d2h = _propose(hospitals.lists, doctors.lists, doctors.n_agents)
    else:
        raise ValueError(f"proposing_side must be {DOCTORS!r} or {HOSPITALS!r}")
    return Matching(tuple(d2h), tuple(h2d))


def serial_dictatorship(
    common_doctor_pref: tuple[int, ...] | list[int],
    hospitals: PreferenceProfile,
) -> Matching:
    """Sequential-choice matching for markets where all doctors rank hospitals alike.

    Hospitals pick in the order they appear on the shared doctor list; each
    takes its best-ranked doctor not yet claimed.  Equivalent to
    doctor-proposing deferred acceptance when every doctor submits
    ``common_doctor_pref``.
    """
    hospitals.validate()
    n_doctors = hospitals.n_partners
    d2h = [UNMATCHED] * n_doctors
    taken = [False] * n_doctors
    for h in common_doctor_pref:
        for d in hospitals.lists[h]:
            if not taken[d]:
                taken[d] = True
                d2h[d] = h
                break
    return Matching.from_doctor_assignments(d2h, hospitals.n_agents)


def rank_of_match(matching: Matching, profile: PreferenceProfile, agent: int) -> int | None:
    """1-based position of the agent's partner on their list; None if unmatched.

    Raises ValueError when the partner is missing from the list, which flags
    an individually irrational matching for that profile.
    """
    if profile.side == DOCTORS:
        partner = matching.doctor_to_hospital[agent]
    else:
        partner = matching.hospital_to_doctor[agent]
    if partner == UNMATCHED:
        return None
    try:
        return profile.lists[agent].index(partner) + 1
    except ValueError:
        raise ValueError(
            f"agent {agent} ({profile.side}) is matched to partner {partner} "
            "missing from their preference list"
        ) from None
