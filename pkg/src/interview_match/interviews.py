"""Capacity-constrained interview scheduling and preference truncation.

The schedule stage is a many-to-many matching in which each doctor attends at
most ``k`` interviews and each hospital grants at most ``k_prime``.  The final
match then runs one-to-one deferred acceptance on preferences truncated to
interview partners.
"""
from __future__ import annotations

from dataclasses import dataclass

from .da import Matching, deferred_acceptance, rank_rows
from .market import DOCTORS, HOSPITALS, MarketInstance, PreferenceProfile, to_preferences


@dataclass(frozen=True)
class InterviewSchedule:
    """Symmetric many-to-many assignment: h in doctor_interviews[d] iff d in
    hospital_interviews[h]."""

    doctor_interviews: tuple[frozenset[int], ...]
    hospital_interviews: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        for d, hs in enumerate(self.doctor_interviews):
            for h in hs:
                if d not in self.hospital_interviews[h]:
                    raise ValueError(f"doctor {d} lists hospital {h} but not vice versa")
        for h, ds in enumerate(self.hospital_interviews):
            for d in ds:
                if h not in self.doctor_interviews[d]:
                    raise ValueError(f"hospital {h} lists doctor {d} but not vice versa")

    @property
    def n_doctors(self) -> int:
        return len(self.doctor_interviews)

    @property
    def n_hospitals(self) -> int:
        return len(self.hospital_interviews)

    @classmethod
    def from_doctor_sets(cls, doctor_sets, n_hospitals: int) -> "InterviewSchedule":
        hospital_sets: list[set[int]] = [set() for _ in range(n_hospitals)]
        for d, hs in enumerate(doctor_sets):
            for h in hs:
                hospital_sets[h].add(d)
        return cls(
            tuple(frozenset(hs) for hs in doctor_sets),
            tuple(frozenset(ds) for ds in hospital_sets),
        )


def interview_schedule(
    doctors: PreferenceProfile,
    hospitals: PreferenceProfile,
    k: int,
    k_prime: int,
) -> InterviewSchedule:
    """Doctor-optimal pairwise-stable interview schedule under (k, k_prime) caps.

    Capacitated many-to-many deferred acceptance: every doctor holding fewer
    than ``k`` interviews proposes down their list; a hospital keeps its best
    ``k_prime`` acceptable proposers and rejects the worst excess.  Runs to
    quiescence.  With responsive preferences over strict lists this fixed
    point is the doctor-optimal pairwise-stable schedule (verified against
    exhaustive search at small sizes in the test suite).

    Capacities larger than the opposite side simply stop binding.
    """
    if k < 1 or k_prime < 1:
        raise ValueError("interview capacities must be at least 1")
    doctors.validate()
    hospitals.validate()
    if doctors.n_partners != hospitals.n_agents or hospitals.n_partners != doctors.n_agents:
        raise ValueError("doctor and hospital profiles disagree on market size")

    n_doctors, n_hospitals = doctors.n_agents, hospitals.n_agents
    unlisted = n_doctors + 1
    hospital_rank = rank_rows(hospitals.lists, n_hospitals, n_doctors)

    held_d: list[set[int]] = [set() for _ in range(n_doctors)]
    held_h: list[set[int]] = [set() for _ in range(n_hospitals)]
    next_choice = [0] * n_doctors
    active = list(range(n_doctors - 1, -1, -1))

    while active:
        d = active.pop()
        lst = doctors.lists[d]
        while len(held_d[d]) < k and next_choice[d] < len(lst):
            h = lst[next_choice[d]]
            next_choice[d] += 1
            ranks_h = hospital_rank[h]
            rank_d = ranks_h[d]
            if rank_d == unlisted:
                continue
            holders = held_h[h]
            if len(holders) < k_prime:
                holders.add(d)
                held_d[d].add(h)
                continue
            worst = max(holders, key=ranks_h.__getitem__)
            if rank_d < ranks_h[worst]:
                holders.discard(worst)
                held_d[worst].discard(h)
                holders.add(d)
                held_d[d].add(h)
                if next_choice[worst] < len(doctors.lists[worst]):
                    active.append(worst)

    return InterviewSchedule(
        tuple(frozenset(hs) for hs in held_d),
        tuple(frozenset(ds) for ds in held_h),
    )


def truncate_by_interviews(
    profile: PreferenceProfile, schedule: InterviewSchedule
) -> PreferenceProfile:
    """Restrict each list to interview partners, keeping the original order."""
    sets = (
        schedule.doctor_interviews if profile.side == DOCTORS else schedule.hospital_interviews
    )
    lists = tuple(
        tuple(p for p in lst if p in kept) for lst, kept in zip(profile.lists, sets)
    )
    return PreferenceProfile(side=profile.side, lists=lists, n_partners=profile.n_partners)


def truncate_top_k(profile: PreferenceProfile, k: int) -> PreferenceProfile:
    """Cut every list to its first min(k, length) entries."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lists = tuple(lst[:k] for lst in profile.lists)
    return PreferenceProfile(side=profile.side, lists=lists, n_partners=profile.n_partners)


def int_da(
    instance: MarketInstance,
    k: int,
    k_prime: int,
    proposing_side: str = DOCTORS,
) -> tuple[InterviewSchedule, Matching]:
    """Two-stage mechanism: interview scheduling, then deferred acceptance.

    Both sides' preferences are truncated to interview partners before the
    final one-to-one match, mirroring markets where agents rank only those
    they interviewed with.
    """
    doctors = to_preferences(instance, DOCTORS)
    hospitals = to_preferences(instance, HOSPITALS)
    schedule = interview_schedule(doctors, hospitals, k, k_prime)
    truncated_doctors = truncate_by_interviews(doctors, schedule)
    truncated_hospitals = truncate_by_interviews(hospitals, schedule)
    matching = deferred_acceptance(truncated_doctors, truncated_hospitals, proposing_side)
    return schedule, matching
