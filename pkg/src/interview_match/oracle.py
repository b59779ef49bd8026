"""Brute-force ground truth for small markets.

Everything here is written as plain pairwise scans and exhaustive search,
independent of the production algorithms, so it can serve as an oracle for
them.  Guarded to small sizes; factorial blow-up otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .da import UNMATCHED, Matching
from .interviews import InterviewSchedule
from .market import PreferenceProfile

MAX_ORACLE_SIDE = 8


@dataclass(frozen=True)
class PairwiseViolation:
    """One violated requirement of the capacitated many-to-many stability check."""

    kind: str
    doctor: int | None
    hospital: int | None


def _position_maps(profile: PreferenceProfile) -> list[dict[int, int]]:
    return profile.position_maps()


def is_stable(
    matching: Matching,
    doctors: PreferenceProfile,
    hospitals: PreferenceProfile,
) -> tuple[bool, list[tuple[int, int]]]:
    """Stability of a one-to-one matching: individual rationality plus the
    absence of any doctor-hospital pair preferring each other to their
    assignments.  Returns every blocking pair found.
    """
    pos_d = _position_maps(doctors)
    pos_h = _position_maps(hospitals)
    n_doctors, n_hospitals = doctors.n_agents, hospitals.n_agents

    rational = True
    base_d = []
    for d in range(n_doctors):
        h = matching.doctor_to_hospital[d]
        if h == UNMATCHED:
            base_d.append(len(doctors.lists[d]))
        elif h in pos_d[d]:
            base_d.append(pos_d[d][h])
        else:
            rational = False
            base_d.append(len(doctors.lists[d]))
    base_h = []
    for h in range(n_hospitals):
        d = matching.hospital_to_doctor[h]
        if d == UNMATCHED:
            base_h.append(len(hospitals.lists[h]))
        elif d in pos_h[h]:
            base_h.append(pos_h[h][d])
        else:
            rational = False
            base_h.append(len(hospitals.lists[h]))

    blocks = []
    for d in range(n_doctors):
        for h in range(n_hospitals):
            p_dh = pos_d[d].get(h)
            if p_dh is None or p_dh >= base_d[d]:
                continue
            p_hd = pos_h[h].get(d)
            if p_hd is None or p_hd >= base_h[h]:
                continue
            blocks.append((d, h))
    return rational and not blocks, blocks


def is_pairwise_stable(
    schedule: InterviewSchedule,
    doctors: PreferenceProfile,
    hospitals: PreferenceProfile,
    k: int,
    k_prime: int,
) -> tuple[bool, list[PairwiseViolation]]:
    """Pairwise stability of a many-to-many schedule under (k, k_prime) caps.

    Checks capacities, individual rationality, and every way an unscheduled
    pair could profitably deviate: both swapping a held partner, one swapping
    while the other fills a vacancy, or both filling vacancies.  Violations
    are reported exhaustively for diagnostics.
    """
    pos_d = _position_maps(doctors)
    pos_h = _position_maps(hospitals)
    violations: list[PairwiseViolation] = []

    for d, hs in enumerate(schedule.doctor_interviews):
        if len(hs) > k:
            violations.append(PairwiseViolation("doctor-capacity", d, None))
        for h in hs:
            if h not in pos_d[d]:
                violations.append(PairwiseViolation("doctor-ir", d, h))
    for h, ds in enumerate(schedule.hospital_interviews):
        if len(ds) > k_prime:
            violations.append(PairwiseViolation("hospital-capacity", None, h))
        for d in ds:
            if d not in pos_h[h]:
                violations.append(PairwiseViolation("hospital-ir", d, h))

    # Held partners missing from a list (an IR violation, flagged above) rank
    # below every listed one, so the blocking scan stays total.
    worst_d = doctors.n_partners + 1
    worst_h = hospitals.n_partners + 1
    for d in range(doctors.n_agents):
        mu_d = schedule.doctor_interviews[d]
        for h in range(hospitals.n_agents):
            if h in mu_d:
                continue
            p_dh = pos_d[d].get(h)
            p_hd = pos_h[h].get(d)
            if p_dh is None or p_hd is None:
                continue
            mu_h = schedule.hospital_interviews[h]
            doctor_swap = any(p_dh < pos_d[d].get(h2, worst_d) for h2 in mu_d)
            doctor_add = len(mu_d) < k
            hospital_swap = any(p_hd < pos_h[h].get(d2, worst_h) for d2 in mu_h)
            hospital_add = len(mu_h) < k_prime
            if not (doctor_swap or doctor_add) or not (hospital_swap or hospital_add):
                continue
            d_word = "add" if doctor_add else "swap"
            h_word = "add" if hospital_add else "swap"
            violations.append(PairwiseViolation(f"block-{d_word}-{h_word}", d, h))

    return not violations, violations


def _guard(doctors: PreferenceProfile, hospitals: PreferenceProfile) -> None:
    if doctors.n_agents > MAX_ORACLE_SIDE or hospitals.n_agents > MAX_ORACLE_SIDE:
        raise ValueError(
            f"exhaustive search is limited to {MAX_ORACLE_SIDE}x{MAX_ORACLE_SIDE} markets"
        )


def enumerate_stable(
    doctors: PreferenceProfile, hospitals: PreferenceProfile
) -> list[Matching]:
    """All stable matchings of a small market, by exhaustive assignment search.

    Doctors are assigned one at a time to an acceptable, mutually listed, free
    hospital or left unmatched.  Branches are cut as soon as two already
    decided agents block each other (such a block can never be undone);
    vacancies are only final at the leaves, so leaf candidates get the full
    stability check.
    """
    _guard(doctors, hospitals)
    pos_d = _position_maps(doctors)
    pos_h = _position_maps(hospitals)
    n_doctors, n_hospitals = doctors.n_agents, hospitals.n_agents

    results: list[Matching] = []
    assignment = [UNMATCHED] * n_doctors
    taken = [UNMATCHED] * n_hospitals  # hospital -> doctor, for decided doctors

    def decided_block(d: int, d_base: int) -> bool:
        # Does doctor d (with baseline rank d_base) block with any taken hospital?
        for h, holder in enumerate(taken):
            if holder == UNMATCHED or holder == d:
                continue
            p_dh = pos_d[d].get(h)
            if p_dh is None or p_dh >= d_base:
                continue
            p_hd = pos_h[h].get(d)
            if p_hd is not None and p_hd < pos_h[h][holder]:
                return True
        return False

    def new_partner_blocks(h: int, holder: int) -> bool:
        # Hospital h was just taken: do earlier-decided doctors block with it?
        p_h_holder = pos_h[h][holder]
        for d2 in range(holder):
            d2_base = (
                pos_d[d2][assignment[d2]]
                if assignment[d2] != UNMATCHED
                else len(doctors.lists[d2])
            )
            p_dh = pos_d[d2].get(h)
            if p_dh is None or p_dh >= d2_base:
                continue
            p_hd = pos_h[h].get(d2)
            if p_hd is not None and p_hd < p_h_holder:
                return True
        return False

    def extend(d: int) -> None:
        if d == n_doctors:
            candidate = Matching(tuple(assignment), tuple(taken))
            ok, _ = is_stable(candidate, doctors, hospitals)
            if ok:
                results.append(candidate)
            return

        # Option 1: leave d unmatched; blocks are final because d's
        # assignment and every taken hospital's partner are now fixed.
        if not decided_block(d, len(doctors.lists[d])):
            extend(d + 1)

        # Option 2: match d to each free, mutually acceptable hospital.
        for h in doctors.lists[d]:
            if taken[h] != UNMATCHED or d not in pos_h[h]:
                continue
            assignment[d] = h
            taken[h] = d
            if not decided_block(d, pos_d[d][h]) and not new_partner_blocks(h, d):
                extend(d + 1)
            assignment[d] = UNMATCHED
            taken[h] = UNMATCHED

    extend(0)
    return results


def _responsive_choice(
    union: set[int], positions: dict[int, int], quota: int
) -> frozenset[int]:
    ordered = sorted(union, key=positions.__getitem__)
    return frozenset(ordered[: min(quota, len(ordered))])


def responsively_prefers(
    candidate: frozenset[int] | set[int],
    reference: frozenset[int] | set[int],
    positions: dict[int, int],
    quota: int,
) -> bool:
    """Strict preference of one partner set over another, for responsive
    preferences induced by a strict list with a quota: the preferred set is
    exactly what the agent would keep when choosing from the union.
    """
    cand = frozenset(candidate)
    ref = frozenset(reference)
    if cand == ref:
        return False
    return _responsive_choice(set(cand | ref), positions, quota) == cand


def enumerate_pairwise_stable(
    doctors: PreferenceProfile,
    hospitals: PreferenceProfile,
    k: int,
    k_prime: int,
) -> list[InterviewSchedule]:
    """All pairwise-stable (k, k_prime) schedules of a small market.

    Searches doctor by doctor over interview sets drawn from mutually
    acceptable hospitals.  Two families of violations only ever get worse as
    hospitals accumulate partners, so they prune the search tree early:
    a decided pair preferring a mutual swap, and a doctor with spare capacity
    that a hospital would swap toward.  Vacancy-dependent blocks are filtered
    by the full checker at the leaves.
    """
    _guard(doctors, hospitals)
    pos_d = _position_maps(doctors)
    pos_h = _position_maps(hospitals)
    n_doctors, n_hospitals = doctors.n_agents, hospitals.n_agents

    mutual: list[list[int]] = []
    for d in range(n_doctors):
        mutual.append([h for h in doctors.lists[d] if d in pos_h[h]])

    per_doctor_options: list[list[tuple[int, ...]]] = []
    for d in range(n_doctors):
        options: list[tuple[int, ...]] = [()]
        for size in range(1, min(k, len(mutual[d])) + 1):
            options.extend(combinations(mutual[d], size))
        per_doctor_options.append(options)

    results: list[InterviewSchedule] = []
    chosen: list[tuple[int, ...]] = [()] * n_doctors
    load: list[list[int]] = [[] for _ in range(n_hospitals)]  # doctors per hospital

    def persistent_block(d: int, d_set: tuple[int, ...]) -> bool:
        # Pairs (d, h) where d would swap or add and h would swap one of its
        # current holders for d stay blocking forever (hospital sets only grow
        # deeper in the branch while d's set is already fixed).
        d_has_room = len(d_set) < k
        worst_pos = max((pos_d[d][h] for h in d_set), default=-1)
        for h in mutual[d]:
            if h in d_set:
                continue
            p_dh = pos_d[d][h]
            if not (d_has_room or p_dh < worst_pos):
                continue
            p_hd = pos_h[h][d]
            if any(p_hd < pos_h[h][d2] for d2 in load[h]):
                return True
        return False

    def block_at(d2: int, h: int) -> bool:
        # Same persistent condition, restricted to one hospital whose set grew.
        d_set = chosen[d2]
        if h in d_set:
            return False
        p_dh = pos_d[d2].get(h)
        p_hd = pos_h[h].get(d2)
        if p_dh is None or p_hd is None:
            return False
        if len(d_set) >= k and all(p_dh > pos_d[d2][h2] for h2 in d_set):
            return False
        return any(p_hd < pos_h[h][d3] for d3 in load[h])

    def extend(d: int) -> None:
        if d == n_doctors:
            candidate = InterviewSchedule.from_doctor_sets(
                [frozenset(c) for c in chosen], n_hospitals
            )
            ok, _ = is_pairwise_stable(candidate, doctors, hospitals, k, k_prime)
            if ok:
                results.append(candidate)
            return
        for option in per_doctor_options[d]:
            if any(len(load[h]) >= k_prime for h in option):
                continue
            chosen[d] = option
            for h in option:
                load[h].append(d)
            ok = not persistent_block(d, option)
            if ok:
                # Earlier doctors can only gain a persistent block at the
                # hospitals whose holder sets just grew.
                ok = not any(block_at(d2, h) for h in option for d2 in range(d))
            if ok:
                extend(d + 1)
            for h in option:
                load[h].pop()
        chosen[d] = ()

    extend(0)
    return results
