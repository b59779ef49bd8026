"""Match statistics: hand-computed cases plus agreement with the oracle scan."""
from __future__ import annotations

import math

import numpy as np
import pytest

from interview_match.da import UNMATCHED, Matching, deferred_acceptance
from interview_match.interviews import interview_schedule, truncate_by_interviews
from interview_match.market import DOCTORS, HOSPITALS, profile_from_lists
from interview_match.metrics import (
    MetricsRecord,
    blocking_proportions,
    identical_to_da,
    rank_fractions,
    same_partner_on_swap,
    unmatched_fraction,
)
from interview_match import oracle

from conftest import random_profiles


def _example_int_da(example_market):
    doctors, hospitals = example_market
    schedule = interview_schedule(doctors, hospitals, 2, 2)
    trunc_docs = truncate_by_interviews(doctors, schedule)
    trunc_hosps = truncate_by_interviews(hospitals, schedule)
    matching = deferred_acceptance(trunc_docs, trunc_hosps, DOCTORS)
    return doctors, hospitals, trunc_docs, matching


def test_unmatched_fraction_balanced_da_is_zero(example_market):
    doctors, hospitals = example_market
    matching = deferred_acceptance(doctors, hospitals, DOCTORS)
    assert unmatched_fraction(matching, DOCTORS) == 0.0


def test_unmatched_fraction_example_int_da(example_market):
    _, _, _, matching = _example_int_da(example_market)
    assert unmatched_fraction(matching, DOCTORS) == 0.0
    assert unmatched_fraction(matching, HOSPITALS) == 0.25


def test_unmatched_fraction_empty_matching():
    matching = Matching((UNMATCHED, UNMATCHED), (UNMATCHED, UNMATCHED))
    assert unmatched_fraction(matching, DOCTORS) == 1.0
    assert unmatched_fraction(matching, HOSPITALS) == 1.0


def test_rank_fractions_single_pair():
    doctors = profile_from_lists(DOCTORS, [[0]], 1)
    matching = Matching((0,), (0,))
    fractions = rank_fractions(matching, doctors)
    assert fractions.matched[1] == 1.0
    assert fractions.overall[1] == 1.0


def test_rank_fractions_assortative_market():
    # Identical preferences on both sides: only the top doctor gets rank 1.
    n = 100
    doctors = profile_from_lists(DOCTORS, [list(range(n))] * n, n)
    hospitals = profile_from_lists(HOSPITALS, [list(range(n))] * n, n)
    matching = deferred_acceptance(doctors, hospitals, DOCTORS)
    fractions = rank_fractions(matching, doctors)
    assert fractions.overall[1] == pytest.approx(1 / n)
    assert fractions.matched[1] == pytest.approx(1 / n)
    assert fractions.overall[3] == pytest.approx(3 / n)


def test_rank_fractions_conditional_vs_overall():
    doctors = profile_from_lists(DOCTORS, [[0], [0, 1], [1, 0]], 2)
    # Doctor 0 matched to its first choice, doctor 1 to its second, doctor 2
    # unmatched.
    matching = Matching((0, 1, UNMATCHED), (0, 1))
    fractions = rank_fractions(matching, doctors)
    assert fractions.matched[1] == pytest.approx(1 / 2)
    assert fractions.overall[1] == pytest.approx(1 / 3)
    assert fractions.matched[3] == pytest.approx(1.0)
    assert fractions.overall[3] == pytest.approx(2 / 3)


def test_rank_fractions_nobody_matched_gives_nan():
    doctors = profile_from_lists(DOCTORS, [[0]], 1)
    matching = Matching((UNMATCHED,), (UNMATCHED,))
    fractions = rank_fractions(matching, doctors)
    assert math.isnan(fractions.matched[1])
    assert fractions.overall[1] == 0.0


def test_same_partner_on_swap_identical_matchings(example_market):
    doctors, hospitals = example_market
    matching = deferred_acceptance(doctors, hospitals, DOCTORS)
    assert same_partner_on_swap(matching, matching) == 1.0


def test_same_partner_on_swap_counts_unmatched_in_both():
    a = Matching((0, UNMATCHED), (0, UNMATCHED))
    b = Matching((1, UNMATCHED), (UNMATCHED, 0))
    assert same_partner_on_swap(a, b) == 0.5


def test_same_partner_is_one_when_stable_set_is_singleton():
    rng = np.random.default_rng(15)
    seen_singleton = False
    for trial in range(60):
        doctors, hospitals = random_profiles(rng, 4, 4, keep_probability=0.9)
        stable_set = oracle.enumerate_stable(doctors, hospitals)
        doc_run = deferred_acceptance(doctors, hospitals, DOCTORS)
        hosp_run = deferred_acceptance(doctors, hospitals, HOSPITALS)
        if len(stable_set) == 1:
            seen_singleton = True
            assert same_partner_on_swap(doc_run, hosp_run) == 1.0
    assert seen_singleton


def test_identical_to_da_example_market(example_market):
    doctors, hospitals, _, int_matching = _example_int_da(example_market)
    da_matching = deferred_acceptance(doctors, hospitals, DOCTORS)
    assert identical_to_da(int_matching, da_matching) == pytest.approx(2 / 3)
    assert identical_to_da(da_matching, da_matching) == 1.0


def test_blocking_proportions_stable_matching_is_clean(example_market):
    doctors, hospitals = example_market
    matching = deferred_acceptance(doctors, hospitals, DOCTORS)
    matched_avg, unmatched_avg = blocking_proportions(matching, doctors, hospitals)
    assert matched_avg == 0.0
    assert math.isnan(unmatched_avg)


def test_blocking_proportions_example_int_da(example_market):
    doctors, hospitals, _, matching = _example_int_da(example_market)
    matched_avg, unmatched_avg = blocking_proportions(matching, doctors, hospitals)
    # Hand count: only (doctor 2, hospital 2) blocks, so doctor 2 blocks with
    # 1 of 4 hospitals and the average over the three matched doctors is 1/12.
    assert matched_avg == pytest.approx(1 / 12)
    assert math.isnan(unmatched_avg)


def test_blocking_proportions_agree_with_oracle_scan():
    rng = np.random.default_rng(44)
    for trial in range(150):
        n_d = int(rng.integers(2, 7))
        n_h = int(rng.integers(2, 7))
        doctors, hospitals = random_profiles(rng, n_d, n_h, keep_probability=0.8)
        # A random (not necessarily stable) individually rational matching.
        assignment = [UNMATCHED] * n_d
        free_hospitals = set(range(n_h))
        for d in rng.permutation(n_d):
            options = [h for h in doctors.lists[d] if h in free_hospitals and d in set(hospitals.lists[h])]
            if options and rng.random() < 0.8:
                h = int(options[int(rng.integers(len(options)))])
                assignment[d] = h
                free_hospitals.discard(h)
        matching = Matching.from_doctor_assignments(assignment, n_h)

        _, blocks = oracle.is_stable(matching, doctors, hospitals)
        per_doctor = np.zeros(n_d)
        for d, h in blocks:
            per_doctor[d] += 1
        per_doctor /= n_h
        matched = [d for d in range(n_d) if assignment[d] != UNMATCHED]
        unmatched = [d for d in range(n_d) if assignment[d] == UNMATCHED]
        expected_matched = float(per_doctor[matched].mean()) if matched else math.nan
        expected_unmatched = float(per_doctor[unmatched].mean()) if unmatched else math.nan

        got_matched, got_unmatched = blocking_proportions(matching, doctors, hospitals)
        assert got_matched == pytest.approx(expected_matched, nan_ok=True)
        assert got_unmatched == pytest.approx(expected_unmatched, nan_ok=True)


def _record(**overrides) -> MetricsRecord:
    base = dict(
        run_id="rep00000",
        seed=1,
        n=10,
        lambda_d=0.5,
        lambda_h=0.5,
        k=5,
        k_prime=5,
        mechanism="DA",
        proposing_side=DOCTORS,
        unmatched_doctors=0.0,
        unmatched_hospitals=0.0,
        first_rank_matched=0.2,
        first_rank_all=0.2,
        top3_rank_matched=0.5,
        top3_rank_all=0.5,
        first_rank_original_matched=0.2,
        top3_rank_original_matched=0.5,
        same_partner_on_swap=1.0,
        identical_to_da=1.0,
        blocking_matched=0.0,
        blocking_unmatched=math.nan,
    )
    base.update(overrides)
    return MetricsRecord(**base)


def test_metrics_record_validates_ranges():
    _record()  # valid
    with pytest.raises(ValueError):
        _record(unmatched_doctors=1.5)
    with pytest.raises(ValueError):
        _record(top3_rank_matched=0.1, first_rank_matched=0.2)
    with pytest.raises(ValueError):
        _record(mechanism="SD")
