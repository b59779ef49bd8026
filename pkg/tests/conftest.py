"""Shared fixtures and random-profile helpers for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

from interview_match.market import DOCTORS, HOSPITALS, PreferenceProfile, profile_from_lists
from interview_match.experiments import paper_example_profiles


def random_profiles(
    rng: np.random.Generator,
    n_doctors: int,
    n_hospitals: int,
    keep_probability: float = 1.0,
) -> tuple[PreferenceProfile, PreferenceProfile]:
    """Independent uniform strict lists, optionally dropping partners at random
    (so truncated/incomplete lists get exercised too)."""

    def side_lists(n_agents: int, n_partners: int) -> list[list[int]]:
        lists = []
        for _ in range(n_agents):
            order = rng.permutation(n_partners)
            if keep_probability < 1.0:
                order = order[rng.random(n_partners) < keep_probability]
            lists.append([int(p) for p in order])
        return lists

    doctors = profile_from_lists(DOCTORS, side_lists(n_doctors, n_hospitals), n_hospitals)
    hospitals = profile_from_lists(HOSPITALS, side_lists(n_hospitals, n_doctors), n_doctors)
    return doctors, hospitals


@pytest.fixture
def example_market():
    """The bundled 3-doctor, 4-hospital market with common hospital preferences."""
    return paper_example_profiles()
