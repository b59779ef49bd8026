"""Random market generation and ordinal preference extraction.

Cardinal utilities mix a market-wide common component with a match-specific
idiosyncratic component:

    u_doctor[d, h]   = lambda_d * common_hospital[h] + (1 - lambda_d) * eta_d[d, h]
    u_hospital[h, d] = lambda_h * common_doctor[d]   + (1 - lambda_h) * eta_h[h, d]

With weight 1 every agent on a side shares one ranking of the other side;
with weight 0 rankings are independent across agents.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields

import numpy as np

DOCTORS = "doctors"
HOSPITALS = "hospitals"

DISTRIBUTIONS = ("standard-normal", "uniform-0-1")
ACCEPTABILITY_MODES = ("all-acceptable", "outside-option-zero")

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class MarketConfig:
    """Parameters of the random market generator.

    Serializes to/from JSON with exactly these field names; see
    :meth:`to_json` / :meth:`from_json`.
    """

    n_doctors: int
    n_hospitals: int
    lambda_d: float
    lambda_h: float
    distribution: str = "standard-normal"
    acceptability: str = "all-acceptable"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_doctors < 1 or self.n_hospitals < 1:
            raise ValueError("market must have at least one doctor and one hospital")
        if not (0.0 <= self.lambda_d <= 1.0 and 0.0 <= self.lambda_h <= 1.0):
            raise ValueError("common-component weights must lie in [0, 1]")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.acceptability not in ACCEPTABILITY_MODES:
            raise ValueError(f"unknown acceptability mode {self.acceptability!r}")
        if not (0 <= int(self.seed) <= MAX_SEED):
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "MarketConfig":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "MarketConfig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class MarketInstance:
    """Realized cardinal utilities for one market draw.

    ``outside_doctor[d]`` / ``outside_hospital[h]`` hold each agent's outside
    option: 0.0 in ``outside-option-zero`` mode, -inf in ``all-acceptable``
    mode so that every partner clears the acceptability bar.
    """

    config: MarketConfig
    common_hospital: np.ndarray
    common_doctor: np.ndarray
    u_doctor: np.ndarray
    u_hospital: np.ndarray
    outside_doctor: np.ndarray
    outside_hospital: np.ndarray


@dataclass(frozen=True)
class PreferenceProfile:
    """Strict ordinal preference lists for one side of the market.

    ``lists[i]`` holds agent ``i``'s acceptable partners, best first.  The
    1-based rank of the j-th entry is j.  Partners whose utility does not
    strictly exceed the agent's outside option are omitted.
    """

    side: str
    lists: tuple[tuple[int, ...], ...]
    n_partners: int

    def __post_init__(self) -> None:
        if self.side not in (DOCTORS, HOSPITALS):
            raise ValueError(f"side must be {DOCTORS!r} or {HOSPITALS!r}")

    @property
    def n_agents(self) -> int:
        return len(self.lists)

    def validate(self) -> None:
        """Raise ValueError on duplicate or out-of-range partner indices."""
        for i, lst in enumerate(self.lists):
            if len(set(lst)) != len(lst):
                raise ValueError(f"agent {i} lists a partner twice")
            if any(p < 0 or p >= self.n_partners for p in lst):
                raise ValueError(f"agent {i} lists an out-of-range partner")

    def position_maps(self) -> list[dict[int, int]]:
        """Per agent, a dict partner -> 0-based list position."""
        return [{p: j for j, p in enumerate(lst)} for lst in self.lists]

    def rank_matrix(self, missing: int | None = None) -> np.ndarray:
        """0-based positions as an (n_agents, n_partners) int matrix.

        Unlisted partners get ``missing`` (default: one past the longest
        possible rank), which compares worse than any listed rank.
        """
        if missing is None:
            missing = self.n_partners + 1
        out = np.full((self.n_agents, self.n_partners), missing, dtype=np.int64)
        for i, lst in enumerate(self.lists):
            if lst:
                out[i, list(lst)] = np.arange(len(lst))
        return out


def generate_market(config: MarketConfig) -> MarketInstance:
    """Draw a market instance; a pure function of the config (seed included).

    Draw order, fixed for reproducibility: common hospital values, common
    doctor values, doctor-side idiosyncratic matrix, hospital-side
    idiosyncratic matrix, all i.i.d. from the configured distribution.
    """
    rng = np.random.default_rng(config.seed)
    if config.distribution == "standard-normal":
        draw = rng.standard_normal
    else:
        draw = rng.random

    n_d, n_h = config.n_doctors, config.n_hospitals
    common_hospital = draw(n_h)
    common_doctor = draw(n_d)
    eta_doctor = draw((n_d, n_h))
    eta_hospital = draw((n_h, n_d))

    u_doctor = config.lambda_d * common_hospital[None, :] + (1.0 - config.lambda_d) * eta_doctor
    u_hospital = config.lambda_h * common_doctor[None, :] + (1.0 - config.lambda_h) * eta_hospital

    if config.acceptability == "outside-option-zero":
        outside_doctor = np.zeros(n_d)
        outside_hospital = np.zeros(n_h)
    else:
        outside_doctor = np.full(n_d, -np.inf)
        outside_hospital = np.full(n_h, -np.inf)

    return MarketInstance(
        config=config,
        common_hospital=common_hospital,
        common_doctor=common_doctor,
        u_doctor=u_doctor,
        u_hospital=u_hospital,
        outside_doctor=outside_doctor,
        outside_hospital=outside_hospital,
    )


def to_preferences(instance: MarketInstance, side: str) -> PreferenceProfile:
    """Convert one side's cardinal utilities to strict ordinal lists.

    Partners sort by strictly decreasing utility; exact ties break toward the
    lower partner index so every list is a strict order.  Partners at or
    below the outside option are dropped.
    """
    if side == DOCTORS:
        utilities, outside = instance.u_doctor, instance.outside_doctor
    elif side == HOSPITALS:
        utilities, outside = instance.u_hospital, instance.outside_hospital
    else:
        raise ValueError(f"side must be {DOCTORS!r} or {HOSPITALS!r}")

    n_agents, n_partners = utilities.shape
    index = np.arange(n_partners)
    lists = []
    for i in range(n_agents):
        row = utilities[i]
        order = np.lexsort((index, -row))
        acceptable = order[row[order] > outside[i]]
        lists.append(tuple(int(p) for p in acceptable))
    return PreferenceProfile(side=side, lists=tuple(lists), n_partners=n_partners)


def profile_from_lists(side: str, lists, n_partners: int) -> PreferenceProfile:
    """Build a validated profile from plain python lists."""
    profile = PreferenceProfile(
        side=side,
        lists=tuple(tuple(int(p) for p in lst) for lst in lists),
        n_partners=n_partners,
    )
    profile.validate()
    return profile
