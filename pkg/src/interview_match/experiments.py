"""Seeded batch runner: replication studies, parameter sweeps, CSV artifacts.

Every run derives one seed per replication from the base seed with a
documented mixing rule, writes one CSV row per (replication, mechanism), and
drops a JSON manifest next to the CSV recording the spec, package version,
and all derived seeds.
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .da import UNMATCHED, Matching, deferred_acceptance, rank_of_match
from .interviews import interview_schedule, truncate_by_interviews, truncate_top_k
from .market import (
    DOCTORS,
    HOSPITALS,
    MarketConfig,
    PreferenceProfile,
    generate_market,
    profile_from_lists,
    to_preferences,
)
from .metrics import (
    MECHANISMS,
    MetricsRecord,
    blocking_proportions,
    identical_to_da,
    rank_fractions,
    same_partner_on_swap,
    unmatched_fraction,
)
from . import oracle

OUTPUT_DIR_ENV = "INTERVIEW_MATCH_OUTPUT_DIR"

CSV_COLUMNS = MetricsRecord.field_names()

SWEEP_COLUMNS = (
    "lambda_d",
    "lambda_h",
    "n",
    "replications",
    "first_rank_fraction",
    "same_partner_fraction",
)

#: Default sweep grid: fine resolution on the hospital weight axis, one curve
#: per doctor weight.
DEFAULT_SWEEP_LAMBDA_H = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_SWEEP_LAMBDA_D = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class SweepGrid:
    lambda_d_values: tuple[float, ...] = DEFAULT_SWEEP_LAMBDA_D
    lambda_h_values: tuple[float, ...] = DEFAULT_SWEEP_LAMBDA_H

    def __post_init__(self) -> None:
        values = tuple(self.lambda_d_values) + tuple(self.lambda_h_values)
        if not self.lambda_d_values or not self.lambda_h_values:
            raise ValueError("sweep grid must be nonempty on both axes")
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise ValueError("sweep grid values must lie in [0, 1]")


@dataclass(frozen=True)
class ExperimentSpec:
    """A batch of seeded replications of one market configuration."""

    n_doctors: int
    n_hospitals: int
    lambda_d: float
    lambda_h: float
    replications: int
    mechanisms: tuple[str, ...] = MECHANISMS
    k: int = 5
    k_prime: int = 5
    distribution: str = "standard-normal"
    acceptability: str = "all-acceptable"
    seed: int = 0
    sweep: SweepGrid | None = None
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ValueError("need at least one replication")
        if self.k < 1 or self.k_prime < 1:
            raise ValueError("interview capacities must be at least 1")
        unknown = set(self.mechanisms) - set(MECHANISMS)
        if unknown:
            raise ValueError(f"unknown mechanisms: {sorted(unknown)}")
        # Market-level validation happens here too.
        self.market_config(0, self.lambda_d, self.lambda_h)

    def market_config(self, rep_seed: int, lambda_d: float, lambda_h: float) -> MarketConfig:
        return MarketConfig(
            n_doctors=self.n_doctors,
            n_hospitals=self.n_hospitals,
            lambda_d=lambda_d,
            lambda_h=lambda_h,
            distribution=self.distribution,
            acceptability=self.acceptability,
            seed=rep_seed,
        )

    def to_dict(self) -> dict:
        data = {
            "n_doctors": self.n_doctors,
            "n_hospitals": self.n_hospitals,
            "lambda_d": self.lambda_d,
            "lambda_h": self.lambda_h,
            "replications": self.replications,
            "mechanisms": list(self.mechanisms),
            "k": self.k,
            "k_prime": self.k_prime,
            "distribution": self.distribution,
            "acceptability": self.acceptability,
            "seed": self.seed,
            "output_path": self.output_path,
        }
        if self.sweep is not None:
            data["sweep"] = {
                "lambda_d_values": list(self.sweep.lambda_d_values),
                "lambda_h_values": list(self.sweep.lambda_h_values),
            }
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        data = dict(data)
        if "mechanisms" in data:
            data["mechanisms"] = tuple(data["mechanisms"])
        if data.get("sweep") is not None:
            data["sweep"] = SweepGrid(
                lambda_d_values=tuple(data["sweep"]["lambda_d_values"]),
                lambda_h_values=tuple(data["sweep"]["lambda_h_values"]),
            )
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls.from_dict(json.loads(text))


def replication_seed(base_seed: int, *indices: int) -> int:
    """Derive a 64-bit seed by mixing the base seed with replication indices
    through numpy's SeedSequence; distinct index tuples give distinct streams.
    """
    ss = np.random.SeedSequence([int(base_seed), *[int(i) for i in indices]])
    return int(ss.generate_state(1, np.uint64)[0])


def _resolve_output(path: str | Path) -> Path:
    path = Path(path)
    if not path.is_absolute():
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = Path(base) / path
    return path


def run_replication(
    config: MarketConfig,
    mechanisms: tuple[str, ...],
    k: int,
    k_prime: int,
    run_id: str,
) -> list[MetricsRecord]:
    """Generate one market and evaluate every requested mechanism on it.

    The headline statistics come from the doctor-proposing run of each
    mechanism; the hospital-proposing run feeds the proposer-swap agreement.
    Blocking proportions are always judged against the original preferences.
    """
    instance = generate_market(config)
    doctors = to_preferences(instance, DOCTORS)
    hospitals = to_preferences(instance, HOSPITALS)

    da_doc = deferred_acceptance(doctors, hospitals, DOCTORS)
    da_hosp = deferred_acceptance(doctors, hospitals, HOSPITALS)

    provenance = dict(
        seed=config.seed,
        n=config.n_doctors,
        lambda_d=config.lambda_d,
        lambda_h=config.lambda_h,
        k=k,
        k_prime=k_prime,
        run_id=run_id,
    )

    def build_record(
        mechanism: str,
        doc_run: Matching,
        hosp_run: Matching,
        reporting_profile: PreferenceProfile,
    ) -> MetricsRecord:
        reported = rank_fractions(doc_run, reporting_profile)
        original = rank_fractions(doc_run, doctors)
        blocking_m, blocking_u = blocking_proportions(doc_run, doctors, hospitals)
        return MetricsRecord(
            mechanism=mechanism,
            proposing_side=DOCTORS,
            unmatched_doctors=unmatched_fraction(doc_run, DOCTORS),
            unmatched_hospitals=unmatched_fraction(doc_run, HOSPITALS),
            first_rank_matched=reported.matched[1],
            first_rank_all=reported.overall[1],
            top3_rank_matched=reported.matched[3],
            top3_rank_all=reported.overall[3],
            first_rank_original_matched=original.matched[1],
            top3_rank_original_matched=original.matched[3],
            same_partner_on_swap=same_partner_on_swap(doc_run, hosp_run),
            identical_to_da=identical_to_da(doc_run, da_doc),
            blocking_matched=blocking_m,
            blocking_unmatched=blocking_u,
            **provenance,
        )

    records = []
    for mechanism in mechanisms:
        if mechanism == "DA":
            records.append(build_record("DA", da_doc, da_hosp, doctors))
        elif mechanism == "Int-DA":
            schedule = interview_schedule(doctors, hospitals, k, k_prime)
            trunc_doctors = truncate_by_interviews(doctors, schedule)
            trunc_hospitals = truncate_by_interviews(hospitals, schedule)
            ida_doc = deferred_acceptance(trunc_doctors, trunc_hospitals, DOCTORS)
            ida_hosp = deferred_acceptance(trunc_doctors, trunc_hospitals, HOSPITALS)
            records.append(build_record("Int-DA", ida_doc, ida_hosp, trunc_doctors))
        elif mechanism == "Tr-DA":
            # Mechanical truncation hits the doctors' submitted lists only;
            # hospitals rank everyone.  Two-sided truncation overshoots the
            # benchmark unmatched rates by a wide margin.
            top_doctors = truncate_top_k(doctors, k)
            tda_doc = deferred_acceptance(top_doctors, hospitals, DOCTORS)
            tda_hosp = deferred_acceptance(top_doctors, hospitals, HOSPITALS)
            records.append(build_record("Tr-DA", tda_doc, tda_hosp, top_doctors))
    return records


_AGGREGATE_FIELDS = tuple(
    name
    for name in CSV_COLUMNS
    if name
    not in ("run_id", "seed", "n", "lambda_d", "lambda_h", "k", "k_prime", "mechanism", "proposing_side")
)


def aggregate_records(records: list[MetricsRecord]) -> dict[str, dict[str, float]]:
    """Mean of every statistic per mechanism, skipping NaN cells."""
    summary: dict[str, dict[str, float]] = {}
    for mechanism in sorted({r.mechanism for r in records}, key=MECHANISMS.index):
        rows = [r for r in records if r.mechanism == mechanism]
        stats = {}
        for name in _AGGREGATE_FIELDS:
            values = [getattr(r, name) for r in rows]
            values = [v for v in values if not math.isnan(v)]
            stats[name] = sum(values) / len(values) if values else math.nan
        summary[mechanism] = stats
    return summary


def _format_cell(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def write_records_csv(records: list[MetricsRecord], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(_format_cell(getattr(record, name)) for name in CSV_COLUMNS)


def read_records_csv(path: Path) -> list[dict[str, float | str]]:
    """Parse a records CSV back into typed dicts (empty cells become NaN)."""
    rows: list[dict[str, float | str]] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header in {path}")
        for raw in reader:
            row: dict[str, float | str] = {}
            for key, value in raw.items():
                if key in ("run_id", "mechanism", "proposing_side"):
                    row[key] = value
                elif key in ("seed", "n", "k", "k_prime"):
                    row[key] = int(value)
                else:
                    row[key] = float(value) if value != "" else math.nan
            rows.append(row)
    return rows


def write_manifest(path: Path, spec_dict: dict, seeds: list[int]) -> Path:
    manifest_path = path.with_suffix(path.suffix + ".manifest.json")
    manifest = {
        "spec": spec_dict,
        "version": __version__,
        "replication_seeds": seeds,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest_path


@dataclass(frozen=True)
class ExperimentResult:
    records: list[MetricsRecord]
    summary: dict[str, dict[str, float]]
    csv_path: Path | None
    manifest_path: Path | None


def _replication_task(args) -> list[MetricsRecord]:
    config, mechanisms, k, k_prime, run_id = args
    return run_replication(config, mechanisms, k, k_prime, run_id)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentResult:
    """Run every replication of the spec and write the CSV/manifest artifacts.

    Replications are independent; with ``workers > 1`` they run in separate
    processes and results are merged in replication order, so the artifacts
    are byte-identical regardless of scheduling.
    """
    seeds = [replication_seed(spec.seed, rep) for rep in range(spec.replications)]
    tasks = [
        (
            spec.market_config(seeds[rep], spec.lambda_d, spec.lambda_h),
            spec.mechanisms,
            spec.k,
            spec.k_prime,
            f"rep{rep:05d}",
        )
        for rep in range(spec.replications)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_replication_task, tasks))
    else:
        batches = [_replication_task(task) for task in tasks]
    records = [record for batch in batches for record in batch]
    summary = aggregate_records(records)

    csv_path = manifest_path = None
    if spec.output_path is not None:
        csv_path = _resolve_output(spec.output_path)
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        write_records_csv(records, csv_path)
        manifest_path = write_manifest(csv_path, spec.to_dict(), seeds)
    return ExperimentResult(records, summary, csv_path, manifest_path)


def run_sweep(spec: ExperimentSpec, workers: int = 1) -> list[dict[str, float]]:
    """Replicate plain DA over a grid of common-component weights.

    Per cell: ``spec.replications`` fresh markets, doctor- and
    hospital-proposing DA, averaging the doctor-proposing first-rank fraction
    and the fraction of doctors keeping the same partner across the proposer
    swap.  Writes one CSV row per cell when an output path is set.
    """
    grid = spec.sweep if spec.sweep is not None else SweepGrid()
    cells = [
        (i_d, i_h, lam_d, lam_h)
        for i_d, lam_d in enumerate(grid.lambda_d_values)
        for i_h, lam_h in enumerate(grid.lambda_h_values)
    ]
    tasks = [(spec, cell) for cell in cells]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_cell_task, tasks))
    else:
        rows = [_sweep_cell_task(task) for task in tasks]

    if spec.output_path is not None:
        path = _resolve_output(spec.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(SWEEP_COLUMNS)
            for row in rows:
                writer.writerow(_format_cell(row[name]) for name in SWEEP_COLUMNS)
        write_manifest(path, spec.to_dict(), [])
    return rows


def _sweep_cell_task(args) -> dict[str, float]:
    spec, (i_d, i_h, lam_d, lam_h) = args
    first_rank = 0.0
    same_partner = 0.0
    for rep in range(spec.replications):
        seed = replication_seed(spec.seed, i_d, i_h, rep)
        config = spec.market_config(seed, lam_d, lam_h)
        instance = generate_market(config)
        doctors = to_preferences(instance, DOCTORS)
        hospitals = to_preferences(instance, HOSPITALS)
        da_doc = deferred_acceptance(doctors, hospitals, DOCTORS)
        da_hosp = deferred_acceptance(doctors, hospitals, HOSPITALS)
        first_rank += rank_fractions(da_doc, doctors).overall[1]
        same_partner += same_partner_on_swap(da_doc, da_hosp)
    return {
        "lambda_d": lam_d,
        "lambda_h": lam_h,
        "n": spec.n_doctors,
        "replications": spec.replications,
        "first_rank_fraction": first_rank / spec.replications,
        "same_partner_fraction": same_partner / spec.replications,
    }


def paper_example_profiles() -> tuple[PreferenceProfile, PreferenceProfile]:
    """The bundled 3-doctor, 4-hospital worked example.

    Hospitals share one ranking of the doctors while the doctors disagree
    enough that interviewing strictly worsens one doctor's reported rank:
    the smallest market we know of where the two-stage mechanism is unstable
    for the original preferences.
    """
    doctors = profile_from_lists(
        DOCTORS,
        [
            [0, 2, 1, 3],
            [1, 2, 0, 3],
            [2, 0, 3, 1],
        ],
        n_partners=4,
    )
    hospitals = profile_from_lists(
        HOSPITALS,
        [[0, 1, 2]] * 4,
        n_partners=3,
    )
    return doctors, hospitals


def run_paper_example() -> str:
    """Run DA and the interview mechanism on the bundled worked example,
    assert the documented outcomes, and return a readable trace."""
    doctors, hospitals = paper_example_profiles()
    lines = ["Worked example: 3 doctors, 4 hospitals, interview caps k = k' = 2", ""]

    da = deferred_acceptance(doctors, hospitals, DOCTORS)
    assert da.doctor_to_hospital == (0, 1, 2), "full-preference DA regressed"
    lines.append("Doctor-proposing DA on full preferences:")
    for d, h in enumerate(da.doctor_to_hospital):
        lines.append(
            f"  doctor {d} -> hospital {h} (rank {rank_of_match(da, doctors, d)})"
        )

    schedule = interview_schedule(doctors, hospitals, k=2, k_prime=2)
    expected = ({0, 2}, {1, 2}, {0, 3})
    assert tuple(set(s) for s in schedule.doctor_interviews) == expected, (
        "interview schedule regressed"
    )
    lines.append("")
    lines.append("Interview schedule (doctor-optimal, pairwise stable):")
    for d, hs in enumerate(schedule.doctor_interviews):
        lines.append(f"  doctor {d} interviews hospitals {sorted(hs)}")

    trunc_doctors = truncate_by_interviews(doctors, schedule)
    trunc_hospitals = truncate_by_interviews(hospitals, schedule)
    final = deferred_acceptance(trunc_doctors, trunc_hospitals, DOCTORS)
    assert final.doctor_to_hospital == (0, 1, 3), "post-interview DA regressed"
    d3_rank = rank_of_match(final, trunc_doctors, 2)
    assert d3_rank == 2, "doctor 2's reported rank regressed"

    lines.append("")
    lines.append("DA on interview-truncated preferences:")
    for d, h in enumerate(final.doctor_to_hospital):
        lines.append(
            f"  doctor {d} -> hospital {h} "
            f"(reported rank {rank_of_match(final, trunc_doctors, d)}, "
            f"original rank {rank_of_match(final, doctors, d)})"
        )

    stable, blocks = oracle.is_stable(final, doctors, hospitals)
    assert not stable and (2, 2) in blocks, "expected instability regressed"
    lines.append("")
    lines.append(
        "Against the original preferences this outcome is unstable; "
        f"blocking pairs (doctor, hospital): {blocks}"
    )
    lines.append(
        "Doctor 2's reported rank rises to 2 while plain DA gave rank 1: "
        "interviewing is not rank-improving without enough preference agreement."
    )
    return "\n".join(lines)


def run_verification(n: int, trials: int, seed: int = 0, k: int = 2, k_prime: int = 2) -> dict:
    """Battery of oracle cross-checks on random small markets.

    Per trial: the doctor-proposing DA outcome must sit in the enumerated
    stable set and be weakly doctor-best in it; the hospital-proposing
    outcome weakly doctor-worst; the unmatched set must not vary across the
    stable set; and the interview schedule must be pairwise stable with no
    enumerated schedule any doctor responsively prefers.
    """
    if n > oracle.MAX_ORACLE_SIDE:
        raise ValueError(f"verification is limited to n <= {oracle.MAX_ORACLE_SIDE}")
    failures: list[str] = []
    checks = 0
    for trial in range(trials):
        config = MarketConfig(
            n_doctors=n,
            n_hospitals=n,
            lambda_d=0.5,
            lambda_h=0.5,
            seed=replication_seed(seed, trial),
        )
        instance = generate_market(config)
        doctors = to_preferences(instance, DOCTORS)
        hospitals = to_preferences(instance, HOSPITALS)
        da_doc = deferred_acceptance(doctors, hospitals, DOCTORS)
        da_hosp = deferred_acceptance(doctors, hospitals, HOSPITALS)
        stable_set = oracle.enumerate_stable(doctors, hospitals)
        pos_d = doctors.position_maps()

        def doctor_weakly_prefers(a: Matching, b: Matching) -> bool:
            for d in range(n):
                ha, hb = a.doctor_to_hospital[d], b.doctor_to_hospital[d]
                ra = pos_d[d][ha] if ha != UNMATCHED else len(doctors.lists[d])
                rb = pos_d[d][hb] if hb != UNMATCHED else len(doctors.lists[d])
                if ra > rb:
                    return False
            return True

        checks += 1
        if da_doc not in stable_set:
            failures.append(f"trial {trial}: doctor-proposing DA not in stable set")
        if da_hosp not in stable_set:
            failures.append(f"trial {trial}: hospital-proposing DA not in stable set")
        if not all(doctor_weakly_prefers(da_doc, other) for other in stable_set):
            failures.append(f"trial {trial}: doctor-proposing DA not doctor-best")
        if not all(doctor_weakly_prefers(other, da_hosp) for other in stable_set):
            failures.append(f"trial {trial}: hospital-proposing DA not doctor-worst")
        unmatched_sets = {
            tuple(h == UNMATCHED for h in m.doctor_to_hospital) for m in stable_set
        }
        if len(unmatched_sets) != 1:
            failures.append(f"trial {trial}: unmatched set varies across stable set")

        schedule = interview_schedule(doctors, hospitals, k, k_prime)
        ok, violations = oracle.is_pairwise_stable(schedule, doctors, hospitals, k, k_prime)
        if not ok:
            failures.append(f"trial {trial}: schedule pairwise-unstable: {violations[:3]}")
        all_schedules = oracle.enumerate_pairwise_stable(doctors, hospitals, k, k_prime)
        if schedule not in all_schedules:
            failures.append(f"trial {trial}: schedule missing from enumerated stable set")
        for other in all_schedules:
            for d in range(n):
                if oracle.responsively_prefers(
                    other.doctor_interviews[d], schedule.doctor_interviews[d], pos_d[d], k
                ):
                    failures.append(
                        f"trial {trial}: doctor {d} prefers an alternative stable schedule"
                    )
    return {"trials": trials, "n": n, "checks": checks, "failures": failures}

