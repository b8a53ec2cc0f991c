"""Randomized verification sweeps, single-instance checks, and report emission.

Reproducibility contract: every trial derives its seed as
hash64(seed, dim, trial) where hash64 absorbs each 64-bit word into one
splitmix64 step (h starts at 0; for each word, h becomes the splitmix64
output of state h XOR word). The state, the two observables, and therefore
every record are functions of that per-trial seed alone, so rerunning a
configuration reproduces the output stream byte for byte. Records are
sorted by (dim, f, trial) before they are written, and summaries are
computed with order-independent reductions, so they are invariant under
shuffling of the record stream.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .gns import GnsModel, audit_G_equals_H
from .linalg import (
    HermitianMatrix,
    load_density,
    load_hermitian,
    random_density,
    random_hermitian,
)
from .monotone import from_key
from .qinfo import DEFAULT_TOL, _report_in_eigenbasis, evaluate_inequalities

__all__ = [
    "CSV_COLUMNS",
    "MAX_SWEEP_DIM",
    "SweepConfig",
    "SweepSummary",
    "check_instance",
    "emit_gap_histogram",
    "hash64",
    "read_records",
    "run_sweep",
    "splitmix64",
    "summarize_records",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

MAX_SWEEP_DIM = 64

CSV_COLUMNS = (
    "dim",
    "f",
    "trial",
    "seed",
    "var_a",
    "var_b",
    "cov_ab",
    "info_a",
    "info_b",
    "corr_ab",
    "lhs",
    "rhs",
    "gap",
    "heisenberg_rhs",
    "residuals",
    "flags",
)


def splitmix64(state: int) -> tuple[int, int]:
    """One step of the splitmix64 stream: (next_state, output)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def hash64(*words: int) -> int:
    """Deterministic 64-bit hash of integer words via chained splitmix64 steps."""
    h = 0
    for w in words:
        _, h = splitmix64(h ^ (int(w) & _MASK64))
    return h


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one verification sweep.

    ``dims`` is normalized to a sorted deduplicated tuple; ``f_specs`` keeps
    the given order, which also fixes the record ordering within a
    dimension.
    """

    dims: tuple[int, ...]
    trials: int
    f_specs: tuple[str, ...]
    seed: int = 0
    tol: float = DEFAULT_TOL
    normalize_observables: bool = True
    gns_audit: bool = False
    output_path: str | None = None
    format: str = "jsonl"

    def __post_init__(self):
        dims = tuple(sorted(set(int(d) for d in self.dims)))
        if not dims:
            raise ValueError("dims must be non-empty")
        if dims[0] < 1 or dims[-1] > MAX_SWEEP_DIM:
            raise ValueError(f"dims must lie in [1, {MAX_SWEEP_DIM}], got {dims}")
        object.__setattr__(self, "dims", dims)
        if int(self.trials) < 1:
            raise ValueError("trials must be at least 1")
        object.__setattr__(self, "trials", int(self.trials))
        specs = tuple(str(s) for s in self.f_specs)
        if not specs:
            raise ValueError("f_specs must be non-empty")
        for spec in specs:
            from_key(spec)  # fail fast on malformed keys
        object.__setattr__(self, "f_specs", specs)
        if not (self.tol > 0.0 and math.isfinite(self.tol)):
            raise ValueError("tol must be a positive finite number")
        if self.format not in ("jsonl", "csv"):
            raise ValueError(f"format must be 'jsonl' or 'csv', got {self.format!r}")


@dataclass(frozen=True)
class SweepSummary:
    """Order-independent reduction of a record stream.

    total = passes + boundary_cases + violations. A record counts as a
    violation when it carries flags, as a boundary case when unflagged with
    |gap| inside the effective tolerance, and as a pass otherwise.
    """

    total: int
    passes: int
    boundary_cases: int
    violations: int
    min_gap: float | None
    min_gap_instance: dict | None
    max_residual: float

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "passes": self.passes,
            "boundary_cases": self.boundary_cases,
            "violations": self.violations,
            "min_gap": self.min_gap,
            "min_gap_instance": self.min_gap_instance,
            "max_residual": self.max_residual,
        }


class _SummaryAccumulator:
    def __init__(self, tol: float):
        self.tol = tol
        self.total = 0
        self.passes = 0
        self.boundary = 0
        self.violations = 0
        self.min_gap = None
        self.min_instance = None
        self.max_residual = 0.0
        self._min_key = None

    def update(self, record: dict) -> None:
        self.total += 1
        gap = record["gap"]
        tol_eff = self.tol * max(1.0, record["var_a"] * record["var_b"])
        if record["flags"]:
            self.violations += 1
        elif abs(gap) <= tol_eff:
            self.boundary += 1
        else:
            self.passes += 1
        if record["residuals"]:
            self.max_residual = max(self.max_residual, max(record["residuals"]))
        key = (record["dim"], record["f"], record["trial"])
        if (
            self.min_gap is None
            or gap < self.min_gap
            or (gap == self.min_gap and key < self._min_key)
        ):
            self.min_gap = gap
            self._min_key = key
            self.min_instance = {
                "dim": record["dim"],
                "f": record["f"],
                "trial": record["trial"],
                "seed": record["seed"],
            }

    def summary(self) -> SweepSummary:
        return SweepSummary(
            total=self.total,
            passes=self.passes,
            boundary_cases=self.boundary,
            violations=self.violations,
            min_gap=self.min_gap,
            min_gap_instance=self.min_instance,
            max_residual=self.max_residual,
        )


def summarize_records(records, tol: float = DEFAULT_TOL) -> SweepSummary:
    """Reduce an iterable of record dicts to a SweepSummary, order independently."""
    acc = _SummaryAccumulator(tol)
    for record in records:
        acc.update(record)
    return acc.summary()


def _normalized(h: HermitianMatrix) -> HermitianMatrix:
    norm = float(np.linalg.norm(h.matrix))
    if norm < 1e-300:
        return h
    return HermitianMatrix(h.matrix / norm)


def _csv_row(record: dict) -> list:
    row = [record[c] for c in CSV_COLUMNS[:-2]]
    row.append(";".join(repr(r) for r in record["residuals"]))
    row.append(";".join(record["flags"]))
    return row


def run_sweep(config: SweepConfig, record_sink=None) -> SweepSummary:
    """Run the configured random-instance sweep and reduce it to a summary.

    Per (dim, trial) one instance (state rho, observables a and b) is drawn
    from the per-trial seed; every entry of ``f_specs`` is then evaluated on
    that same instance. Records go to ``record_sink`` (if given) and to
    ``config.output_path`` (if given) in (dim, f, trial) order. Inequality
    violations are recorded and flagged, never raised.
    """
    functions = [from_key(k) for k in config.f_specs]
    f_order = {f.name: i for i, f in enumerate(functions)}
    acc = _SummaryAccumulator(config.tol)

    out = None
    writer = None
    try:
        if config.output_path:
            out = open(config.output_path, "w", newline="")
            if config.format == "csv":
                writer = csv.writer(out, lineterminator="\n")
                writer.writerow(CSV_COLUMNS)
        for dim in config.dims:
            buffered = []
            for trial in range(config.trials):
                trial_seed = hash64(config.seed, dim, trial)
                rho = random_density(dim, hash64(trial_seed, 0))
                a = random_hermitian(dim, hash64(trial_seed, 1))
                b = random_hermitian(dim, hash64(trial_seed, 2))
                if config.normalize_observables:
                    a = _normalized(a)
                    b = _normalized(b)
                model = GnsModel(rho) if config.gns_audit else None
                # rotate once per instance; every f entry reuses the pair
                at = rho.to_eigenbasis(a.matrix)
                bt = rho.to_eigenbasis(b.matrix)
                for f in functions:
                    report = _report_in_eigenbasis(
                        rho.eigenvalues, at, bt, f, config.tol
                    )
                    residuals = list(report.path_residuals)
                    flags = list(report.flags)
                    if model is not None:
                        audit = audit_G_equals_H(model, f, a, b)
                        residuals.append(audit.residual)
                        flags.extend(audit.flags)
                    record = {
                        "dim": dim,
                        "f": f.name,
                        "trial": trial,
                        "seed": trial_seed,
                        **report.to_dict(),
                    }
                    record["residuals"] = residuals
                    record["flags"] = flags
                    buffered.append(record)
            buffered.sort(key=lambda r: (f_order[r["f"]], r["trial"]))
            for record in buffered:
                acc.update(record)
                if record_sink is not None:
                    record_sink(record)
                if out is not None:
                    if writer is not None:
                        writer.writerow(_csv_row(record))
                    else:
                        out.write(json.dumps(record) + "\n")
    finally:
        if out is not None:
            out.close()
    return acc.summary()


def check_instance(rho_path, a_path, b_path, f_spec: str, tol: float = DEFAULT_TOL):
    """Evaluate one instance from matrix JSON files.

    Returns (payload, exit_code): 0 on pass, 2 on any flagged tolerance
    violation, 1 on input errors (malformed files, non-Hermitian input,
    unfaithful state, shape mismatch). The payload carries the full report
    plus the identity audit.
    """
    try:
        rho = load_density(rho_path)
        a = load_hermitian(a_path)
        b = load_hermitian(b_path)
        f = from_key(f_spec)
        report = evaluate_inequalities(rho, f, a, b, tol=tol)
        audit = audit_G_equals_H(GnsModel(rho), f, a, b)
    except (OSError, ValueError) as exc:
        return {"error": str(exc)}, 1
    payload = {"report": report.to_dict(), "audit": audit.to_dict()}
    code = 2 if (report.flags or audit.flags) else 0
    return payload, code


def read_records(path) -> list[dict]:
    """Load a jsonl record stream written by run_sweep."""
    records = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_no}: not valid JSON: {exc}") from exc
    return records


def emit_gap_histogram(records, n_buckets: int = 20, out_path=None) -> list[tuple[float, float, int]]:
    """Bucket record gaps into a log-spaced histogram table.

    Positive gaps get ``n_buckets`` log-spaced buckets over their observed
    range; any nonpositive gaps (boundary hits) are collected in one leading
    bucket ending at 0. Bucket counts always sum to the record count. Rows
    are (gap_lo, gap_hi, count); with ``out_path`` they are also written as
    CSV with that header.
    """
    gaps = [float(r["gap"]) for r in records]
    if not gaps:
        raise ValueError("no records to bucket")
    if n_buckets < 1:
        raise ValueError("n_buckets must be at least 1")
    nonpos = [g for g in gaps if g <= 0.0]
    pos = [g for g in gaps if g > 0.0]
    rows: list[tuple[float, float, int]] = []
    if nonpos:
        rows.append((min(nonpos), 0.0, len(nonpos)))
    if pos:
        lo, hi = min(pos), max(pos)
        if lo == hi:
            rows.append((lo, hi, len(pos)))
        else:
            edges = np.geomspace(lo, hi, n_buckets + 1)
            edges[0], edges[-1] = lo, hi  # guard round-off at the ends
            idx = np.clip(np.searchsorted(edges, pos, side="right") - 1, 0, n_buckets - 1)
            counts = np.bincount(idx, minlength=n_buckets)
            rows.extend(
                (float(edges[i]), float(edges[i + 1]), int(counts[i]))
                for i in range(n_buckets)
            )
    if out_path is not None:
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("gap_lo", "gap_hi", "count"))
            writer.writerows(rows)
    return rows
