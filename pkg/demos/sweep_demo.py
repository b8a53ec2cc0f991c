"""
Randomized verification sweeps from the library API
===================================================

The command line front end (`skewcal verify`) is a thin wrapper around
run_sweep.  This script drives the same machinery directly: configure a
sweep, stream its records through a sink, reduce them to a summary, and
bucket the observed gaps into a histogram.
"""

import collections
import tempfile
from pathlib import Path

from skewcal.harness import (
    SweepConfig,
    emit_gap_histogram,
    read_records,
    run_sweep,
    summarize_records,
)

# 2 dims x 200 trials x 3 catalog entries = 1200 records.  Records are
# produced sorted by (dim, function position, trial); the per-trial seed
# is a hash of (sweep seed, dim, trial), so any record can be reproduced
# in isolation.
config = SweepConfig(
    dims=(2, 4),
    trials=200,
    f_specs=("wyd:0.25", "sld", "harmonic"),
    seed=123,
)

smallest = collections.defaultdict(lambda: float("inf"))


def watch(record):
    smallest[record["f"]] = min(smallest[record["f"]], record["gap"])


summary = run_sweep(config, record_sink=watch)
print("records    :", summary.total)
print("violations :", summary.violations)
print("min gap    :", summary.min_gap, "at", summary.min_gap_instance)
print("max resid  :", summary.max_residual)

print("\nsmallest gap per function:")
for key, gap in smallest.items():
    print(f"  {key:<10} {gap:.6e}")

# The same sweep again, written to disk this time.  Identical seed and
# config give a byte-identical record stream; the summary of the loaded
# records matches the live one no matter how the records are ordered.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "records.jsonl"
    config_disk = SweepConfig(
        dims=(2, 4),
        trials=200,
        f_specs=("wyd:0.25", "sld", "harmonic"),
        seed=123,
        output_path=str(out),
    )
    run_sweep(config_disk)
    records = read_records(out)
    assert summarize_records(records).to_dict() == summary.to_dict()
    print("\nreloaded", len(records), "records; summary identical")

    # gap histogram: one leading bucket for gaps <= 0 (none expected),
    # then log-spaced buckets across the positive range
    hist = Path(tmp) / "gaps.csv"
    buckets = emit_gap_histogram(records, n_buckets=8, out_path=hist)
    print("\ngap_lo        gap_hi        count")
    for lo, hi, count in buckets:
        print(f"{lo:<13.4e} {hi:<13.4e} {count}")

# The harmonic entry pins the right hand side at zero (its information
# vanishes identically), so its gap equals the covariance side; the
# tighter entries show how much of the slack the f-information recovers.
