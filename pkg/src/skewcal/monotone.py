"""Catalog and calculus of the operator monotone functions behind correlation kernels.

Every catalog entry is positive on (0, inf), symmetric in the sense
f(x) = x * f(1/x), and normalized so f(1) = 1; each carries its analytic
limit f(0+) as stored data. The associated transform

    tilde(x) = ((x + 1) - (x - 1)**2 * f(0) / f(x)) / 2

is the scalar profile later evaluated on modular spectra to build
correlation kernels. For a valid entry it satisfies
0 <= tilde(x) <= (x + 1) / 2 and inherits the symmetry
tilde(x) = x * tilde(1/x).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "MonotoneFunction",
    "ValidationReport",
    "default_grid",
    "from_key",
    "harmonic",
    "sld",
    "tilde_transform",
    "validate_catalog_entry",
    "wyd",
    "wyd_f",
    "wyd_f_at_zero",
    "wyd_parameter",
    "wyd_tilde",
]

logger = logging.getLogger(__name__)

# Direct evaluation of the wyd quotient carries roughly
# 1e-16 / (beta * (1 - beta) * |x - 1|) relative noise, so near x = 1 the
# quotient is replaced by its expansion; at this window the series
# truncation (~|x-1|**3) and the quotient noise are both far below 1e-10.
WYD_SERIES_WINDOW = 1e-4

# Negative tilde values no lower than this are treated as round-off and
# clamped to zero; anything below passes through as a genuine violation.
TILDE_CLAMP_FLOOR = -1e-14

NORMALIZATION_TOL = 1e-12
SYMMETRY_RTOL = 1e-10
MONOTONICITY_TOL = 1e-12
TILDE_UPPER_TOL = 1e-12
TILDE_SYMMETRY_RTOL = 1e-9


def _require_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    return beta


def _as_positive_array(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.size and not np.all(arr > 0.0):
        raise ValueError(f"{name} must be strictly positive")
    return arr


def _match_input(out: np.ndarray, like) -> float | np.ndarray:
    return float(out) if np.ndim(like) == 0 else out


def wyd_f(beta: float, x) -> float | np.ndarray:
    """Evaluate the power-difference mean f(x) = b(1-b)(x-1)^2 / ((x^b - 1)(x^(1-b) - 1)).

    Accepts scalars or arrays of strictly positive x. The removable
    singularity at x = 1 is filled by the second-order expansion
    1 + u/2 - (1 - b(1-b)) u^2 / 12 with u = x - 1, which keeps the two
    branches consistent to well below 1e-10 across the switch.
    """
    beta = _require_beta(beta)
    arr = _as_positive_array(x)
    u = arr - 1.0
    near = np.abs(u) < WYD_SERIES_WINDOW
    safe = np.where(near, 2.0, arr)
    num = beta * (1.0 - beta) * np.square(safe - 1.0)
    den = (np.power(safe, beta) - 1.0) * (np.power(safe, 1.0 - beta) - 1.0)
    gamma = beta * (1.0 - beta)
    series = 1.0 + 0.5 * u - (1.0 - gamma) / 12.0 * np.square(u)
    out = np.where(near, series, num / den)
    return _match_input(out, x)


def wyd_f_at_zero(beta: float) -> float:
    """Limit of the wyd family at x -> 0+, equal to beta * (1 - beta)."""
    beta = _require_beta(beta)
    return beta * (1.0 - beta)


def wyd_tilde(beta: float, x) -> float | np.ndarray:
    """Closed form (x^beta + x^(1-beta)) / 2 of the transform for the wyd family."""
    beta = _require_beta(beta)
    arr = _as_positive_array(x)
    out = 0.5 * (np.power(arr, beta) + np.power(arr, 1.0 - beta))
    return _match_input(out, x)


def tilde_transform(f: "MonotoneFunction", x, clamp: bool = True) -> float | np.ndarray:
    """Apply tilde(x) = ((x + 1) - (x - 1)^2 * f(0) / f(x)) / 2 elementwise.

    Round-off can push the mathematically nonnegative result a hair below
    zero; values in [TILDE_CLAMP_FLOOR, 0) are clamped to 0 and logged when
    ``clamp`` is set. Larger negatives are returned untouched so validation
    can see them.
    """
    arr = _as_positive_array(x)
    fx = np.asarray(f(arr), dtype=float)
    out = 0.5 * ((arr + 1.0) - np.square(arr - 1.0) * (f.f_at_zero / fx))
    if clamp:
        neg = (out < 0.0) & (out >= TILDE_CLAMP_FLOOR)
        count = int(np.count_nonzero(neg))
        if count:
            logger.debug("clamped %d tilde round-off value(s) to zero", count)
            out = np.where(neg, 0.0, out)
    return _match_input(out, x)


@dataclass(frozen=True)
class MonotoneFunction:
    """A catalog entry: evaluator plus the stored limit at zero.

    ``f_at_zero`` is data rather than a computed limit so that entries with
    f(0) = 0 (where the tilde transform degenerates to (x + 1)/2) stay exact.
    """

    name: str
    params: tuple[float, ...]
    evaluate: Callable[[float | np.ndarray], float | np.ndarray]
    f_at_zero: float

    def __call__(self, x) -> float | np.ndarray:
        return self.evaluate(x)

    def tilde(self, x, clamp: bool = True) -> float | np.ndarray:
        return tilde_transform(self, x, clamp=clamp)


def _sld_profile(x):
    arr = np.asarray(x, dtype=float)
    return _match_input(0.5 * (arr + 1.0), x)


def _harmonic_profile(x):
    arr = np.asarray(x, dtype=float)
    return _match_input(2.0 * arr / (arr + 1.0), x)


def wyd(beta: float) -> MonotoneFunction:
    """Member of the one-parameter wyd family, key ``wyd:<beta>``."""
    beta = _require_beta(beta)
    return MonotoneFunction(
        name=f"wyd:{beta!r}",
        params=(beta,),
        evaluate=lambda x: wyd_f(beta, x),
        f_at_zero=beta * (1.0 - beta),
    )


def sld() -> MonotoneFunction:
    """Arithmetic-mean entry f(x) = (1 + x)/2 with f(0) = 1/2."""
    return MonotoneFunction("sld", (), _sld_profile, 0.5)


def harmonic() -> MonotoneFunction:
    """Harmonic-mean entry f(x) = 2x/(x + 1) with f(0) = 0.

    Its tilde transform is identically (x + 1)/2, exercising the f(0) = 0
    branch of the formula.
    """
    return MonotoneFunction("harmonic", (), _harmonic_profile, 0.0)


def from_key(key: str) -> MonotoneFunction:
    """Parse a catalog key: ``sld``, ``harmonic``, or ``wyd:<beta>``."""
    text = key.strip()
    if text == "sld":
        return sld()
    if text == "harmonic":
        return harmonic()
    if text.startswith("wyd:"):
        raw = text[len("wyd:"):]
        try:
            beta = float(raw)
        except ValueError:
            raise ValueError(f"malformed wyd parameter {raw!r} in key {key!r}") from None
        return wyd(beta)
    raise ValueError(f"unknown monotone function key {key!r}")


def wyd_parameter(f: MonotoneFunction) -> float | None:
    """Return beta when ``f`` belongs to the wyd family, else None."""
    if f.name.startswith("wyd:") and f.params:
        return f.params[0]
    return None


def default_grid(lo: float = 1e-6, hi: float = 1e6, points: int = 241) -> np.ndarray:
    """Log-spaced validation grid; the default hits x = 1 exactly."""
    if not (0.0 < lo < hi) or points < 2:
        raise ValueError("grid needs 0 < lo < hi and at least two points")
    return np.logspace(np.log10(lo), np.log10(hi), points)


@dataclass(frozen=True)
class ValidationReport:
    """Worst observed deviations of a catalog entry over a sample grid.

    Violations are reported, never raised, so broken candidate entries can
    be inspected.
    """

    name: str
    grid_size: int
    normalization_error: float
    max_symmetry_violation: float
    max_monotonicity_drop: float
    min_value: float
    min_tilde: float
    max_tilde_excess: float
    max_tilde_symmetry_violation: float
    clamped_points: int

    def violations(self) -> list[str]:
        out = []
        if not np.isfinite(self.min_value) or self.min_value <= 0.0:
            out.append("nonpositive value on grid")
        if self.normalization_error > NORMALIZATION_TOL:
            out.append(f"f(1) off by {self.normalization_error:.3e}")
        if self.max_symmetry_violation > SYMMETRY_RTOL:
            out.append(f"symmetry f(x) = x f(1/x) off by {self.max_symmetry_violation:.3e} (relative)")
        if self.max_monotonicity_drop > MONOTONICITY_TOL:
            out.append(f"monotonicity drop of {self.max_monotonicity_drop:.3e}")
        if self.min_tilde < TILDE_CLAMP_FLOOR:
            out.append(f"tilde dips to {self.min_tilde:.3e}")
        if self.max_tilde_excess > TILDE_UPPER_TOL:
            out.append(f"tilde exceeds (x + 1)/2 by {self.max_tilde_excess:.3e}")
        if self.max_tilde_symmetry_violation > TILDE_SYMMETRY_RTOL:
            out.append(f"tilde symmetry off by {self.max_tilde_symmetry_violation:.3e} (relative)")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "grid_size": self.grid_size,
            "normalization_error": self.normalization_error,
            "max_symmetry_violation": self.max_symmetry_violation,
            "max_monotonicity_drop": self.max_monotonicity_drop,
            "min_value": self.min_value,
            "min_tilde": self.min_tilde,
            "max_tilde_excess": self.max_tilde_excess,
            "max_tilde_symmetry_violation": self.max_tilde_symmetry_violation,
            "clamped_points": self.clamped_points,
            "ok": self.ok,
            "violations": self.violations(),
        }


def validate_catalog_entry(f: MonotoneFunction, grid: np.ndarray | None = None) -> ValidationReport:
    """Check normalization, symmetry, monotonicity, and the tilde bounds on a grid."""
    xs = default_grid() if grid is None else _as_positive_array(grid, "grid")
    if xs.size == 0:
        raise ValueError("grid must be non-empty")
    xs = np.sort(xs.ravel())

    values = np.asarray(f(xs), dtype=float)
    mirrored = xs * np.asarray(f(1.0 / xs), dtype=float)
    scale = np.maximum(np.abs(values), np.finfo(float).tiny)
    symmetry = float(np.max(np.abs(values - mirrored) / scale))

    # worst drop over all ordered grid pairs, via the running maximum
    drops = np.maximum.accumulate(values) - values
    monotonicity = float(np.max(drops))

    raw_tilde = np.asarray(tilde_transform(f, xs, clamp=False), dtype=float)
    clamped = int(np.count_nonzero((raw_tilde < 0.0) & (raw_tilde >= TILDE_CLAMP_FLOOR)))
    excess = float(np.max(raw_tilde - 0.5 * (xs + 1.0)))
    tilde_clamped = np.where((raw_tilde < 0.0) & (raw_tilde >= TILDE_CLAMP_FLOOR), 0.0, raw_tilde)
    mirrored_tilde = xs * np.asarray(tilde_transform(f, 1.0 / xs), dtype=float)
    # absolute floor keeps clamped-to-zero points from dividing by zero
    tilde_scale = np.maximum(np.abs(tilde_clamped), 1e-12)
    tilde_symmetry = float(np.max(np.abs(tilde_clamped - mirrored_tilde) / tilde_scale))

    return ValidationReport(
        name=f.name,
        grid_size=int(xs.size),
        normalization_error=float(abs(f(1.0) - 1.0)),
        max_symmetry_violation=symmetry,
        max_monotonicity_drop=monotonicity,
        min_value=float(np.min(values)),
        min_tilde=float(np.min(raw_tilde)),
        max_tilde_excess=excess,
        max_tilde_symmetry_violation=tilde_symmetry,
        clamped_points=clamped,
    )
