"""Finite-dimensional modular model of a faithful state, with executable audits.

The carrier space is the full matrix algebra equipped with the inner
product <x, y> = Tr(rho x† y) and cyclic vector the identity matrix. The
modular operator acts as x -> rho x rho^(-1); its spectrum is the finite
set of eigenvalue ratios, so every spectral integral below collapses to an
exact sum over ratio atoms.

The centerpiece is the identity audit: the inequality gap

    G = var_a var_b - cov^2 - (info_a info_b - corr^2)

computed from plain traces must equal the atomic double integral

    H = (1/4) sum over atom pairs of
        [(s + 1) tilde(t) + (t + 1) tilde(s) - 2 tilde(s) tilde(t)] mu(s, t)

where mu is a product measure built from the spectral weights of the two
centered observables. mu is nonnegative atom by atom and the integrand is
nonnegative wherever 0 <= tilde(x) <= (x + 1)/2, which exhibits G >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, as_matrix, group_spectrum
from .monotone import MonotoneFunction, tilde_transform
from .qinfo import centered, covariance, f_correlation, f_information, variance

__all__ = [
    "AtomicPairMeasure",
    "GnsAuditReport",
    "GnsModel",
    "ModularAtom",
    "ModularSpectrum",
    "audit_G_equals_H",
    "build_mu",
    "corr_via_form",
    "cov_via_form",
    "form_E",
    "form_E1",
    "form_F",
    "form_G",
    "h_from_measure",
    "h_value",
    "modular_apply",
    "modular_spectrum",
    "pair_integrand",
]

# |G - H| is accepted up to this much relative slack.
G_H_RTOL = 1e-8

# Atom weights of mu may undershoot zero by round-off up to this fraction of
# the total mass; the quadratic form G may undershoot similarly relative to
# the graph form E1.
MU_ATOM_SLACK = 1e-12
GFORM_SLACK = 1e-12


class GnsModel:
    """Modular data of the state Tr(rho .) on the full matrix algebra.

    Vectors of the representation are plain matrices; the cyclic vector is
    the identity. Attributes expose the state's spectral data and the
    matrix of eigenvalue ratios lam_i / lam_j that represents the modular
    operator entrywise in the eigenbasis.
    """

    __slots__ = ("rho", "dim", "eigenvalues", "eigenvectors", "ratios", "_spectrum")

    def __init__(self, rho: DensityMatrix):
        self.rho = rho
        self.dim = rho.dim
        self.eigenvalues = rho.eigenvalues
        self.eigenvectors = rho.eigenvectors
        self.ratios = rho.eigenvalues[:, None] / rho.eigenvalues[None, :]
        self._spectrum = None

    @property
    def cyclic_vector(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def inner(self, x, y) -> complex:
        """GNS inner product Tr(rho x† y), by direct trace."""
        return complex(np.trace(self.rho.matrix @ as_matrix(x).conj().T @ as_matrix(y)))

    def to_eigenbasis(self, x) -> np.ndarray:
        return self.rho.to_eigenbasis(x)

    def spectrum(self) -> "ModularSpectrum":
        """Atomic spectrum of the modular operator (cached; value-identical to uncached)."""
        if self._spectrum is None:
            self._spectrum = _compute_spectrum(self.eigenvalues)
        return self._spectrum


def modular_apply(m: GnsModel, x) -> np.ndarray:
    """Modular operator rho x rho^(-1), via entrywise ratios in the eigenbasis."""
    tilted = m.to_eigenbasis(x)
    u = m.eigenvectors
    return u @ (m.ratios * tilted) @ u.conj().T


def _weighted_form(m: GnsModel, profile: np.ndarray, xi, eta) -> complex:
    # sum_ij profile[i,j] * conj(xi~[i,j]) * eta~[i,j] * lam[j]; the column
    # weight lam[j] realizes Tr(rho x† y) entrywise in the eigenbasis.
    xt = m.to_eigenbasis(xi)
    et = m.to_eigenbasis(eta)
    return complex(np.sum(profile * m.eigenvalues[None, :] * np.conj(xt) * et))


def form_E(m: GnsModel, xi, eta) -> complex:
    """Graph-term form <Delta^(1/2) xi, Delta^(1/2) eta> = <xi, Delta eta>."""
    return _weighted_form(m, m.ratios, xi, eta)


def form_E1(m: GnsModel, xi, eta) -> complex:
    """form_E plus the plain inner product: <xi, (1 + Delta) eta>."""
    return form_E(m, xi, eta) + m.inner(xi, eta)


def form_F(m: GnsModel, f: MonotoneFunction, xi, eta) -> complex:
    """Kernel form <tilde(Delta)^(1/2) xi, tilde(Delta)^(1/2) eta>."""
    profile = np.asarray(tilde_transform(f, m.ratios), dtype=float)
    return _weighted_form(m, profile, xi, eta)


def form_G(m: GnsModel, f: MonotoneFunction, xi, eta) -> complex:
    """Nonnegative-difference form: form_E1 / 2 - form_F."""
    return 0.5 * form_E1(m, xi, eta) - form_F(m, f, xi, eta)


def cov_via_form(m: GnsModel, a, b) -> float:
    """Covariance recomputed as Re form_E1 of the centered observables, halved."""
    a0 = centered(m.rho, a)
    b0 = centered(m.rho, b)
    return 0.5 * form_E1(m, a0, b0).real


def corr_via_form(m: GnsModel, f: MonotoneFunction, a, b) -> float:
    """f-correlation recomputed as Re form_G of the centered observables."""
    a0 = centered(m.rho, a)
    b0 = centered(m.rho, b)
    return form_G(m, f, a0, b0).real


@dataclass(frozen=True)
class ModularAtom:
    """One atom of the modular spectrum: ratio value plus its index pairs."""

    value: float
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class ModularSpectrum:
    """Atomic decomposition of the modular operator's spectrum.

    ``labels[i, j]`` is the atom index of eigenbasis entry (i, j); the atoms
    cover all dim^2 pairs exactly once, and transposing an atom's pairs
    lands on the atom of the inverse ratio.
    """

    atoms: tuple[ModularAtom, ...]
    labels: np.ndarray
    values: np.ndarray


def _compute_spectrum(eigenvalues: np.ndarray) -> ModularSpectrum:
    pairs = group_spectrum(eigenvalues)
    cluster = np.array([p.projector_index for p in pairs], dtype=int)
    n_clusters = int(cluster[-1]) + 1
    reps = np.zeros(n_clusters)
    counts = np.zeros(n_clusters)
    for p in pairs:
        reps[p.projector_index] += p.value
        counts[p.projector_index] += 1
    reps /= counts

    labels = cluster[:, None] * n_clusters + cluster[None, :]
    values = (reps[:, None] / reps[None, :]).ravel()

    n = eigenvalues.size
    grouped: list[list[tuple[int, int]]] = [[] for _ in range(n_clusters * n_clusters)]
    for i in range(n):
        for j in range(n):
            grouped[labels[i, j]].append((i, j))
    atoms = tuple(
        ModularAtom(value=float(values[k]), pairs=tuple(grouped[k]))
        for k in range(len(grouped))
    )
    return ModularSpectrum(atoms=atoms, labels=labels, values=values)


def modular_spectrum(m: GnsModel) -> ModularSpectrum:
    """Ratio atoms of the modular operator, grouped by the degeneracy tolerance."""
    return m.spectrum()


@dataclass(frozen=True, eq=False)
class AtomicPairMeasure:
    """Signed measure on pairs of spectrum atoms; nonnegative up to round-off.

    ``weights[k, l]`` belongs to the value pair (values[k], values[l]).
    """

    values: np.ndarray
    weights: np.ndarray

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def min_weight(self) -> float:
        return float(np.min(self.weights))

    @property
    def support(self) -> list[tuple[tuple[float, float], float]]:
        out = []
        for k, s in enumerate(self.values):
            for l, t in enumerate(self.values):
                out.append(((float(s), float(t)), float(self.weights[k, l])))
        return out


def build_mu(m: GnsModel, xi, eta) -> AtomicPairMeasure:
    """Product measure mu = m_xx (x) m_yy + m_yy (x) m_xx - 2 m_xy (x) m_xy.

    m_xx, m_yy, m_xy are the spectral weights Re <xi, e_k xi>,
    Re <eta, e_k eta>, Re <xi, e_k eta> of the atoms e_k. Each resulting
    atom weight is nonnegative up to round-off: the cross term is bounded
    through the projection Cauchy-Schwarz inequality and the two plus terms
    dominate by the arithmetic-geometric mean inequality.
    """
    spec = m.spectrum()
    xt = m.to_eigenbasis(as_matrix(xi))
    et = m.to_eigenbasis(as_matrix(eta))
    w = m.eigenvalues[None, :]
    k = spec.values.size
    flat = spec.labels.ravel()
    m_xx = np.bincount(flat, weights=(np.abs(xt) ** 2 * w).ravel(), minlength=k)
    m_yy = np.bincount(flat, weights=(np.abs(et) ** 2 * w).ravel(), minlength=k)
    m_xy = np.bincount(flat, weights=(np.real(np.conj(xt) * et) * w).ravel(), minlength=k)
    weights = np.outer(m_xx, m_yy) + np.outer(m_yy, m_xx) - 2.0 * np.outer(m_xy, m_xy)
    return AtomicPairMeasure(values=spec.values, weights=weights)


def pair_integrand(f: MonotoneFunction, s, t):
    """(s + 1) tilde(t) + (t + 1) tilde(s) - 2 tilde(s) tilde(t), elementwise.

    Equals ((s + 1) - tilde(s)) tilde(t) + ((t + 1) - tilde(t)) tilde(s),
    a sum of products of nonnegative factors for any valid catalog entry.
    """
    fs = np.asarray(tilde_transform(f, s), dtype=float)
    ft = np.asarray(tilde_transform(f, t), dtype=float)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return (s + 1.0) * ft + (t + 1.0) * fs - 2.0 * fs * ft


def h_from_measure(mu: AtomicPairMeasure, f: MonotoneFunction) -> float:
    """Integrate the pair integrand against an already-built measure."""
    s = mu.values[:, None]
    t = mu.values[None, :]
    return 0.25 * float(np.sum(pair_integrand(f, s, t) * mu.weights))


def h_value(m: GnsModel, f: MonotoneFunction, xi, eta) -> float:
    """The atomic double integral H for two vectors of the representation."""
    return h_from_measure(build_mu(m, xi, eta), f)


@dataclass(frozen=True)
class GnsAuditReport:
    """Outcome of the G = H identity audit for one instance."""

    g_value: float
    h_value: float
    residual: float
    mu_min_atom: float
    gform_min: float
    flags: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "G": self.g_value,
            "H": self.h_value,
            "residual": self.residual,
            "mu_min_atom": self.mu_min_atom,
            "gform_min": self.gform_min,
            "flags": list(self.flags),
        }


def audit_G_equals_H(m: GnsModel, f: MonotoneFunction, a, b) -> GnsAuditReport:
    """Check the trace-route inequality gap against its spectral double integral.

    G is assembled from the qinfo scalars; H integrates the pair measure of
    the centered observables. |G - H| beyond G_H_RTOL * max(1, |G|) is
    flagged, as are negative mu atoms beyond round-off slack and a negative
    quadratic form G^f on either centered observable.
    """
    rho = m.rho
    var_a = variance(rho, a)
    var_b = variance(rho, b)
    cov_ab = covariance(rho, a, b)
    info_a = f_information(rho, f, a)
    info_b = f_information(rho, f, b)
    corr_ab = f_correlation(rho, f, a, b)
    g = var_a * var_b - cov_ab**2 - info_a * info_b + corr_ab**2

    a0 = centered(rho, a)
    b0 = centered(rho, b)
    mu = build_mu(m, a0, b0)
    h = h_from_measure(mu, f)
    residual = abs(g - h)

    flags: list[str] = []
    if residual > G_H_RTOL * max(1.0, abs(g)):
        flags.append("g_h_mismatch")
    mass = max(mu.mass, 0.0)
    if mu.min_weight < -MU_ATOM_SLACK * mass:
        flags.append("mu_negative_atom")

    gform_values = []
    for obs in (a0, b0):
        gf = form_G(m, f, obs, obs).real
        e1 = form_E1(m, obs, obs).real
        gform_values.append(gf)
        if gf < -GFORM_SLACK * max(e1, 0.0):
            flags.append("gform_negative")
    gform_min = min(gform_values)

    return GnsAuditReport(
        g_value=g,
        h_value=h,
        residual=residual,
        mu_min_atom=mu.min_weight,
        gform_min=gform_min,
        flags=tuple(flags),
    )
