"""Adiabatically prepared atom-field state, reduced atomic density matrix and
optical coherences for coherent and general (nonclassical) photon fields."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.special import gammaln

from ._validation import ValidationError, check_amplitudes, check_count, check_finite, check_positive
from .dressed import dark_branch
from .params import SystemParams

TAIL_WARN = 1e-6
NORM_TOL = 1e-6


def default_truncation(nbar: float) -> int:
    """Photon-number cutoff ``ceil(nbar + 10 sqrt(nbar + 1))``; Poisson tail < 1e-12."""
    return int(math.ceil(nbar + 10.0 * math.sqrt(nbar + 1.0)))


def csum(values) -> complex:
    """Compensated sum in C (row-major) order, i.e. n1 ascending then n2 ascending."""
    z = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(z.real), math.fsum(z.imag))


def _coherent_1d(amp: float, trunc: int) -> np.ndarray:
    n = np.arange(trunc + 1)
    if amp == 0.0:
        out = np.zeros(trunc + 1)
        out[0] = 1.0
        return out
    log_mag = -0.5 * amp * amp + n * math.log(abs(amp)) - 0.5 * gammaln(n + 1)
    sign = np.where((amp < 0) & (n % 2 == 1), -1.0, 1.0)
    return sign * np.exp(log_mag)


@dataclass
class FieldSpec:
    """Initial two-mode photon state as a truncated joint amplitude matrix.

    ``amplitudes[n1, n2]`` is the coefficient of ``|n1, n2>``. ``kind`` is
    ``"coherent"``, ``"product"`` or ``"joint"``; product fields also keep
    their per-mode arrays in ``c1``/``c2``.
    """

    kind: str
    amplitudes: np.ndarray
    c1: np.ndarray | None = None
    c2: np.ndarray | None = None
    alpha: float | None = None
    beta: float | None = None
    tail_warning: bool = False

    @property
    def trunc1(self) -> int:
        return self.amplitudes.shape[0] - 1

    @property
    def trunc2(self) -> int:
        return self.amplitudes.shape[1] - 1

    @property
    def norm_sq(self) -> float:
        return math.fsum((np.abs(self.amplitudes) ** 2).ravel())

    @property
    def tail_mass(self) -> float:
        """Probability lost to truncation, ``1 - sum |C|^2`` (clipped at 0)."""
        return max(0.0, 1.0 - self.norm_sq)


def coherent_amplitudes(alpha: float, beta: float, trunc1: int | None = None, trunc2: int | None = None) -> FieldSpec:
    """Coherent state ``|alpha, beta>`` with real amplitudes, evaluated in log space."""
    alpha = check_finite("alpha", alpha)
    beta = check_finite("beta", beta)
    trunc1 = default_truncation(alpha * alpha) if trunc1 is None else check_count("trunc1", trunc1)
    trunc2 = default_truncation(beta * beta) if trunc2 is None else check_count("trunc2", trunc2)
    c1 = _coherent_1d(alpha, trunc1)
    c2 = _coherent_1d(beta, trunc2)
    spec = FieldSpec("coherent", np.outer(c1, c2).astype(complex), c1=c1.astype(complex),
                     c2=c2.astype(complex), alpha=alpha, beta=beta)
    if spec.tail_mass > TAIL_WARN:
        spec.tail_warning = True
        warnings.warn(f"truncation tail {spec.tail_mass:.2e} exceeds {TAIL_WARN:g}", RuntimeWarning, stacklevel=2)
    return spec


def product_field(c1, c2, tol: float = NORM_TOL) -> FieldSpec:
    """Uncorrelated field ``sum C(n1) C(n2) |n1, n2>`` from separately normalised arrays."""
    c1 = check_amplitudes("probe", c1)
    c2 = check_amplitudes("coupling", c2)
    for name, arr in (("probe", c1), ("coupling", c2)):
        nrm = math.fsum(np.abs(arr) ** 2)
        if abs(nrm - 1.0) > tol:
            raise ValidationError(name, f"amplitudes not normalised (sum |c|^2 = {nrm:.9g})")
    return FieldSpec("product", np.outer(c1, c2), c1=c1, c2=c2)


def fock_field(n1: int, n2: int) -> FieldSpec:
    n1 = check_count("n1", n1)
    n2 = check_count("n2", n2)
    c1 = np.zeros(n1 + 1, dtype=complex)
    c2 = np.zeros(n2 + 1, dtype=complex)
    c1[n1] = 1.0
    c2[n2] = 1.0
    return FieldSpec("product", np.outer(c1, c2), c1=c1, c2=c2)


def joint_field(amplitudes, tol: float = NORM_TOL) -> FieldSpec:
    c = np.asarray(amplitudes, dtype=complex)
    if c.ndim != 2 or not np.all(np.isfinite(c)):
        raise ValidationError("amplitudes", "expected a finite 2-d amplitude matrix")
    nrm = math.fsum((np.abs(c) ** 2).ravel())
    if abs(nrm - 1.0) > tol:
        raise ValidationError("amplitudes", f"not normalised (sum |C|^2 = {nrm:.9g})")
    return FieldSpec("joint", c)


@dataclass(frozen=True)
class WeightDistribution:
    weights: np.ndarray
    nbar_alpha: float
    nbar_beta: float

    @property
    def total(self) -> float:
        return math.fsum(self.weights.ravel())

    @property
    def peak(self) -> tuple[int, int]:
        i, j = np.unravel_index(np.argmax(self.weights), self.weights.shape)
        return int(i), int(j)


def poisson_weights(nbar_alpha: float, nbar_beta: float, trunc1: int | None = None,
                    trunc2: int | None = None) -> WeightDistribution:
    """Product of Poisson distributions ``P(n1, n2)`` (the ``|C|^2`` of a coherent field)."""
    trunc1 = default_truncation(nbar_alpha) if trunc1 is None else trunc1
    trunc2 = default_truncation(nbar_beta) if trunc2 is None else trunc2

    def log_poisson(n, m):
        if m == 0:
            return np.where(n == 0, 0.0, -np.inf)
        return n * math.log(m) - m - gammaln(n + 1)

    n1 = np.arange(trunc1 + 1)[:, None]
    n2 = np.arange(trunc2 + 1)[None, :]
    w = np.exp(log_poisson(n1, nbar_alpha) + log_poisson(n2, nbar_beta))
    return WeightDistribution(w, float(nbar_alpha), float(nbar_beta))


@dataclass(frozen=True)
class DCoefficients:
    """``d1, d2, d3`` indexed by the block anchor ``(n1, n2)``."""

    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray


def _grid(field: FieldSpec):
    n1 = np.arange(field.trunc1 + 1, dtype=float)[:, None]
    n2 = np.arange(field.trunc2 + 1, dtype=float)[None, :]
    return n1, n2


def dressed_energy(params: SystemParams, n1, n2) -> np.ndarray:
    """Schrodinger-picture dark-branch energy ``w1 n1 + w2 n2 + E0``; ground offset set to 0."""
    _, _, _, e0 = dark_branch(params.g1, params.g2, n1, n2, params.delta1, params.delta2)
    return params.omega1 * np.asarray(n1, dtype=float) + params.omega2 * np.asarray(n2, dtype=float) + e0


@dataclass
class AdiabaticState:
    """``sum C(n1,n2) exp(-i e(n1,n2) t) |dark(n1,n2)>`` on a truncated grid."""

    params: SystemParams
    field: FieldSpec
    t: float
    weights: np.ndarray = dc_field(repr=False)  # complex C * phase per anchor
    a0: np.ndarray = dc_field(repr=False)
    b0: np.ndarray = dc_field(repr=False)
    c0: np.ndarray = dc_field(repr=False)

    def d_coefficients(self) -> DCoefficients:
        return DCoefficients(self.a0 * self.weights, self.b0 * self.weights, self.c0 * self.weights)

    def dense(self) -> np.ndarray:
        """State as an array ``psi[m, k1, k2]`` over atom level ``m`` and photon numbers.

        Shape is ``(3, trunc1 + 1, trunc2 + 2)``; the extra coupling photon
        slot holds ``|3, n1-1, n2+1>``.
        """
        d = self.d_coefficients()
        t1, t2 = self.field.trunc1, self.field.trunc2
        psi = np.zeros((3, t1 + 1, t2 + 2), dtype=complex)
        psi[0, :, : t2 + 1] = d.d1
        psi[1, :t1, : t2 + 1] = d.d2[1:, :]
        psi[2, :t1, 1:] = d.d3[1:, :]
        return psi

    def block_amplitudes(self, n1: int, n2: int) -> np.ndarray:
        d = self.d_coefficients()
        return np.array([d.d1[n1, n2], d.d2[n1, n2], d.d3[n1, n2]])

    def norm(self) -> float:
        return math.sqrt(math.fsum((np.abs(self.dense()) ** 2).ravel()))


def adiabatic_state(params: SystemParams, field: FieldSpec, t: float = 0.0) -> AdiabaticState:
    t = check_finite("t", t)
    n1, n2 = _grid(field)
    a0, b0, c0, _ = dark_branch(params.g1, params.g2, n1, n2, params.delta1, params.delta2)
    phase = np.exp(-1j * dressed_energy(params, n1, n2) * t)
    return AdiabaticState(params, field, t, weights=field.amplitudes * phase, a0=a0, b0=b0, c0=c0)


@dataclass(frozen=True)
class AtomDensityMatrix:
    matrix: np.ndarray
    tail_mass: float

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    @property
    def upper_population(self) -> float:
        return float(np.real(self.matrix[1, 1]))

    def __getitem__(self, idx):
        return self.matrix[idx]


def _pad_col(a: np.ndarray) -> np.ndarray:
    return np.pad(a, ((0, 0), (0, 1)))


def _shift_rows_up(a: np.ndarray) -> np.ndarray:
    # out[n1, n2] = a[n1 + 1, n2]
    out = np.zeros_like(a)
    out[:-1, :] = a[1:, :]
    return out


def _shift_up_right(a: np.ndarray) -> np.ndarray:
    # out[n1, n2] = a[n1 + 1, n2 - 1]
    out = np.zeros_like(a)
    out[:-1, 1:] = a[1:, :-1]
    return out


def reduced_density_matrix(params: SystemParams, field: FieldSpec, t: float = 0.0) -> AtomDensityMatrix:
    """Atomic density matrix of the adiabatic state, assembled from the D coefficients.

    Each entry is one compensated sum over ``(n1, n2)`` in a fixed order; the
    result is bit-reproducible. The trace is ``1 - tail - sum |C|^2 b0^2``
    since the first-order dark state is normalised only to O(delta).
    """
    d = adiabatic_state(params, field, t).d_coefficients()
    # one extra coupling-photon column holds |3, n1-1, trunc2+1>
    D1 = _pad_col(d.d1)
    D2 = _shift_rows_up(_pad_col(d.d2))
    D3 = _shift_up_right(_pad_col(d.d3))
    rho = np.empty((3, 3), dtype=complex)
    rho[0, 0] = csum(np.abs(D1) ** 2)
    rho[1, 1] = csum(np.abs(D2) ** 2)
    rho[2, 2] = csum(np.abs(D3) ** 2)
    rho[0, 1] = csum(D1 * D2.conj())
    rho[0, 2] = csum(D1 * D3.conj())
    rho[1, 2] = csum(D2 * D3.conj())
    for i, j in ((1, 0), (2, 0), (2, 1)):
        rho[i, j] = rho[j, i].conjugate()
    return AtomDensityMatrix(rho, field.tail_mass)


def coherences_timeseries(params: SystemParams, alpha: float, beta: float, t=0.0,
                          trunc1: int | None = None, trunc2: int | None = None):
    """Probe and coupling coherences ``(rho21(t), rho23(t))`` of a coherent field.

    Evaluates the two photon-number double sums term by term with the
    Poisson weights, including the ``alpha / sqrt(n1 + 1)`` and
    ``sqrt(n2) alpha^2 / ((n1 + 1) beta)`` prefactors. The phase of the
    coupling sum is ``e(n1+1, n2-1) - e(n1+1, n2)``. ``t`` may be a scalar
    or a 1-d array of times.
    """
    alpha = check_finite("alpha", alpha)
    beta = check_finite("beta", beta)
    if beta == 0.0:
        raise ValidationError("beta", "coupling vacuum: the rho23 sum is singular at beta = 0")
    nbar_a, nbar_b = alpha * alpha, beta * beta
    w = poisson_weights(nbar_a, nbar_b, trunc1, trunc2).weights
    n1 = np.arange(w.shape[0], dtype=float)[:, None]
    n2 = np.arange(w.shape[1], dtype=float)[None, :]
    g1, g2, d1, d2 = params.g1, params.g2, params.delta1, params.delta2

    a0, _, _, _ = dark_branch(g1, g2, n1, n2, d1, d2)
    _, b0_up, _, _ = dark_branch(g1, g2, n1 + 1, n2, d1, d2)
    _, _, c0_diag, _ = dark_branch(g1, g2, n1 + 1, n2 - 1, d1, d2)
    e = dressed_energy(params, n1, n2)
    e_up = dressed_energy(params, n1 + 1, n2)
    e_diag = dressed_energy(params, n1 + 1, n2 - 1)

    amp21 = w * a0 * b0_up * alpha / np.sqrt(n1 + 1)
    amp23 = w * b0_up * c0_diag * np.sqrt(n2) * alpha * alpha / ((n1 + 1) * beta)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    r21 = np.array([csum(amp21 * np.exp(1j * (e - e_up) * tk)) for tk in ts])
    r23 = np.array([csum(amp23 * np.exp(1j * (e_diag - e_up) * tk)) for tk in ts])
    if np.ndim(t) == 0:
        return complex(r21[0]), complex(r23[0])
    return r21, r23


def large_n_coherences(params: SystemParams, nbar_alpha: float, nbar_beta: float) -> tuple[float, float]:
    """Fourier weights of ``rho21`` at ``w1`` and ``rho23`` at ``w2`` in the large-n limit.

    Returns ``(a0 b0, c0 b0)`` evaluated at the mean photon numbers.
    """
    nbar_alpha = check_positive("nbar_alpha", nbar_alpha)
    nbar_beta = check_positive("nbar_beta", nbar_beta)
    a0, b0, c0, _ = dark_branch(params.g1, params.g2, nbar_alpha, nbar_beta, params.delta1, params.delta2)
    return float(a0 * b0), float(c0 * b0)


def rabi_spread_estimate(nbar: float) -> tuple[float, float]:
    """Relative photon-number spread ``1/sqrt(nbar)`` and second-order scale ``1/(8 nbar)``."""
    nbar = check_positive("nbar", nbar)
    return 1.0 / math.sqrt(nbar), 1.0 / (8.0 * nbar)


def nonclassical_coherence(params: SystemParams, field: FieldSpec) -> complex:
    """Probe-frequency coherence for an uncorrelated (product) field.

    ``sum C(n1+1) C*(n1) |C(n2)|^2 a0(n1,n2) b0(n1,n2)``. Probe states without
    adjacent photon-number coherence give exactly zero.
    """
    if field.c1 is None or field.c2 is None:
        raise ValidationError("field", "nonclassical coherence needs a product-form field")
    c1, c2 = field.c1, field.c2
    if c1.size < 2:
        return 0j
    adjacent = c1[1:] * c1[:-1].conj()
    n1 = np.arange(c1.size - 1, dtype=float)[:, None]
    n2 = np.arange(c2.size, dtype=float)[None, :]
    a0, b0, _, _ = dark_branch(params.g1, params.g2, n1, n2, params.delta1, params.delta2)
    terms = adjacent[:, None] * (np.abs(c2) ** 2)[None, :] * a0 * b0
    return csum(terms)
