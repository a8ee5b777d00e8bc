"""Brute-force references that share no code with the closed-form results.

Dense (Jacobi) diagonalisation, the truncated Fock-space Hamiltonian built
term by term, ramped Schrodinger evolution with fixed-step RK4, partial
traces and a conditioned polynomial least-squares fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy import sparse

from ._validation import ValidationError, check_count, check_hermitian
from .params import SystemParams

DIMENSION_CAP = 20_000
NORM_DRIFT_TOL = 1e-6
COND_LIMIT = 1e10


# ---------------------------------------------------------------- eigen oracle

def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    # unitary phase makes the (p, q) element real, then a real Givens rotation
    phase = apq / mag
    theta = 0.5 * math.atan2(2.0 * mag, (a[q, q] - a[p, p]).real)
    c, s = math.cos(theta), math.sin(theta)
    rot = np.eye(a.shape[0], dtype=complex)
    rot[p, p] = c
    rot[q, q] = c
    rot[p, q] = s * phase
    rot[q, p] = -s * phase.conjugate()
    a[:] = rot.conj().T @ a @ rot
    a[p, q] = a[q, p] = 0.0
    v[:] = v @ rot


def dense_block_eigen(matrix, tol: float = 1e-15, max_sweeps: int = 50):
    """Eigenvalues (ascending) and eigenvectors of a small Hermitian matrix.

    Cyclic complex Jacobi iteration; columns of the returned vector matrix
    are the eigenvectors.
    """
    a = check_hermitian(np.array(matrix, dtype=complex)).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[i, j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(w)
    vecs = v[:, order]
    if np.all(np.abs(vecs.imag) == 0.0):
        vecs = vecs.real
    return w[order], vecs


def eigen_residual(matrix, values, vectors) -> float:
    m = np.asarray(matrix)
    return float(np.max(np.linalg.norm(m @ vectors - vectors * values, axis=0)))


# ----------------------------------------------------- truncated Hamiltonian

@dataclass
class TruncatedHamiltonian:
    """Hamiltonian (rad/s) on ``|m, k1, k2>`` with ``k1 <= n1max``, ``k2 <= n2max``.

    Stored as three sparse parts so couplings can be ramped without
    reassembly: ``H = diagonal + s1 * probe + s2 * coupling``.
    """

    dims: tuple[int, int, int]
    diagonal: sparse.csr_matrix
    probe: sparse.csr_matrix
    coupling: sparse.csr_matrix
    scale_g1: float = 1.0
    scale_g2: float = 1.0

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    def index(self, m: int, k1: int, k2: int) -> int:
        return int(np.ravel_multi_index((m, k1, k2), self.dims))

    def state(self, flat_index: int) -> tuple[int, int, int]:
        return tuple(int(i) for i in np.unravel_index(flat_index, self.dims))

    def matrix(self, scale_g1: float | None = None, scale_g2: float | None = None) -> sparse.csr_matrix:
        s1 = self.scale_g1 if scale_g1 is None else scale_g1
        s2 = self.scale_g2 if scale_g2 is None else scale_g2
        return (self.diagonal + s1 * self.probe + s2 * self.coupling).tocsr()

    def dense(self) -> np.ndarray:
        return self.matrix().toarray()


def build_truncated_hamiltonian(params: SystemParams, n1max: int, n2max: int, scale_g1: float = 1.0,
                                scale_g2: float = 1.0, cap: int = DIMENSION_CAP) -> TruncatedHamiltonian:
    """Assemble the rotating-wave Hamiltonian on the truncated product basis.

    ``d1 |2><2| + (d1 - d2) |3><3| - (g1 a1 |2><1| + g2 a2 |2><3| + h.c.)``.
    """
    n1max = check_count("n1max", n1max)
    n2max = check_count("n2max", n2max)
    for name, s in (("scale_g1", scale_g1), ("scale_g2", scale_g2)):
        if not 0.0 <= s <= 1.0:
            raise ValidationError(name, f"must lie in [0, 1], got {s}")
    dims = (3, n1max + 1, n2max + 1)
    size = 3 * (n1max + 1) * (n2max + 1)
    if size > cap:
        raise ValidationError("truncation", f"dimension {size} exceeds cap {cap}")

    k1, k2 = np.meshgrid(np.arange(n1max + 1), np.arange(n2max + 1), indexing="ij")
    k1, k2 = k1.ravel(), k2.ravel()
    idx = lambda m, a, b: np.ravel_multi_index((np.full_like(a, m), a, b), dims)  # noqa: E731

    diag = np.zeros(size)
    diag[idx(1, k1, k2)] = params.delta1
    diag[idx(2, k1, k2)] = params.delta1 - params.delta2

    # a1 |2><1| : |1, k1, k2> -> sqrt(k1) |2, k1-1, k2>
    sel = k1 >= 1
    rows = idx(1, k1[sel] - 1, k2[sel])
    cols = idx(0, k1[sel], k2[sel])
    vals = -params.g1 * np.sqrt(k1[sel])
    probe = sparse.coo_matrix((vals, (rows, cols)), shape=(size, size))
    probe = (probe + probe.T).tocsr()

    # a2 |2><3| : |3, k1, k2> -> sqrt(k2) |2, k1, k2-1>
    sel = k2 >= 1
    rows = idx(1, k1[sel], k2[sel] - 1)
    cols = idx(2, k1[sel], k2[sel])
    vals = -params.g2 * np.sqrt(k2[sel])
    coupling = sparse.coo_matrix((vals, (rows, cols)), shape=(size, size))
    coupling = (coupling + coupling.T).tocsr()

    return TruncatedHamiltonian(dims, sparse.diags(diag).tocsr(), probe, coupling, scale_g1, scale_g2)


def excitation_numbers(dims: tuple[int, int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Conserved probe and coupling quanta of every basis state.

    ``|1,k1,k2> -> (k1, k2)``, ``|2,k1,k2> -> (k1+1, k2)``, ``|3,k1,k2> -> (k1+1, k2-1)``.
    """
    m, k1, k2 = np.meshgrid(*(np.arange(d) for d in dims), indexing="ij")
    n1 = k1 + (m >= 1)
    n2 = k2 - (m == 2)
    return n1.ravel().astype(float), n2.ravel().astype(float)


def to_schrodinger_picture(psi: np.ndarray, params: SystemParams, dims, t: float) -> np.ndarray:
    """Attach the free-evolution phases ``exp(-i (w1 N1 + w2 N2) t)``."""
    n1, n2 = excitation_numbers(dims)
    return psi * np.exp(-1j * (params.omega1 * n1 + params.omega2 * n2) * t)


def partial_trace_field(psi) -> np.ndarray:
    """Atomic reduced density matrix of a pure state ``psi[m, ...]``."""
    a = np.asarray(psi, dtype=complex).reshape(3, -1)
    return a @ a.conj().T


def embed(psi: np.ndarray, dims: tuple[int, int, int]) -> np.ndarray:
    """Zero-pad an atom-field array ``psi[m, k1, k2]`` into a larger truncation."""
    out = np.zeros(dims, dtype=complex)
    if any(s > d for s, d in zip(psi.shape, dims)):
        raise ValidationError("dims", f"state of shape {psi.shape} does not fit in {dims}")
    out[: psi.shape[0], : psi.shape[1], : psi.shape[2]] = psi
    return out


# --------------------------------------------------------------- ramping

def smoothstep(s):
    """C2 quintic ``10 s^3 - 15 s^4 + 6 s^5`` clipped to [0, 1]."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)


@dataclass(frozen=True)
class RampProfile:
    """Quintic turn-on of each coupling over ``rise`` seconds."""

    t_on_g2: float
    t_on_g1: float
    rise: float
    T_total: float

    @classmethod
    def sequential(cls, T_total: float, ordering: str = "correct") -> "RampProfile":
        """First half ramps one coupling, second half the other.

        ``"correct"`` switches the coupling field on first.
        """
        half = 0.5 * T_total
        if ordering == "correct":
            return cls(t_on_g2=0.0, t_on_g1=half, rise=half, T_total=T_total)
        if ordering == "reversed":
            return cls(t_on_g2=half, t_on_g1=0.0, rise=half, T_total=T_total)
        raise ValidationError("ordering", f"expected 'correct' or 'reversed', got {ordering!r}")

    def scales(self, t: float) -> tuple[float, float]:
        s1 = float(smoothstep((t - self.t_on_g1) / self.rise))
        s2 = float(smoothstep((t - self.t_on_g2) / self.rise))
        return s1, s2


@dataclass
class RampResult:
    psi: np.ndarray  # interaction picture, shape dims
    psi_schrodinger: np.ndarray
    dims: tuple[int, int, int]
    steps: int
    dt: float
    norm_drift: float
    fidelity: float | None


def spectral_bound(params: SystemParams, n1max: int, n2max: int) -> float:
    return 2.0 * math.sqrt(params.g1**2 * n1max + params.g2**2 * (n2max + 1)) + abs(params.delta1) + abs(
        params.delta1 - params.delta2
    )


def fidelity(target: np.ndarray, psi: np.ndarray) -> float:
    """Normalised overlap ``|<target|psi>|^2 / (<target|target> <psi|psi>)``."""
    t = np.asarray(target).ravel()
    p = np.asarray(psi).ravel()
    num = abs(np.vdot(t, p)) ** 2
    return float(num / (np.vdot(t, t).real * np.vdot(p, p).real))


def evolve_ramped(params: SystemParams, field_amplitudes, ramp: RampProfile, dt: float | None = None,
                  n1max: int | None = None, n2max: int | None = None, target=None) -> RampResult:
    """Integrate ``i dpsi/dt = H(t) psi`` from ``|1> (x) field`` with fixed-step RK4.

    ``field_amplitudes[k1, k2]`` is the initial photon state. The default
    truncation leaves one spare coupling photon so every populated block is
    complete. If ``target`` (Schrodinger picture, any shape that embeds in
    the truncation) is given, the normalised fidelity against it is
    returned.
    """
    c = np.asarray(field_amplitudes, dtype=complex)
    n1max = c.shape[0] - 1 if n1max is None else n1max
    n2max = c.shape[1] if n2max is None else n2max
    ham = build_truncated_hamiltonian(params, n1max, n2max)
    bound = spectral_bound(params, n1max, n2max)
    if dt is None:
        dt = 0.04 / bound
    if bound * dt >= 0.05:
        raise ValidationError("dt", f"step too large: bound*dt = {bound * dt:.3g} >= 0.05")
    steps = max(1, int(math.ceil(ramp.T_total / dt)))
    h = ramp.T_total / steps

    psi0 = np.zeros(ham.dims, dtype=complex)
    psi0[0] = embed(c[None], (1, n1max + 1, n2max + 1))[0]
    psi = psi0.ravel()
    norm0 = np.vdot(psi, psi).real
    hd, hp, hc = ham.diagonal, ham.probe, ham.coupling

    def rhs(t, y):
        s1, s2 = ramp.scales(t)
        out = hd @ y
        if s1:
            out += s1 * (hp @ y)
        if s2:
            out += s2 * (hc @ y)
        return -1j * out

    t = 0.0
    for i in range(steps):
        t = i * h
        k1 = rhs(t, psi)
        k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2)
        k4 = rhs(t + h, psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    drift = abs(np.vdot(psi, psi).real - norm0)
    if drift > NORM_DRIFT_TOL:
        raise ArithmeticError(f"norm drift {drift:.2e} exceeds {NORM_DRIFT_TOL}; reduce dt")
    psi_s = to_schrodinger_picture(psi, params, ham.dims, ramp.T_total)
    fid = None
    if target is not None:
        fid = fidelity(embed(np.asarray(target, dtype=complex), ham.dims), psi_s)
    return RampResult(psi.reshape(ham.dims), psi_s.reshape(ham.dims), ham.dims, steps, h, drift, fid)


# ------------------------------------------------------------ polynomial fit

@dataclass(frozen=True)
class PolyFit:
    coefficients: np.ndarray  # ascending powers, original units
    condition_number: float
    ill_conditioned: bool
    residual_rms: float


def polynomial_fit(xs, ys, degree: int, cond_limit: float = COND_LIMIT) -> PolyFit:
    """Least-squares polynomial on abscissae mapped to [-1, 1].

    Raises when the design matrix condition number exceeds ``cond_limit``.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if x.size < degree + 2:
        raise ValueError(f"need at least degree + 2 = {degree + 2} points, got {x.size}")
    if np.unique(x).size < degree + 1:
        raise ValueError("abscissae are degenerate (too few distinct values)")
    lo, hi = float(x.min()), float(x.max())
    u = (2.0 * x - (lo + hi)) / (hi - lo)
    design = np.vander(u, degree + 1, increasing=True)
    cond = float(np.linalg.cond(design))
    if cond > cond_limit:
        raise ArithmeticError(f"condition number {cond:.2e} > {cond_limit:.0e}: shrink fit interval")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    poly = Polynomial(coef, domain=[lo, hi], window=[-1.0, 1.0]).convert()
    full = np.zeros(degree + 1)
    full[: poly.coef.size] = poly.coef
    resid = y - design @ coef
    return PolyFit(full, cond, cond > cond_limit, float(np.sqrt(np.mean(resid**2))))
