"""First-order dressed states: eigenvalues linear in the detunings and the
corresponding block coefficients, including the exact resonant dark state."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import EigenTriple, block_matrix
from .params import SystemParams, as_block

BRANCHES = ("+", "-", "0")


@dataclass(frozen=True)
class RabiPair:
    omega1_rabi: float
    omega2_rabi: float
    omega_total: float

    @classmethod
    def from_rabi(cls, omega1_rabi: float, omega2_rabi: float) -> "RabiPair":
        return cls(omega1_rabi, omega2_rabi, math.hypot(omega1_rabi, omega2_rabi))

    @property
    def ratio_sq(self) -> float:
        """``W1^2 / W2^2``, the expansion parameter of the nonlinear series."""
        return (self.omega1_rabi / self.omega2_rabi) ** 2


@dataclass(frozen=True)
class DressedTriple:
    branch: str
    a: float
    b: float
    c: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])


def rabi_pair(g1: float, g2: float, n1: float, n2: float) -> RabiPair:
    """Rabi frequencies ``2 g1 sqrt(n1)`` and ``2 g2 sqrt(n2 + 1)``.

    Photon numbers may be non-integer (mean photon numbers) and ``n1 = 0``
    is allowed for limit analysis.
    """
    return RabiPair.from_rabi(2.0 * g1 * math.sqrt(n1), 2.0 * g2 * math.sqrt(n2 + 1.0))


def rabi_frequencies(params: SystemParams, block) -> RabiPair:
    block = as_block(block)
    return rabi_pair(params.g1, params.g2, block.n1, block.n2)


def _first_order_energies(w1, w2, d1, d2):
    w_sq = w1**2 + w2**2
    w = np.sqrt(w_sq)
    shift = (w1**2 + 2.0 * w2**2) / (2.0 * w_sq) * d1 - w2**2 / (2.0 * w_sq) * d2
    return shift + w / 2.0, shift - w / 2.0, w1**2 / w_sq * (d1 - d2)


def perturbative_eigenvalues(params: SystemParams, block) -> EigenTriple:
    r = rabi_frequencies(params, block)
    ep, em, e0 = _first_order_energies(r.omega1_rabi, r.omega2_rabi, params.delta1, params.delta2)
    return EigenTriple(e_plus=float(ep), e_minus=float(em), e_zero=float(e0))


def dark_branch(g1, g2, n1, n2, delta1, delta2):
    """Vectorised dark-branch data ``(a0, b0, c0, E0)`` over photon-number arrays.

    ``n1 = 0`` gives the uncoupled state: ``a0 = -1``, ``b0 = c0 = E0 = 0``.
    """
    w1 = 2.0 * g1 * np.sqrt(np.asarray(n1, dtype=float))
    w2 = 2.0 * g2 * np.sqrt(np.asarray(n2, dtype=float) + 1.0)
    w = np.hypot(w1, w2)
    d = delta1 - delta2
    a0 = -w2 / w
    b0 = 2.0 * w1 * w2 * d / w**3
    c0 = w1 / w
    e0 = (w1 / w) ** 2 * d
    return a0, b0, c0, e0


def dressed_coefficients(params: SystemParams, block, branch: str, printed: bool = False) -> DressedTriple:
    """Block coefficients ``(a, b, c)`` of one dressed state to first order in the detunings.

    The ``b`` coefficient of the bright branches carries ``W2^2 d2 / (2 W^3)``.
    With ``printed=False`` (default) the ``d2`` term of ``c`` uses
    ``4 W1^2 + W2^2``, the value first-order perturbation theory gives;
    ``printed=True`` reproduces the ``4 W1^2 + 3 W2^2`` typeset form, which
    leaves an O(delta) residual whenever ``delta2 != 0``.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    r = rabi_frequencies(params, block)
    w1, w2, w = r.omega1_rabi, r.omega2_rabi, r.omega_total
    d1, d2 = params.delta1, params.delta2
    if branch == "0":
        a0, b0, c0, _ = dark_branch(params.g1, params.g2, as_block(block).n1, as_block(block).n2, d1, d2)
        return DressedTriple("0", float(a0), float(b0), float(c0))
    s = 1.0 if branch == "+" else -1.0
    w3 = 2.0 * w**3
    c_d2 = (4.0 * w1**2 + (3.0 if printed else 1.0) * w2**2) / w3
    a = -w1 / (math.sqrt(2.0) * w) * (1.0 - s * (w1**2 + 4.0 * w2**2) / w3 * d1 + s * 3.0 * w2**2 / w3 * d2)
    b = s / math.sqrt(2.0) * (1.0 + s * w1**2 / w3 * d1 + s * w2**2 / w3 * d2)
    c = -w2 / (math.sqrt(2.0) * w) * (1.0 + s * 3.0 * w1**2 / w3 * d1 - s * c_d2 * d2)
    return DressedTriple(branch, a, b, c)


def eigen_residual(params: SystemParams, block, branch: str, printed: bool = False) -> float:
    """``||H v - E v||`` for a first-order dressed state and its first-order energy."""
    h = block_matrix(params, block)
    v = dressed_coefficients(params, block, branch, printed=printed).as_array()
    e = perturbative_eigenvalues(params, block)[branch]
    return float(np.linalg.norm(h @ v - e * v))


def dark_state_residual(params: SystemParams, block) -> float:
    """Residual of the dark state as an eigenvector of its block, rad/s."""
    return eigen_residual(params, block, "0")


def gram_defect(params: SystemParams, block, printed: bool = False) -> float:
    """Max deviation of the three first-order triples from an orthonormal set."""
    v = np.array([dressed_coefficients(params, block, br, printed=printed).as_array() for br in BRANCHES])
    return float(np.max(np.abs(v @ v.T - np.eye(3))))
