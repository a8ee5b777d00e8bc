"""Invariant 3x3 blocks of the interaction-picture Hamiltonian and their
closed-form (cubic) spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import FockBlock, SystemParams, as_block

# Relative width of the q^2/4 + p^3/27 = 0 boundary band.
DEGENERATE_RTOL = 1e-14


class ComplexRootError(ArithmeticError):
    """The block's cubic has a complex root pair (impossible for Hermitian input)."""


@dataclass(frozen=True)
class CubicIntermediates:
    """Coefficients of ``lam^3 + A lam^2 + B lam + Ccoef`` and its depressed form."""

    A: float
    B: float
    Ccoef: float
    p: float
    q: float

    @property
    def discriminant(self) -> float:
        """``q^2/4 + p^3/27``; negative means three distinct real roots."""
        return self.q**2 / 4.0 + self.p**3 / 27.0


@dataclass(frozen=True)
class EigenTriple:
    e_plus: float
    e_minus: float
    e_zero: float

    def as_array(self) -> np.ndarray:
        """Values in branch order ``(+, -, 0)``."""
        return np.array([self.e_plus, self.e_minus, self.e_zero])

    def sorted(self) -> np.ndarray:
        return np.sort(self.as_array())

    def total(self) -> float:
        return math.fsum((self.e_plus, self.e_minus, self.e_zero))

    def __getitem__(self, branch: str) -> float:
        return {"+": self.e_plus, "-": self.e_minus, "0": self.e_zero}[branch]


def _couplings(params: SystemParams, block: FockBlock) -> tuple[float, float]:
    return params.g1 * math.sqrt(block.n1), params.g2 * math.sqrt(block.n2 + 1)


def block_matrix(params: SystemParams, block) -> np.ndarray:
    """Hamiltonian restricted to the block basis ``|1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>``.

    Returned in rad/s (``H / hbar``).
    """
    block = as_block(block)
    x, y = _couplings(params, block)
    d1 = params.delta1
    return np.array(
        [
            [0.0, -x, 0.0],
            [-x, d1, -y],
            [0.0, -y, d1 - params.delta2],
        ]
    )


def cubic_intermediates(params: SystemParams, block) -> CubicIntermediates:
    block = as_block(block)
    d1, d2 = params.delta1, params.delta2
    x2 = params.g1**2 * block.n1
    y2 = params.g2**2 * (block.n2 + 1)
    A = -2.0 * d1 + d2
    B = d1 * (d1 - d2) - y2 - x2
    C = x2 * (d1 - d2)
    p = B - A * A / 3.0
    q = C - A * B / 3.0 + 2.0 * A**3 / 27.0
    return CubicIntermediates(A=A, B=B, Ccoef=C, p=p, q=q)


def reality_condition(p: float, q: float) -> bool:
    """True when the depressed cubic has three distinct real roots."""
    return q**2 / 4.0 + p**3 / 27.0 < 0.0


def _polish(roots: np.ndarray, ci: CubicIntermediates) -> np.ndarray:
    # one guarded Newton step on the undepressed cubic; recovers relative
    # accuracy of the small (dark) root lost to cancellation in the cosine form
    out = roots.copy()
    for i, lam in enumerate(roots):
        f = ((lam + ci.A) * lam + ci.B) * lam + ci.Ccoef
        df = (3.0 * lam + 2.0 * ci.A) * lam + ci.B
        if df == 0.0:
            continue
        cand = lam - f / df
        fc = ((cand + ci.A) * cand + ci.B) * cand + ci.Ccoef
        if abs(fc) <= abs(f):
            out[i] = cand
    return out


def cubic_roots(ci: CubicIntermediates) -> np.ndarray:
    """Real roots of the block cubic in ascending order (trigonometric form)."""
    p, q, shift = ci.p, ci.q, ci.A / 3.0
    scale = max(q * q / 4.0, abs(p) ** 3 / 27.0)
    disc = ci.discriminant
    if scale == 0.0:
        return np.full(3, -shift)
    if disc > DEGENERATE_RTOL * scale:
        raise ComplexRootError(
            f"complex-root regime: q^2/4 + p^3/27 = {disc:.3e} > 0 (corrupted block?)"
        )
    r = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
    theta = math.acos(min(1.0, max(-1.0, arg)))
    roots = np.array([r * math.cos(theta / 3.0 - 2.0 * math.pi * k / 3.0) for k in range(3)]) - shift
    return np.sort(_polish(roots, ci))


def exact_eigenvalues(params: SystemParams, block) -> EigenTriple:
    """Closed-form block eigenvalues labelled by branch.

    The block is an unreduced symmetric tridiagonal matrix, so its spectrum
    is simple for every detuning and no two branches ever cross. The
    continuous labelling therefore coincides with the ordering: ``+`` is the
    largest root, ``-`` the smallest and ``0`` (the dark branch) the middle
    one, exactly as at resonance where the roots are ``+W/2, 0, -W/2``.
    """
    lo, mid, hi = cubic_roots(cubic_intermediates(params, block))
    return EigenTriple(e_plus=float(hi), e_minus=float(lo), e_zero=float(mid))
