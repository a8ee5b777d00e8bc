"""Physical parameter sets and the 3-state invariant blocks of the Hamiltonian."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import ValidationError, check_count, check_finite, check_positive
from .constants import EPSILON_0, HBAR

# Sodium D line, used only as defaults for the macroscopic fields.
_OMEGA_NA = 2.0 * math.pi * 2.99792458e8 / 589e-9


@dataclass(frozen=True)
class SystemParams:
    """Couplings, detunings and medium constants, all in SI units.

    Energies are angular frequencies (the Hamiltonian divided by hbar).
    Block-level quantities only depend on ``g1, g2, delta1, delta2``; the
    remaining fields enter the macroscopic response.
    """

    g1: float = 1.0
    g2: float = 1.0
    delta1: float = 0.0
    delta2: float = 0.0
    omega1: float = _OMEGA_NA
    omega2: float = _OMEGA_NA
    mu12: float = 1.0e-29
    mu32: float = 1.0e-29
    atom_density: float = 1.0e18
    mode_volume: float = 1.0e-12

    def __post_init__(self):
        for name in ("g1", "g2", "omega1", "omega2", "mu12", "mu32", "atom_density", "mode_volume"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))
        for name in ("delta1", "delta2"):
            object.__setattr__(self, name, check_finite(name, getattr(self, name)))

    def replace(self, **changes) -> "SystemParams":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return SystemParams(**values)

    @property
    def field_per_photon(self) -> tuple[float, float]:
        """Electric field per photon sqrt(hbar w / 2 eps0 V) of each mode, V/m."""
        e1 = math.sqrt(HBAR * self.omega1 / (2.0 * EPSILON_0 * self.mode_volume))
        e2 = math.sqrt(HBAR * self.omega2 / (2.0 * EPSILON_0 * self.mode_volume))
        return e1, e2

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class FockBlock:
    """Invariant block anchored at ``|1, n1, n2>``.

    Ordered basis: ``|1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>``. Blocks with
    ``n1 = 0`` collapse to the uncoupled state ``|1,0,n2>`` and are rejected.
    """

    n1: int
    n2: int

    def __post_init__(self):
        object.__setattr__(self, "n1", check_count("n1", self.n1, minimum=1))
        object.__setattr__(self, "n2", check_count("n2", self.n2, minimum=0))


def as_block(block) -> FockBlock:
    if isinstance(block, FockBlock):
        return block
    try:
        n1, n2 = block
    except (TypeError, ValueError):
        raise ValidationError("block", f"expected FockBlock or (n1, n2), got {block!r}") from None
    return FockBlock(n1, n2)
