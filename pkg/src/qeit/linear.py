"""Linear optical response of the adiabatic EIT medium: polarization,
susceptibilities, group velocities and refractive-index changes."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from importlib import resources

from ._validation import ValidationError, check_finite, check_positive
from .constants import C_LIGHT, EPSILON_0, HBAR
from .dressed import RabiPair
from .params import SystemParams

RABI_CONVENTIONS = ("paper", "strict")


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    I1: float  # W/m^2
    I2: float  # W/m^2
    delta1: float
    delta2: float
    lambda1: float  # m
    lambda2: float  # m
    v_probe_group_observed: float  # m/s
    dipole_ratio: float  # mu12 / mu32
    description: str = ""
    reported: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for name in ("I1", "I2", "lambda1", "lambda2", "v_probe_group_observed", "dipole_ratio"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))
        for name in ("delta1", "delta2"):
            object.__setattr__(self, name, check_finite(name, getattr(self, name)))

    @property
    def detuning(self) -> float:
        return self.delta1 - self.delta2

    def replace(self, **changes) -> "ExperimentPreset":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return ExperimentPreset(**values)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "reported"}


def load_presets() -> dict[str, ExperimentPreset]:
    raw = json.loads(resources.files("qeit").joinpath("data/presets.json").read_text(encoding="utf-8"))
    return {name: ExperimentPreset(name=name, **vals) for name, vals in raw.items()}


def get_preset(name: str) -> ExperimentPreset:
    presets = load_presets()
    if name not in presets:
        raise ValidationError("preset", f"unknown preset {name!r}; available: {sorted(presets)}")
    return presets[name]


@dataclass(frozen=True)
class OpticalResponse:
    chi_probe: float
    chi_coupling: float
    dchi_domega1: float  # s/rad
    v_probe_group: float  # m/s
    v_coupling_group: float  # m/s
    dn_probe: float
    dn_coupling: float
    v0_probe: float
    v0_coupling: float
    rabi_ratio_sq: float


def rabi_sq_from_intensity(mu: float, intensity: float) -> float:
    """``W^2 = 2 mu^2 I / (eps0 c hbar^2)`` from ``W = 2 g sqrt(n)`` and ``I = n hbar w c / V``."""
    return 2.0 * mu * mu * intensity / (EPSILON_0 * C_LIGHT * HBAR**2)


def rabi_ratio_sq(I1: float, I2: float, dipole_ratio: float, convention: str = "paper") -> float:
    """``W1^2 / W2^2`` from the beam intensities.

    ``"paper"`` takes the plain intensity ratio; ``"strict"`` keeps the
    dipole factor ``(mu12/mu32)^2`` that the intensity conversion implies.
    """
    if convention not in RABI_CONVENTIONS:
        raise ValidationError("rabi_from_intensity", f"must be one of {RABI_CONVENTIONS}, got {convention!r}")
    ratio = I1 / I2
    return ratio if convention == "paper" else dipole_ratio**2 * ratio


def polarization(params: SystemParams, rho21: complex, rho23: complex) -> float:
    """Medium polarization ``N (mu12 rho21 + mu32 rho23) + c.c.``, C/m^2."""
    z = params.atom_density * (params.mu12 * complex(rho21) + params.mu32 * complex(rho23))
    return 2.0 * z.real


def field_fourier(alpha: float, beta: float, params: SystemParams) -> tuple[float, float]:
    """Mean-field Fourier amplitudes ``(E(w1), E(w2))`` of a coherent field, V/m."""
    e1, e2 = params.field_per_photon
    return e1 * alpha, e2 * beta


def intensity_from_field(amplitude: float) -> float:
    """``I = 2 eps0 c |E|^2``, W/m^2."""
    return 2.0 * EPSILON_0 * C_LIGHT * amplitude * amplitude


def _prefactor(params: SystemParams, mu: float) -> float:
    return 4.0 * params.atom_density * mu * mu / (HBAR * EPSILON_0)


def susceptibility_probe(params: SystemParams, rabi: RabiPair) -> float:
    """Real probe susceptibility, first order in the detunings, any ``W1/W2``."""
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    d = params.delta1 - params.delta2
    return -_prefactor(params, params.mu12) * rabi.omega2_rabi**2 * d / w_sq**2


def dispersion_slope_probe(params: SystemParams, rabi: RabiPair) -> float:
    """``d chi_probe / d w1`` in s/rad.

    The detuning is ``delta1 = w21 - w1``, so this is ``-d chi / d delta1``;
    it is positive (normal dispersion) for every Rabi pair.
    """
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    return _prefactor(params, params.mu12) * rabi.omega2_rabi**2 / w_sq**2


@dataclass(frozen=True)
class LinearSusceptibility:
    chi: float
    dchi_domega: float
    d2chi_domega2: float


def susceptibility_probe_linear(params: SystemParams, rabi: RabiPair) -> LinearSusceptibility:
    """Leading term in ``W1/W2`` of the probe susceptibility and its frequency derivatives."""
    pref = _prefactor(params, params.mu12) / rabi.omega2_rabi**2
    return LinearSusceptibility(-pref * (params.delta1 - params.delta2), pref, 0.0)


def susceptibility_coupling(params: SystemParams, rabi: RabiPair) -> float:
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    d = params.delta1 - params.delta2
    return _prefactor(params, params.mu32) * rabi.omega1_rabi**2 * d / w_sq**2


def susceptibility_coupling_linear(params: SystemParams, rabi: RabiPair) -> float:
    d = params.delta1 - params.delta2
    return _prefactor(params, params.mu32) * rabi.omega1_rabi**2 * d / rabi.omega2_rabi**4


def dispersion_slope_coupling(params: SystemParams, rabi: RabiPair) -> float:
    """``d chi_coupling / d w2`` (``delta2 = w23 - w2``), s/rad."""
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    return _prefactor(params, params.mu32) * rabi.omega1_rabi**2 / w_sq**2


def group_velocity_probe(params: SystemParams, rabi: RabiPair) -> tuple[float, float]:
    """Probe group velocity and its weak-probe value ``v0``, m/s."""
    if rabi.omega2_rabi <= 0:
        raise ValidationError("omega2_rabi", "coupling Rabi frequency must be > 0")
    v0 = HBAR * C_LIGHT * EPSILON_0 * rabi.omega2_rabi**2 / (
        2.0 * params.omega1 * params.mu12**2 * params.atom_density
    )
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    return v0 * w_sq**2 / rabi.omega2_rabi**4, v0


def group_velocity_coupling(params: SystemParams, rabi: RabiPair) -> tuple[float, float]:
    if rabi.omega1_rabi <= 0:
        raise ValidationError("omega1_rabi", "no coupling-pulse group delay defined for a probe vacuum")
    v0 = HBAR * C_LIGHT * EPSILON_0 * rabi.omega1_rabi**2 / (
        2.0 * params.omega2 * params.mu32**2 * params.atom_density
    )
    w_sq = rabi.omega1_rabi**2 + rabi.omega2_rabi**2
    return v0 * w_sq**2 / rabi.omega1_rabi**4, v0


def group_velocity_from_slope(omega: float, dchi_domega: float) -> float:
    """``c / (1 + (w/2) dchi/dw)``."""
    return C_LIGHT / (1.0 + 0.5 * omega * dchi_domega)


def index_change(wavelength: float, detuning: float, v_group: float) -> float:
    """``(lambda / 2 pi) (delta1 - delta2) / v_group``."""
    check_positive("v_group", v_group)
    return wavelength / (2.0 * math.pi) * detuning / v_group


def index_change_coupling_explicit(params: SystemParams, rabi: RabiPair) -> float:
    """Coupling index change written directly in the medium constants (half of chi)."""
    return 0.5 * susceptibility_coupling(params, rabi)


def optical_response(params: SystemParams, rabi: RabiPair) -> OpticalResponse:
    """Full response from microscopic parameters and mean-field Rabi frequencies."""
    v_pg, v0_pg = group_velocity_probe(params, rabi)
    v_cg, v0_cg = group_velocity_coupling(params, rabi)
    lam1 = 2.0 * math.pi * C_LIGHT / params.omega1
    lam2 = 2.0 * math.pi * C_LIGHT / params.omega2
    d = params.delta1 - params.delta2
    return OpticalResponse(
        chi_probe=susceptibility_probe(params, rabi),
        chi_coupling=susceptibility_coupling(params, rabi),
        dchi_domega1=dispersion_slope_probe(params, rabi),
        v_probe_group=v_pg,
        v_coupling_group=v_cg,
        dn_probe=index_change(lam1, d, v_pg),
        dn_coupling=index_change(lam2, d, v_cg),
        v0_probe=v0_pg,
        v0_coupling=v0_cg,
        rabi_ratio_sq=rabi.ratio_sq,
    )


def preset_response(preset: ExperimentPreset, convention: str = "paper") -> OpticalResponse:
    """Response of an experiment characterised by its observed probe group velocity.

    The medium constants are not needed: the observed ``v_probe`` fixes the
    weak-probe velocity ``v0 = v / (1 + r)^2`` with ``r = W1^2/W2^2`` taken
    from the intensities, and the coupling velocity follows from
    ``v0_c = v0 (w1/w2) r (mu12/mu32)^2``.
    """
    r = rabi_ratio_sq(preset.I1, preset.I2, preset.dipole_ratio, convention)
    v_pg = preset.v_probe_group_observed
    v0_pg = v_pg / (1.0 + r) ** 2
    omega_ratio = preset.lambda2 / preset.lambda1
    v0_cg = v0_pg * omega_ratio * r * preset.dipole_ratio**2
    v_cg = v0_cg * (1.0 + r) ** 2 / r**2
    d = preset.detuning
    omega1 = 2.0 * math.pi * C_LIGHT / preset.lambda1
    # chi = -(lambda/pi) d / v_pg and chi_c = (lambda/pi) d / v_cg follow from
    # eliminating N |mu|^2 between the susceptibilities and group velocities
    return OpticalResponse(
        chi_probe=-preset.lambda1 / math.pi * d / v_pg,
        chi_coupling=preset.lambda2 / math.pi * d / v_cg,
        dchi_domega1=2.0 * (C_LIGHT / v_pg - 1.0) / omega1,
        v_probe_group=v_pg,
        v_coupling_group=v_cg,
        dn_probe=index_change(preset.lambda1, d, v_pg),
        dn_coupling=index_change(preset.lambda2, d, v_cg),
        v0_probe=v0_pg,
        v0_coupling=v0_cg,
        rabi_ratio_sq=r,
    )
