"""Nonlinear susceptibility series of the probe and the nonlinear
refractive-index coefficients derived from it."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from ._validation import check_positive
from .constants import C_LIGHT, EPSILON_0, HBAR
from .dressed import RabiPair
from .linear import ExperimentPreset, rabi_sq_from_intensity, susceptibility_probe
from .oracle import polynomial_fit
from .params import SystemParams

# m -> cm conversion of the intensity-referenced coefficients, per order k
_CM_FACTOR = {2: 1e4, 4: 1e8, 6: 1e12}


@dataclass(frozen=True)
class ChiSeries:
    chi1: float
    chi3: float  # m^2/V^2
    chi5: float  # m^4/V^4
    chi7: float  # m^6/V^6

    def as_array(self) -> np.ndarray:
        return np.array([self.chi1, self.chi3, self.chi5, self.chi7])


@dataclass(frozen=True)
class NonlinearCoefficients:
    n0: float
    n2: float  # m^2/V^2
    n4: float  # m^4/V^4
    n6: float  # m^6/V^6
    n2_I: float  # cm^2/W
    n4_I: float  # cm^4/W^2
    n6_I: float  # cm^6/W^3
    ratio_24: float  # V^2/m^2
    ratio_24_I: float  # W/cm^2
    ratio_46: float
    ratio_46_I: float

    def as_dict(self) -> dict:
        return asdict(self)


def _field_coefficient(params: SystemParams, omega2_sq: float) -> float:
    # x = W1^2 / W2^2 = kappa |E(w1)|^2 with E = (field per photon) * alpha
    return 4.0 * params.mu12**2 / (HBAR**2 * omega2_sq)


def chi_series_printed(params: SystemParams, I2: float) -> ChiSeries:
    """Linear and nonlinear probe susceptibilities for a coupling intensity ``I2`` (W/m^2)."""
    I2 = check_positive("I2", I2)
    d = params.delta1 - params.delta2
    N, m1, m3 = params.atom_density, params.mu12, params.mu32
    omega2_sq = rabi_sq_from_intensity(m3, I2)
    chi1 = -4.0 * N * m1**2 * d / (HBAR * EPSILON_0 * omega2_sq)
    chi3 = 8.0 * HBAR * EPSILON_0 * C_LIGHT**2 * m1**4 * N / (m3**4 * I2**2) * d
    chi5 = -24.0 * HBAR * EPSILON_0**2 * C_LIGHT**3 * m1**6 * N / (m3**6 * I2**3) * d
    chi7 = 192.0 / 3.0 * HBAR * EPSILON_0**3 * C_LIGHT**4 * m1**8 * N / (m3**8 * I2**4) * d
    return ChiSeries(chi1, chi3, chi5, chi7)


def chi_series_expansion(params: SystemParams, I2: float) -> ChiSeries:
    """Same series generated from ``chi1 / (1 + x)^2 = chi1 sum (j+1) (-x)^j``."""
    omega2_sq = rabi_sq_from_intensity(params.mu32, check_positive("I2", I2))
    kappa = _field_coefficient(params, omega2_sq)
    chi1 = -4.0 * params.atom_density * params.mu12**2 * (params.delta1 - params.delta2) / (
        HBAR * EPSILON_0 * omega2_sq
    )
    terms = [chi1 * (j + 1) * (-kappa) ** j for j in range(4)]
    return ChiSeries(*terms)


def n_coefficients_from_chi(chi: ChiSeries) -> NonlinearCoefficients:
    """Index coefficients from the susceptibility series, with ``n0 = 1 + chi1``."""
    n0 = 1.0 + chi.chi1
    c3, c5, c7 = chi.chi3, chi.chi5, chi.chi7
    n2 = c3 / (2.0 * n0)
    n4 = c5 / (2.0 * n0) - c3**2 / (8.0 * n0**3)
    n6 = c7 / (2.0 * n0) - c3 * c5 / (4.0 * n0**3) + c3**3 / (16.0 * n0**5)
    return _assemble(n0, n2, n4, n6)


def n_coefficients_closed(preset: ExperimentPreset, v0_probe: float) -> NonlinearCoefficients:
    """Closed-form index coefficients in terms of ``I2``, the detuning, ``lambda1`` and ``v0``."""
    v0_probe = check_positive("v0_probe", v0_probe)
    I2 = preset.I2
    n2 = 2.0 * EPSILON_0 * C_LIGHT * preset.detuning * preset.lambda1 / (math.pi * I2 * v0_probe)
    n4 = -3.0 * EPSILON_0 * C_LIGHT * n2 / I2
    n6 = -8.0 * EPSILON_0 * C_LIGHT * n4 / (3.0 * I2)
    return _assemble(1.0, n2, n4, n6)


def unit_convert_intensity(nk: float, k: int) -> float:
    """Field-referenced ``n_k`` (m^k/V^k) to intensity-referenced (cm^k / W^(k/2))."""
    if k not in _CM_FACTOR:
        raise ValueError(f"order must be 2, 4 or 6, got {k}")
    return nk / (2.0 * EPSILON_0 * C_LIGHT) ** (k // 2) * _CM_FACTOR[k]


def coefficient_ratios(I2: float) -> dict:
    """``n2/n4 = -I2/(3 eps0 c)`` and ``n4/n6 = -3 I2/(8 eps0 c)``, field and intensity forms.

    The intensity form in W/cm^2 is the field form times ``2 eps0 c * 1e-4``.
    """
    I2 = check_positive("I2", I2)
    r24 = -I2 / (3.0 * EPSILON_0 * C_LIGHT)
    r46 = -3.0 * I2 / (8.0 * EPSILON_0 * C_LIGHT)
    # eps0 c cancels in the intensity form; I2 [W/m^2] / 1e4 = W/cm^2
    return {"ratio_24": r24, "ratio_24_I": -2.0 * I2 / 3.0e4, "ratio_46": r46, "ratio_46_I": -3.0 * I2 / 4.0e4}


def _assemble(n0, n2, n4, n6) -> NonlinearCoefficients:
    def safe(a, b):
        return a / b if b != 0 else math.nan

    to_i = 2.0 * EPSILON_0 * C_LIGHT * 1e-4
    return NonlinearCoefficients(
        n0=n0, n2=n2, n4=n4, n6=n6,
        n2_I=unit_convert_intensity(n2, 2),
        n4_I=unit_convert_intensity(n4, 4),
        n6_I=unit_convert_intensity(n6, 6),
        ratio_24=safe(n2, n4), ratio_24_I=safe(n2, n4) * to_i,
        ratio_46=safe(n4, n6), ratio_46_I=safe(n4, n6) * to_i,
    )


@dataclass(frozen=True)
class SeriesAudit:
    fitted: ChiSeries
    printed: ChiSeries
    expansion: ChiSeries
    ratios: dict  # printed / fitted per order
    x_max: float
    fit_points: int
    fit_degree: int
    condition_number: float
    n0_printed: float  # 1 + chi1
    n0_sqrt: float  # sqrt(1 + chi1)

    def as_dict(self) -> dict:
        return {
            "fitted": asdict(self.fitted),
            "printed": asdict(self.printed),
            "expansion": asdict(self.expansion),
            "ratios": dict(self.ratios),
            "x_max": self.x_max,
            "fit_points": self.fit_points,
            "fit_degree": self.fit_degree,
            "condition_number": self.condition_number,
            "n0_printed": self.n0_printed,
            "n0_sqrt": self.n0_sqrt,
        }


def series_audit(params: SystemParams, I2: float, fit_points: int = 24, x_max: float = 0.05,
                 fit_degree: int = 7) -> SeriesAudit:
    """Fit the exact probe susceptibility as a polynomial in ``|E(w1)|^2``.

    The susceptibility is evaluated on a uniform grid of probe intensities
    with ``W1^2/W2^2 <= x_max`` and fitted to ``fit_degree``; the first four
    coefficients are compared with the closed-form series. A plain cubic
    fit carries a truncation bias of order ``10 x_max`` in the last
    coefficient, hence the higher default degree.
    """
    if fit_points < 8:
        raise ValueError("series audit needs at least 8 sample points")
    if fit_degree < 3:
        raise ValueError("fit_degree must be >= 3")
    omega2_sq = rabi_sq_from_intensity(params.mu32, check_positive("I2", I2))
    kappa = _field_coefficient(params, omega2_sq)
    e_sq = np.linspace(0.0, x_max / kappa, fit_points)
    w2 = math.sqrt(omega2_sq)
    chi = np.array([susceptibility_probe(params, RabiPair.from_rabi(math.sqrt(kappa * e) * w2, w2)) for e in e_sq])
    fit = polynomial_fit(e_sq, chi, fit_degree)
    fitted = ChiSeries(*fit.coefficients[:4])
    printed = chi_series_printed(params, I2)
    ratios = {
        f"chi{k}": (p / f if f != 0 else math.nan)
        for k, p, f in zip((1, 3, 5, 7), printed.as_array(), fitted.as_array())
    }
    return SeriesAudit(
        fitted=fitted,
        printed=printed,
        expansion=chi_series_expansion(params, I2),
        ratios=ratios,
        x_max=x_max,
        fit_points=fit_points,
        fit_degree=fit_degree,
        condition_number=fit.condition_number,
        n0_printed=1.0 + printed.chi1,
        n0_sqrt=math.sqrt(1.0 + printed.chi1),
    )
