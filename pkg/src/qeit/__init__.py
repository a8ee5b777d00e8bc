"""Adiabatic electromagnetically induced transparency with two quantized fields."""

from .params import FockBlock, SystemParams
from .hamiltonian import (ComplexRootError, CubicIntermediates, EigenTriple, block_matrix, cubic_intermediates,
                          exact_eigenvalues, reality_condition)
from .dressed import (DressedTriple, RabiPair, dark_state_residual, dressed_coefficients,
                      perturbative_eigenvalues, rabi_frequencies, rabi_pair)
from .state import (AtomDensityMatrix, FieldSpec, adiabatic_state, coherences_timeseries, coherent_amplitudes,
                    fock_field, joint_field, large_n_coherences, nonclassical_coherence, product_field,
                    rabi_spread_estimate, reduced_density_matrix)
from .linear import ExperimentPreset, OpticalResponse, get_preset, load_presets, preset_response
from .nonlinear import (ChiSeries, NonlinearCoefficients, chi_series_printed, coefficient_ratios,
                        n_coefficients_closed, n_coefficients_from_chi, series_audit, unit_convert_intensity)

__version__ = "0.1.0"

_LAZY = {"BlockSpectrum", "EITSusceptibility", "KerrSeriesRegressor"}


def __getattr__(name):
    # scikit-learn is slow to import; only pay for it when an estimator is used
    if name in _LAZY:
        from . import estimators
        return getattr(estimators, name)
    raise AttributeError(f"module 'qeit' has no attribute {name!r}")
