"""scikit-learn compatible wrappers so the closed-form results compose with
pipelines, ``clone`` and ``get_params``/``set_params``."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .dressed import RabiPair, perturbative_eigenvalues
from .hamiltonian import exact_eigenvalues
from .linear import (dispersion_slope_probe, group_velocity_coupling, group_velocity_probe, index_change,
                     susceptibility_coupling, susceptibility_probe)
from .oracle import dense_block_eigen, polynomial_fit
from .params import FockBlock, SystemParams
from .hamiltonian import block_matrix
from .constants import C_LIGHT


class BlockSpectrum(TransformerMixin, BaseEstimator):
    """Map photon-number rows ``(n1, n2)`` to branch energies ``(+, -, 0)``.

    Parameters
    ----------
    g1, g2 : float
        Coupling constants, rad/s.
    delta1, delta2 : float
        Probe and coupling detunings, rad/s.
    method : {"exact", "perturbative", "dense"}
        Closed-form cubic roots, first-order energies, or the Jacobi oracle
        (sorted, so columns are ``(max, min, middle)`` as for "exact").
    """

    def __init__(self, g1=1.0, g2=1.0, delta1=0.0, delta2=0.0, method="exact"):
        self.g1 = g1
        self.g2 = g2
        self.delta1 = delta1
        self.delta2 = delta2
        self.method = method

    def fit(self, X=None, y=None):
        if self.method not in ("exact", "perturbative", "dense"):
            raise ValueError(f"unknown method {self.method!r}")
        self.params_ = SystemParams(g1=self.g1, g2=self.g2, delta1=self.delta1, delta2=self.delta2)
        if X is not None:
            self.n_features_in_ = check_array(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (n1, n2), got {X.shape[1]}")
        out = np.empty((X.shape[0], 3))
        for i, (n1, n2) in enumerate(X):
            block = FockBlock(n1, n2)
            if self.method == "exact":
                out[i] = exact_eigenvalues(self.params_, block).as_array()
            elif self.method == "perturbative":
                out[i] = perturbative_eigenvalues(self.params_, block).as_array()
            else:
                w, _ = dense_block_eigen(block_matrix(self.params_, block))
                out[i] = (w[2], w[0], w[1])
        return out


class EITSusceptibility(TransformerMixin, BaseEstimator):
    """Probe/coupling response of the medium as a function of the detunings.

    ``X`` has columns ``(delta1, delta2)`` in rad/s. ``predict`` returns the
    probe susceptibility; ``transform`` returns
    ``[chi_probe, chi_coupling, dn_probe, dn_coupling]``.
    """

    def __init__(self, rabi_probe=1e6, rabi_coupling=1e7, atom_density=1e18, mu12=1e-29, mu32=1e-29,
                 omega1=3.2e15, omega2=3.2e15):
        self.rabi_probe = rabi_probe
        self.rabi_coupling = rabi_coupling
        self.atom_density = atom_density
        self.mu12 = mu12
        self.mu32 = mu32
        self.omega1 = omega1
        self.omega2 = omega2

    def fit(self, X=None, y=None):
        self.params_ = SystemParams(mu12=self.mu12, mu32=self.mu32, atom_density=self.atom_density,
                                    omega1=self.omega1, omega2=self.omega2)
        self.rabi_ = RabiPair.from_rabi(float(self.rabi_probe), float(self.rabi_coupling))
        self.v_probe_group_, self.v0_probe_ = group_velocity_probe(self.params_, self.rabi_)
        self.v_coupling_group_, self.v0_coupling_ = group_velocity_coupling(self.params_, self.rabi_)
        self.dchi_domega1_ = dispersion_slope_probe(self.params_, self.rabi_)
        if X is not None:
            self.n_features_in_ = check_array(X).shape[1]
        return self

    def _rows(self, X):
        check_is_fitted(self, "params_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (delta1, delta2), got {X.shape[1]}")
        return X

    def predict(self, X):
        X = self._rows(X)
        return np.array([susceptibility_probe(self.params_.replace(delta1=d1, delta2=d2), self.rabi_) for d1, d2 in X])

    def transform(self, X):
        X = self._rows(X)
        lam1 = 2 * np.pi * C_LIGHT / self.omega1
        lam2 = 2 * np.pi * C_LIGHT / self.omega2
        out = np.empty((X.shape[0], 4))
        for i, (d1, d2) in enumerate(X):
            p = self.params_.replace(delta1=d1, delta2=d2)
            out[i] = (
                susceptibility_probe(p, self.rabi_),
                susceptibility_coupling(p, self.rabi_),
                index_change(lam1, d1 - d2, self.v_probe_group_),
                index_change(lam2, d1 - d2, self.v_coupling_group_),
            )
        return out


class KerrSeriesRegressor(RegressorMixin, BaseEstimator):
    """Polynomial regression of a susceptibility on ``|E|^2``.

    ``coef_`` holds the first ``n_terms`` coefficients (``chi1, chi3, ...``);
    the fit itself uses ``degree`` so that the reported terms are not biased
    by the truncated tail of the series.
    """

    def __init__(self, degree=7, n_terms=4):
        self.degree = degree
        self.n_terms = n_terms

    def fit(self, X, y):
        X = check_array(X)
        y = np.asarray(y, dtype=float).ravel()
        if X.shape[1] != 1:
            raise ValueError("KerrSeriesRegressor expects a single |E|^2 column")
        if self.n_terms > self.degree + 1:
            raise ValueError("n_terms cannot exceed degree + 1")
        fit = polynomial_fit(X[:, 0], y, self.degree)
        self.full_coef_ = fit.coefficients
        self.coef_ = fit.coefficients[: self.n_terms]
        self.condition_number_ = fit.condition_number
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "full_coef_")
        X = check_array(X)
        return np.polynomial.polynomial.polyval(X[:, 0], self.full_coef_)
