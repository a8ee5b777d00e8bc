import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qeit._validation import ValidationError
from qeit.oracle import partial_trace_field
from qeit.params import SystemParams
from qeit.state import (TAIL_WARN, adiabatic_state, coherences_timeseries, coherent_amplitudes, csum,
                        default_truncation, fock_field, joint_field, large_n_coherences, nonclassical_coherence,
                        poisson_weights, product_field, rabi_spread_estimate, reduced_density_matrix)

P = SystemParams(g1=0.9, g2=1.1, delta1=0.04, delta2=0.01, omega1=5.0, omega2=3.0)


def test_default_truncation_grows_with_nbar():
    assert default_truncation(0.0) == 10
    assert default_truncation(100.0) == math.ceil(100 + 10 * math.sqrt(101))


def test_coherent_amplitudes_normalised():
    f = coherent_amplitudes(3.0, 2.0)
    assert f.tail_mass < TAIL_WARN
    assert abs(f.amplitudes[0, 0]) == pytest.approx(math.exp(-(9 + 4) / 2))


def test_large_amplitude_has_no_overflow():
    f = coherent_amplitudes(40.0, 1.0)
    assert np.all(np.isfinite(f.amplitudes))
    assert f.norm_sq == pytest.approx(1.0, abs=1e-9)


def test_truncation_tail_warning():
    with pytest.warns(RuntimeWarning):
        f = coherent_amplitudes(3.0, 1.0, trunc1=4)
    assert f.tail_warning


def test_product_field_normalisation_checked():
    with pytest.raises(ValidationError) as exc:
        product_field([1.0, 0.5], [1.0])
    assert exc.value.field == "probe"


def test_joint_field_normalisation_checked():
    with pytest.raises(ValidationError):
        joint_field(np.ones((2, 2)))


def test_csum_is_compensated():
    vals = np.array([1e16, 1.0, -1e16, 1.0j])
    assert csum(vals) == 1.0 + 1.0j


def test_adiabatic_state_normalised():
    st_ = adiabatic_state(P, coherent_amplitudes(1.5, 2.0), 0.7)
    # first-order dressed states are normalised to first order only
    assert st_.norm() == pytest.approx(1.0, abs=1e-3)


def test_resonant_state_has_no_upper_population():
    rho = reduced_density_matrix(P.replace(delta1=0.0, delta2=0.0), coherent_amplitudes(2.0, 1.5), 1.3)
    assert rho.matrix[1, 1] == 0.0
    assert rho.trace == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("t", [0.0, 0.35, 2.0])
def test_density_matrix_matches_brute_partial_trace(t):
    f = coherent_amplitudes(1.5, 2.0)
    rho = reduced_density_matrix(P, f, t).matrix
    brute = partial_trace_field(adiabatic_state(P, f, t).dense())
    assert np.max(np.abs(rho - brute)) < 1e-12


def test_density_matrix_hermitian():
    rho = reduced_density_matrix(P, coherent_amplitudes(1.2, 1.7), 0.9).matrix
    assert np.allclose(rho, rho.conj().T, atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), t=st.floats(0.0, 5.0))
def test_joint_field_partial_trace(seed, t):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
    f = joint_field(c / np.linalg.norm(c))
    rho = reduced_density_matrix(P, f, t).matrix
    brute = partial_trace_field(adiabatic_state(P, f, t).dense())
    assert np.max(np.abs(rho - brute)) < 1e-12


def test_fock_probe_has_no_probe_coherence():
    assert abs(nonclassical_coherence(P, fock_field(4, 3))) < 1e-14


def test_gapped_superposition_has_no_probe_coherence():
    c1 = np.zeros(5, dtype=complex)
    c1[1] = c1[3] = 1 / math.sqrt(2)
    c2 = np.array([0.6, 0.8], dtype=complex)
    assert abs(nonclassical_coherence(P, product_field(c1, c2))) < 1e-14


def test_beta_zero_is_rejected():
    with pytest.raises(ValidationError) as exc:
        coherences_timeseries(P, 2.0, 0.0)
    assert exc.value.field == "beta"


def test_timeseries_vectorised():
    ts = np.linspace(0.0, 1.0, 4)
    r21, r23 = coherences_timeseries(P, 2.0, 2.5, ts)
    for k, t in enumerate(ts):
        a, b = coherences_timeseries(P, 2.0, 2.5, float(t))
        assert r21[k] == pytest.approx(a, abs=1e-15)
        assert r23[k] == pytest.approx(b, abs=1e-15)


def test_large_n_convergence_monotone():
    devs = []
    for nbar in (10.0, 100.0, 1000.0):
        a = math.sqrt(nbar)
        full, _ = coherences_timeseries(P, a, a, 0.0)
        closed, _ = large_n_coherences(P, nbar, nbar)
        devs.append(abs(full.real - closed) / abs(closed))
    assert devs[0] > devs[1] > devs[2]
    assert devs[1] < 0.02 and devs[2] < 0.005


def test_poisson_weights_sum_to_one():
    w = poisson_weights(4.0, 9.0)
    assert w.total == pytest.approx(1.0, abs=1e-9)
    assert w.peak in {(3, 8), (4, 9), (4, 8), (3, 9)}


def test_rabi_spread_estimate():
    assert rabi_spread_estimate(100.0) == pytest.approx((0.1, 1 / 800))
