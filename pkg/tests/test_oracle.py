import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse.linalg import norm as spnorm

from qeit._validation import ValidationError
from qeit.oracle import (RampProfile, build_truncated_hamiltonian, dense_block_eigen, eigen_residual, embed,
                         excitation_numbers, fidelity, partial_trace_field, polynomial_fit, smoothstep)
from qeit.params import SystemParams
from qeit.verify import ramp_fidelity


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(1, 6))
def test_jacobi_matches_lapack_on_hermitian(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    w, v = dense_block_eigen(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    assert eigen_residual(h, w, v) < 1e-12


def test_jacobi_real_input_real_vectors():
    w, v = dense_block_eigen(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.isrealobj(v)
    assert np.allclose(w, [1.0, 3.0])


def test_truncated_hamiltonian_hermitian_and_conserving():
    p = SystemParams(g1=0.7, g2=1.3, delta1=0.1, delta2=-0.2)
    ham = build_truncated_hamiltonian(p, 4, 3)
    h = ham.matrix()
    assert spnorm(h - h.conj().T) == 0.0
    n1, n2 = excitation_numbers(ham.dims)
    rows, cols = h.nonzero()
    assert np.all(n1[rows] == n1[cols]) and np.all(n2[rows] == n2[cols])


def test_truncated_hamiltonian_coupling_values():
    ham = build_truncated_hamiltonian(SystemParams(g1=0.5, g2=2.0), 3, 3)
    h = ham.dense()
    assert h[ham.index(1, 1, 2), ham.index(0, 2, 2)] == pytest.approx(-0.5 * np.sqrt(2))
    assert h[ham.index(1, 1, 1), ham.index(2, 1, 2)] == pytest.approx(-2.0 * np.sqrt(2))


def test_dimension_cap():
    with pytest.raises(ValidationError):
        build_truncated_hamiltonian(SystemParams(), 100, 100, cap=1000)


def test_partial_trace_of_product():
    atom = np.array([0.6, 0.0, 0.8j])
    field = np.zeros((2, 2))
    field[1, 0] = 1.0
    rho = partial_trace_field(np.einsum("m,ij->mij", atom, field))
    assert np.allclose(rho, np.outer(atom, atom.conj()))


def test_embed_pads_and_rejects():
    psi = np.ones((3, 2, 2))
    assert embed(psi, (3, 4, 4))[:, :2, :2].sum() == 12
    with pytest.raises(ValidationError):
        embed(psi, (3, 1, 4))


def test_smoothstep_endpoints():
    assert smoothstep(0.0) == 0.0 and smoothstep(1.0) == 1.0 and smoothstep(0.5) == 0.5
    assert smoothstep(-1.0) == 0.0 and smoothstep(2.0) == 1.0


def test_ramp_ordering():
    r = RampProfile.sequential(10.0, "correct")
    s1, s2 = r.scales(r.T_total / 2)
    assert s2 == pytest.approx(1.0) and s1 == pytest.approx(0.0)
    assert r.scales(r.T_total) == pytest.approx((1.0, 1.0))


def test_fidelity_normalised():
    a = np.array([1.0, 1.0j])
    assert fidelity(a, 3 * a) == pytest.approx(1.0)


def test_polynomial_fit_exact_recovery():
    x = np.linspace(0.0, 2.0, 20)
    fit = polynomial_fit(x, 1.0 - 2.0 * x + 0.5 * x**3, 3)
    assert fit.coefficients == pytest.approx([1.0, -2.0, 0.0, 0.5], abs=1e-12)


def test_polynomial_fit_guards():
    with pytest.raises(ValueError):
        polynomial_fit([0.0, 1.0], [0.0, 1.0], 3)
    with pytest.raises(ValueError):
        polynomial_fit(np.zeros(10), np.zeros(10), 3)
    with pytest.raises(ArithmeticError):
        polynomial_fit(np.linspace(0, 1, 40), np.zeros(40), 30, cond_limit=1e3)


def test_short_ramp_is_not_adiabatic():
    fid, _ = ramp_fidelity(periods=2.0)
    assert fid < 0.9
