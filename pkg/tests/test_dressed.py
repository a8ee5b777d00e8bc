import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qeit.dressed import (BRANCHES, dark_branch, dark_state_residual, dressed_coefficients, eigen_residual,
                          gram_defect, perturbative_eigenvalues, rabi_frequencies, rabi_pair)
from qeit.hamiltonian import exact_eigenvalues
from qeit.params import FockBlock, SystemParams


def test_rabi_pair_definition():
    r = rabi_pair(0.5, 2.0, 4, 3)
    assert r.omega1_rabi == pytest.approx(2.0)
    assert r.omega2_rabi == pytest.approx(8.0)
    assert r.omega_total == pytest.approx(math.hypot(2.0, 8.0))


def test_resonant_energies_exact():
    p = SystemParams(g1=0.7, g2=1.1)
    block = FockBlock(5, 2)
    assert np.allclose(perturbative_eigenvalues(p, block).as_array(), exact_eigenvalues(p, block).as_array(),
                       atol=1e-13)


def test_dark_state_resonant_form():
    p = SystemParams(g1=0.7, g2=1.1)
    block = FockBlock(3, 1)
    r = rabi_frequencies(p, block)
    v = dressed_coefficients(p, block, "0")
    assert v.a == pytest.approx(-r.omega2_rabi / r.omega_total)
    assert v.b == 0.0
    assert v.c == pytest.approx(r.omega1_rabi / r.omega_total)
    assert dark_state_residual(p, block) < 1e-12 * r.omega_total


def test_dark_branch_probe_vacuum():
    a0, b0, c0, e0 = dark_branch(1.0, 1.0, 0.0, 3.0, 0.1, 0.05)
    assert (a0, b0, c0, e0) == (-1.0, 0.0, 0.0, 0.0)


def test_dark_state_is_exact_to_first_order(detuned):
    # residual of the first-order dark state must shrink quadratically with the detunings
    block = FockBlock(2, 3)
    r1 = dark_state_residual(detuned, block)
    half = detuned.replace(delta1=detuned.delta1 / 2, delta2=detuned.delta2 / 2)
    r2 = dark_state_residual(half, block)
    assert r1 / r2 == pytest.approx(4.0, rel=0.05)


@pytest.mark.parametrize("branch", BRANCHES)
def test_bright_residuals_second_order(detuned, branch):
    block = FockBlock(2, 3)
    res = [eigen_residual(detuned.replace(delta1=detuned.delta1 * s, delta2=detuned.delta2 * s), block, branch)
           for s in (1.0, 0.5, 0.25)]
    slope = math.log2(res[0] / res[2]) / 2
    assert slope > 1.9


def test_printed_coupling_coefficient_is_not_first_order(detuned):
    # the alternative Delta2 coefficient of c+- leaves a first-order residual
    block = FockBlock(2, 3)
    fixed = [eigen_residual(detuned.replace(delta1=0.0, delta2=s * 0.02), block, "+") for s in (1.0, 0.5)]
    printed = [eigen_residual(detuned.replace(delta1=0.0, delta2=s * 0.02), block, "+", printed=True)
               for s in (1.0, 0.5)]
    assert fixed[0] / fixed[1] == pytest.approx(4.0, rel=0.1)
    assert printed[0] / printed[1] == pytest.approx(2.0, rel=0.1)


@settings(max_examples=100, deadline=None)
@given(n1=st.integers(1, 50), n2=st.integers(0, 50), g1=st.floats(0.1, 5), g2=st.floats(0.1, 5))
def test_resonant_triples_orthonormal(n1, n2, g1, g2):
    assert gram_defect(SystemParams(g1=g1, g2=g2), FockBlock(n1, n2)) < 1e-12
