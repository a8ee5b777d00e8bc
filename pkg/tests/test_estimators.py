import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from qeit import BlockSpectrum, EITSusceptibility, KerrSeriesRegressor
from qeit.nonlinear import series_audit
from qeit.params import SystemParams

BLOCKS = np.array([[1, 0], [2, 3], [7, 1]])


@pytest.mark.parametrize("method", ["exact", "dense"])
def test_block_spectrum_methods_agree(method):
    ref = BlockSpectrum(g2=1.4, delta1=0.05, delta2=0.01).fit().transform(BLOCKS)
    got = BlockSpectrum(g2=1.4, delta1=0.05, delta2=0.01, method=method).fit().transform(BLOCKS)
    assert np.allclose(got, ref, atol=1e-12)


def test_block_spectrum_perturbative_close():
    est = BlockSpectrum(delta1=1e-3, method="perturbative").fit()
    exact = BlockSpectrum(delta1=1e-3).fit().transform(BLOCKS)
    assert np.max(np.abs(est.transform(BLOCKS) - exact)) < 1e-5


def test_block_spectrum_validation():
    with pytest.raises(ValueError):
        BlockSpectrum(method="qr").fit()
    with pytest.raises(ValueError):
        BlockSpectrum().fit().transform([[0, 1]])
    with pytest.raises(NotFittedError):
        BlockSpectrum().transform(BLOCKS)


def test_clone_and_params():
    est = BlockSpectrum(g1=2.0, method="dense")
    c = clone(est)
    assert c.get_params() == est.get_params()
    c.set_params(g1=3.0)
    assert est.g1 == 2.0


def test_eit_susceptibility():
    est = EITSusceptibility().fit()
    X = np.array([[0.0, 0.0], [1e3, 0.0], [-1e3, 0.0]])
    chi = est.predict(X)
    assert chi[0] == 0.0 and chi[1] == pytest.approx(-chi[2])
    out = est.transform(X)
    assert out.shape == (3, 4)
    assert est.v_probe_group_ > est.v0_probe_


def test_kerr_regressor_recovers_series():
    params = SystemParams(delta1=1.3e6, mu12=1e-29, mu32=1e-29 / 1.22)
    audit = series_audit(params, 400.0)
    e_sq = np.linspace(0.0, 1.0, 30)[:, None]
    y = np.polynomial.polynomial.polyval(e_sq[:, 0], [1.0, -0.5, 0.25, -0.125])
    reg = KerrSeriesRegressor(degree=5).fit(e_sq, y)
    assert reg.coef_ == pytest.approx([1.0, -0.5, 0.25, -0.125], abs=1e-10)
    assert reg.score(e_sq, y) == pytest.approx(1.0)
    assert audit.fit_degree == 7


def test_kerr_in_pipeline():
    from sklearn.preprocessing import FunctionTransformer
    pipe = make_pipeline(FunctionTransformer(np.square), KerrSeriesRegressor(degree=3, n_terms=2))
    x = np.linspace(0, 1, 20)[:, None]
    pipe.fit(x, 2.0 + 3.0 * x[:, 0] ** 2)
    assert pipe[-1].coef_ == pytest.approx([2.0, 3.0], abs=1e-10)
