import cmath

import numpy as np
import pytest

import sovxxz


@pytest.fixture(scope="module")
def setup():
    eta = 0.6 + 0.35j
    xi = sovxxz.generate_xi(3, eta, 42)
    p = sovxxz.ModelParams(3, eta, xi)
    recs = sovxxz.solve_spectrum(p, 1.0)
    return p, recs


def test_spectrum_certifies(setup):
    p, recs = setup
    assert len(recs) == 8
    assert all(r.certified for r in recs)
    assert max(r.bethe_residual for r in recs) < 1e-9


def test_eigenvector_matches_transfer_matrix(setup):
    p, recs = setup
    mu = 0.21 - 0.13j
    t = sovxxz.transfer_matrix(p, mu, 1.0)
    for r in recs:
        v = np.asarray(r.vector)
        assert np.linalg.norm(t @ v - r.tau(mu) * v) < 1e-9 * max(1.0, abs(r.tau(mu)))


def test_scalar_products_agree(setup):
    p, recs = setup
    alpha = 1.3 + 0.2j
    a, b = recs[0], recs[3]
    d = sovxxz.sp_direct(p, a.Q, b.Q, alpha)
    assert abs(sovxxz.sp_izergin(p, a.Q, b.Q, alpha) - d) < 1e-8 * abs(d)
    assert abs(sovxxz.sp_slavnov(p, a.Q, b.Q, alpha) - d) < 1e-8 * abs(d)
    iz, sl = sovxxz.sp_tau(p, a, b, 1.0, alpha)
    assert abs(iz - d) < 1e-8 * abs(d) and abs(sl - d) < 1e-8 * abs(d)


def test_form_factors(setup):
    p, recs = setup
    a, b = recs[1], recs[2]
    for n in (1, 2, 3):
        for op in ("z", "-"):
            ff = sovxxz.form_factor(p, a, b, 1.0, n, op)
            ref = sovxxz.dense_form_factor(p, a, b, 1.0, n, op)
            assert abs(ff - ref) < 1e-7 * max(abs(ref), 1.0)


def test_errors_are_typed():
    with pytest.raises(sovxxz.ParameterError):
        sovxxz.ModelParams(2, 0.6 + 0.35j, [0.1, 0.1])
    with pytest.raises(sovxxz.ConfigError):
        sovxxz.run("validate", {"bogus": 1})
    assert issubclass(sovxxz.ConfigError, sovxxz.Error)


def test_reports():
    rep = sovxxz.run("spectrum", {"N": 2})
    assert rep["schema"] == 1
    assert len(rep["records"]) == 4
    assert all(isinstance(z, list) and len(z) == 2 for z in rep["records"][0]["tau_at_xi"])
    assert rep == sovxxz.run("spectrum", {"N": 2})
    val = sovxxz.run("validate", seed=42)
    assert val["pass"]
    strict = sovxxz.run("validate", tol=["bethe=1e-15"])
    assert not strict["checks"]["bethe"]["pass"]
    obs = sovxxz.run("observables", {"operators": ["z", "-"], "representations": ["direct", "tau"]})
    assert obs["pass"]
    assert set(obs["scalar_products"][0]["values"]) == {"direct", "tau"}
