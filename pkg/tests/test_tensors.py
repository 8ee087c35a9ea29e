import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exprs import fd4, points, to_field, to_numpy, trees
from framelab import fields as F
from framelab.charts import Chart
from framelab.errors import ChartMismatchError, DomainError, SingularMetricError
from framelab.forms import basis
from framelab.scenarios import (frame_P, minkowski_cartesian, minkowski_cylindrical,
                                rotating_chart)
from framelab.tensors import (ChartMap, MetricField, VectorField, christoffel,
                              covariant_derivative_metric, covariant_derivative_oneform,
                              lower_index, pullback_metric, pullback_vector, raise_index)

CART, ETA = minkowski_cartesian()
CYL, ETA_CYL = minkowski_cylindrical()


def _vec(chart, *c):
    return VectorField(chart, c)


# index gymnastics ------------------------------------------------------------------

def test_lower_time_and_space_basis_vectors():
    dt = lower_index(ETA_CYL, _vec(CYL, 1.0, 0.0, 0.0, 0.0))
    assert set(dt.components) == {(0,)} and dt[(0,)].const == 1.0
    dx = lower_index(ETA, _vec(CART, 0.0, 1.0, 0.0, 0.0))
    assert set(dx.components) == {(1,)} and dx[(1,)].const == -1.0


def test_lower_rotating_frame():
    alpha = frame_P(0.5).one_form()
    x = np.array([0.0, 1.0, 0.0, 0.0])
    assert alpha[(0,)](x) == pytest.approx(2 / np.sqrt(3), abs=1e-12)  # 1.154701
    assert alpha[(2,)](x) == pytest.approx(-1 / np.sqrt(3), abs=1e-12)  # -0.577350
    assert alpha[(1,)](x) == alpha[(3,)](x) == 0.0


def test_raise_examples():
    v = raise_index(ETA, basis(CART, 0))
    np.testing.assert_allclose(v(np.zeros(4)), [1, 0, 0, 0])
    w = raise_index(ETA_CYL, basis(CYL, 2))
    np.testing.assert_allclose(w(np.array([0.0, 2.0, 0.0, 0.0])), [0, 0, -0.25, 0], atol=1e-15)


def test_raise_lower_round_trip():
    P = frame_P(0.4)
    back = raise_index(P.metric, lower_index(P.metric, P.vector))
    r = np.linspace(0.1, 2.4, 9)
    pts = np.stack([np.zeros_like(r), r, np.linspace(0, 6, 9), np.ones_like(r)], -1)
    np.testing.assert_allclose(back(pts), P(pts), atol=1e-12)


def test_chart_mismatch_is_rejected():
    with pytest.raises(ChartMismatchError):
        lower_index(ETA, _vec(CYL, 1.0, 0.0, 0.0, 0.0))


def test_singular_metric_detected():
    chart = Chart("flat", ("t", "x", "y", "z"))
    x = F.coordinate(1)
    g = MetricField.diagonal(chart, [1.0, -(x * x), -1.0, -1.0])
    with pytest.raises(SingularMetricError):
        g.inverse(np.zeros(4))
    with pytest.raises(SingularMetricError):
        raise_index(g, basis(chart, 1))(np.zeros(4))


def test_metric_signature_and_determinant():
    x = np.array([0.0, 2.0, 0.3, 0.0])
    assert ETA_CYL.determinant(x) == pytest.approx(-4.0)
    np.testing.assert_array_equal(ETA_CYL.signature(x), [1, 3])
    assert ETA_CYL[2, 2](np.array([0.0, 3.0, 0.0, 0.0])) == pytest.approx(-9.0)


# connection ----------------------------------------------------------------------

def test_christoffel_cartesian_vanishes():
    assert np.all(christoffel(ETA, np.random.default_rng(0).normal(size=(5, 4))) == 0)


def test_christoffel_cylindrical():
    G = christoffel(ETA_CYL, np.array([0.0, 2.0, 0.7, 0.0]))
    expected = np.zeros((4, 4, 4))
    expected[1, 2, 2] = -2.0
    expected[2, 1, 2] = expected[2, 2, 1] = 0.5
    np.testing.assert_allclose(G, expected, atol=1e-15)


def test_christoffel_checks_domain():
    with pytest.raises(DomainError):
        christoffel(ETA_CYL, np.array([0.0, 0.0, 0.0, 0.0]))


def _random_metric(data):
    e = [data.draw(trees) for _ in range(6)]
    diag = [2.0 + F.tanh(to_field(e[0]))] + [-(2.0 + F.tanh(to_field(e[i]))) for i in (1, 2, 3)]
    comps = {(i, i): d for i, d in enumerate(diag)}
    comps[(0, 1)] = 0.3 * F.tanh(to_field(e[4]))
    comps[(2, 3)] = 0.3 * F.tanh(to_field(e[5]))

    def numpy_matrix(x):
        t = [np.tanh(to_numpy(tr, x)) for tr in e]
        m = np.zeros(x.shape[:-1] + (4, 4))
        m[..., 0, 0] = 2 + t[0]
        for i in (1, 2, 3):
            m[..., i, i] = -(2 + t[i])
        m[..., 0, 1] = m[..., 1, 0] = 0.3 * t[4]
        m[..., 2, 3] = m[..., 3, 2] = 0.3 * t[5]
        return m

    return MetricField(CART, comps), numpy_matrix


@settings(max_examples=200, deadline=None)
@given(st.data(), points)
def test_metric_compatibility_on_random_metrics(data, x):
    g, _ = _random_metric(data)
    assert np.max(np.abs(covariant_derivative_metric(g, x))) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.data(), points)
def test_christoffel_against_finite_difference_oracle(data, x):
    g, gnp = _random_metric(data)
    dg = np.stack([fd4(gnp, x, r) for r in range(4)])  # [rho, mu, nu]
    bracket = np.einsum("mrn->rmn", dg) + np.einsum("nrm->rmn", dg) - dg
    oracle = 0.5 * np.einsum("lr,rmn->lmn", np.linalg.inv(gnp(x)), bracket)
    G = christoffel(g, x)
    np.testing.assert_allclose(G, oracle, rtol=1e-6, atol=1e-9)
    assert np.array_equal(G, np.swapaxes(G, -1, -2))


def test_covariant_derivative_of_dt_cartesian_is_zero():
    T = covariant_derivative_oneform(ETA, basis(CART, 0))
    assert np.all(T(np.random.default_rng(1).normal(size=(4, 4))) == 0)


def test_covariant_derivative_rotating_one_form_against_differences():
    omega = 0.3
    P = frame_P(omega)
    alpha = P.one_form()
    T = covariant_derivative_oneform(ETA_CYL, alpha)
    x = np.array([0.2, 1.0, 0.4, 0.1])

    def alpha_np(p):
        r = p[..., 1]
        gam = 1 / np.sqrt(1 - omega**2 * r**2)
        return np.stack([gam, 0 * r, -omega * r**2 * gam, 0 * r], -1)

    d = np.stack([fd4(alpha_np, x, n) for n in range(4)], -1)  # [mu, nu]
    oracle = d - np.einsum("lmn,l->mn", christoffel(ETA_CYL, x), alpha_np(x))
    got = T(x)
    assert np.max(np.abs(got)) > 0.1
    np.testing.assert_allclose(got, oracle, atol=1e-7)


# pullbacks -------------------------------------------------------------------------

def test_identity_pullback():
    ident = ChartMap(CYL, CYL, F.coordinates(CYL.coordinates))
    g = pullback_metric(ident, ETA_CYL)
    x = np.array([0.0, 1.3, 0.2, 0.0])
    np.testing.assert_array_equal(g.matrix(x), ETA_CYL.matrix(x))


def test_rotating_chart_pullback():
    _, g = rotating_chart(0.2)
    x = np.array([0.0, 1.0, 0.5, 0.0])
    m = g.matrix(x)
    assert m[0, 0] == pytest.approx(0.96, abs=1e-15)
    assert m[0, 2] == pytest.approx(-0.2, abs=1e-15)
    assert m[2, 2] == pytest.approx(-1.0, abs=1e-15)
    assert m[1, 1] == m[3, 3] == -1.0


def test_rotating_chart_zero_omega_is_identity():
    T, g = rotating_chart(0.0)
    x = np.array([1.5, 0.7, 2.0, 0.3])
    np.testing.assert_array_equal(T(x), x)
    np.testing.assert_array_equal(g.matrix(x), ETA_CYL.matrix(x))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(-3, 3), st.floats(0.05, 1.0), st.floats(0, 6))
def test_map_then_inverse_is_identity(omega, t, r, phi):
    T, _ = rotating_chart(omega)
    x = np.array([t, r, phi, 0.2])
    np.testing.assert_allclose(T.apply_inverse(T(x)), x, atol=1e-12)


def test_pullback_vector_of_rotating_frame():
    omega = 0.5
    T, g = rotating_chart(omega)
    P = frame_P(omega)
    v = pullback_vector(T, VectorField(CYL, P.vector.components))
    x = np.array([0.0, 1.0, 0.3, 0.0])
    gam = 1 / np.sqrt(0.75)
    # purely along the rotating time axis
    np.testing.assert_allclose(v(x), [gam, 0, 0, 0], atol=1e-14)
