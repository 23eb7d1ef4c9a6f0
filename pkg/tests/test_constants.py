import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpmeans.constants import (
    Weight,
    aux_derivative,
    aux_scalar,
    classical_constant,
    corollary_constants,
    endpoint_constants,
    f_p,
    kantorovich,
    power_constants,
    scalar_mean,
    specht,
)

# Frozen with 30-digit mpmath evaluations of the defining formulas.
F_03_2 = 1.05592811526310617939
XIPSI_05_2_03 = 1.11498418460309564917
SPECHT_4 = 1.26374072121581112418
SPECHT_2 = 1.06147569084608597707
F_25_7 = 1.34159205642619213324
F_5_8 = -3793.07116011393397711
C_LIN_1_4_3 = 15.2587890625
C_FUR_1_4_3 = 8.819580078125


def test_aux_values():
    assert aux_scalar("f", 0.37, 1.0) == 1.0
    assert aux_scalar("f", 0.3, 2.0) == pytest.approx(F_03_2, rel=1e-14)
    assert aux_scalar("h", 0.3, 0.5) == pytest.approx(1.105, rel=1e-14)
    assert aux_scalar("f_hat", 0.3, 2.0) == pytest.approx(1 / F_03_2, rel=1e-14)
    assert aux_scalar("F", 0.3, 1.0) == 0.0


def test_aux_errors():
    with pytest.raises(ValueError):
        aux_scalar("f", 0.5, 0.0)
    with pytest.raises(ValueError):
        aux_scalar("q", 0.5, 1.0)
    with pytest.raises(ValueError):
        aux_derivative("f_hat", 0.5, 1.0)


def test_g_is_f_at_reciprocal():
    for v, x in itertools.product((0.1, 0.3, 0.8), (0.2, 0.5, 3.0)):
        assert aux_scalar("g", v, x) == pytest.approx(aux_scalar("f", v, 1 / x), rel=1e-14)


def test_endpoint_constants_examples():
    c = endpoint_constants(1.0, 1.0, 0.4)
    assert (c.xi, c.psi, c.alpha) == (1.0, 1.0, 1.0)
    c = endpoint_constants(0.25, 4.0, 0.5)
    assert c.xi == pytest.approx(1.25) and c.psi == pytest.approx(1.25)
    assert c.xi * c.psi == pytest.approx(25 / 16, rel=1e-14)
    c = endpoint_constants(0.5, 2.0, 0.3)
    assert c.xi == pytest.approx(F_03_2, rel=1e-14) and c.xi_at == "t"
    assert c.psi == pytest.approx(F_03_2, rel=1e-14) and c.psi_at == "s"
    assert c.alpha == pytest.approx(1.105, rel=1e-14)
    assert c.xi * c.psi == pytest.approx(XIPSI_05_2_03, rel=1e-14)
    assert c.endpoint("xi", 0.5, 2.0) == 2.0


def test_endpoint_constants_errors():
    with pytest.raises(ValueError):
        endpoint_constants(2.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        endpoint_constants(0.0, 1.0, 0.5)


def test_scalar_means():
    assert scalar_mean("geom", 0.5, 1, 4) == pytest.approx(2.0)
    assert scalar_mean("harm", 0.5, 1, 4) == pytest.approx(1.6)
    assert scalar_mean("arith", 0.25, 2, 2) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        scalar_mean("geom", 0.5, -1, 4)


def test_classical_constants():
    assert specht(1.0) == 1.0
    assert kantorovich(4.0) == 1.5625
    assert classical_constant("specht", 4.0) == pytest.approx(SPECHT_4, rel=1e-13)
    assert classical_constant("specht", 2.0) == pytest.approx(SPECHT_2, rel=1e-13)
    # S(t) = S(1/t)
    assert specht(0.25) == pytest.approx(SPECHT_4, rel=1e-13)
    with pytest.raises(ValueError):
        classical_constant("specht", 0.0)
    with pytest.raises(ValueError):
        classical_constant("nope", 2.0)


def test_specht_continuous_at_one():
    # the near-1 expansion must join the closed form smoothly
    for d in (2e-6, 1.5e-6, 1.01e-6):
        for t in (1 + d, 1 - d):
            inside = specht(1 + (t - 1) * 0.999)
            assert specht(t) == pytest.approx(inside, abs=1e-12)


def test_power_constants():
    pc = power_constants(1.0, 4.0, 3.0)
    assert pc.c_lin == pytest.approx(C_LIN_1_4_3, rel=1e-13)
    assert pc.c_fur == pytest.approx(C_FUR_1_4_3, rel=1e-13)
    assert pc.eta == pc.c_fur
    two = power_constants(1.0, 4.0, 2.0)
    assert two.c_lin == pytest.approx(two.c_fur, rel=1e-14)
    with pytest.raises(ValueError):
        power_constants(1.0, 4.0, 1.5)
    with pytest.raises(ValueError):
        power_constants(4.0, 1.0, 3.0)


def test_f_p_values():
    assert f_p(2.5, 7.0) == pytest.approx(F_25_7, rel=1e-10)
    assert f_p(5.0, 8.0) == pytest.approx(F_5_8, rel=1e-10)
    for x in (1.0, 4.0, 10.0):
        assert abs(f_p(2.0, x)) <= 1e-10


def test_weight():
    w = Weight(0.3)
    assert (w.lam, w.mu) == (0.3, 0.7)
    assert w.lam + w.mu == 1


def test_corollary_constant_identity_at_half():
    m, M = 1.0, 4.0
    lo, hi = corollary_constants(m, M, 0.5)
    assert 1 / lo == pytest.approx(hi, rel=1e-14)
    assert scalar_mean("geom", 0.5, m, M) / scalar_mean("harm", 0.5, m, M) == pytest.approx(
        scalar_mean("arith", 0.5, m, M) / scalar_mean("geom", 0.5, m, M), rel=1e-14)


@pytest.mark.parametrize("name", ["f", "g", "h", "F", "G"])
def test_derivatives_match_finite_differences(name):
    vs = (0.1, 0.25, 0.75, 0.9) if name in "FG" else (0.1, 0.25, 0.5, 0.75, 0.9)
    for v in vs:
        for x in np.geomspace(0.1, 10, 25):
            if abs(x - 1) < 1e-3:
                continue
            h = 1e-5 * x
            fd = (aux_scalar(name, v, x + h) - aux_scalar(name, v, x - h)) / (2 * h)
            exact = aux_derivative(name, v, x)
            assert abs(fd - exact) <= 1e-6 * abs(exact), (name, v, x)


def test_lemma_signs_on_grid():
    for x in np.linspace(0.01, 1.0, 60):
        for v in np.linspace(0, 0.5, 11):
            assert aux_scalar("F", v, x) <= 1e-15 and aux_scalar("G", v, x) >= -1e-15
        for v in np.linspace(0.5, 1, 11):
            assert aux_scalar("F", v, x) >= -1e-15 and aux_scalar("G", v, x) <= 1e-15


def test_arith_below_xi_geom():
    rng = np.random.default_rng(11)
    for _ in range(50):
        s, t = np.sort(np.exp(rng.uniform(-2, 2, 2)))
        v = rng.uniform()
        xi = endpoint_constants(s, t, v).xi
        for x in rng.uniform(s, t, 200):
            assert (1 - v) + v * x <= xi * x**v * (1 + 1e-14)


def test_alpha_vs_xi_psi():
    for v in (0.1, 0.3, 0.5, 0.8):
        for s, t in ((0.2, 3.0), (0.5, 2.0), (0.9, 1.1)):
            c = endpoint_constants(s, t, v)
            assert c.alpha <= c.xi * c.psi + 1e-12
        for s, t in ((0.2, 0.7), (1.5, 4.0)):
            c = endpoint_constants(s, t, v)
            assert c.alpha == pytest.approx(c.xi * c.psi, rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(s=st.floats(0.05, 1.0), t=st.floats(1.0, 20.0), v=st.floats(0.0, 1.0))
def test_constants_at_least_one(s, t, v):
    c = endpoint_constants(s, t, v)
    assert min(c.xi, c.psi, c.alpha) >= 1 - 1e-15


@settings(max_examples=200, deadline=None)
@given(s=st.floats(0.05, 1.0), t=st.floats(1.0, 20.0), v=st.floats(0.0, 1.0),
       a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0))
def test_tightening_never_increases(s, t, v, a, b):
    s2 = s + a * (1 - s)
    t2 = t - b * (t - 1)
    outer, inner = endpoint_constants(s, t, v), endpoint_constants(s2, t2, v)
    assert inner.xi <= outer.xi * (1 + 1e-14)
    assert inner.psi <= outer.psi * (1 + 1e-14)


@settings(max_examples=100, deadline=None)
@given(m=st.floats(0.1, 10.0), r=st.floats(1.0001, 50.0))
def test_xi_psi_identity_at_half(m, r):
    M = m * r
    c = endpoint_constants(m / M, M / m, 0.5)
    assert math.isclose(c.xi * c.psi, (M + m) ** 2 / (4 * M * m), rel_tol=1e-12)
