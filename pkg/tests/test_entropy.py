import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpmeans import gen
from sharpmeans.entropy import c8_bounds, c8_literal_bounds, check_separated, tsallis
from sharpmeans.hermitian import PreconditionError, loewner_margin


def test_tsallis_identities():
    A = gen.random_pd(3, (0.5, 2.0), 1)
    B = gen.random_pd(3, (0.5, 2.0), 2)
    assert np.allclose(tsallis(A, A, 0.4), 0, atol=1e-12)
    assert np.allclose(tsallis(A, B, 1.0), B - A, atol=1e-12)
    assert tsallis(1.0, 4.0, 0.5)[0, 0].real == pytest.approx(2.0)


def test_tsallis_rejects_v():
    with pytest.raises(ValueError):
        tsallis(1.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        tsallis(1.0, 2.0, 1.5)


def test_scalar_equality_collapse():
    b = c8_bounds("i", 1, 1, 4, 4, 0.5, 1.0, 4.0)
    for X in b.as_list():
        assert X[0, 0].real == pytest.approx(2.0, abs=1e-12)


def test_literal_counterexample():
    lo, hi = c8_literal_bounds("i", 1, 1, 4, 4, 0.5, 1.0, 4.0)
    assert lo[0, 0].real == pytest.approx(4.25, abs=1e-12)
    assert lo[0, 0].real > tsallis(1.0, 4.0, 0.5)[0, 0].real


def test_precondition_errors():
    with pytest.raises(PreconditionError):
        c8_bounds("i", 1, 1, 1, 1, 0.5, 1.0, 1.0)
    with pytest.raises(PreconditionError):
        check_separated("i", 1, 2, 3, 4, 5.0, 3.5)
    with pytest.raises(ValueError):
        check_separated("iii", 1, 2, 3, 4, 1.5, 3.5)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1), v=st.floats(0.05, 1.0), case=st.sampled_from("i ii".split()))
def test_bounds_hold(n, seed, v, case):
    m2, m1, M1, M2 = 0.3, 0.8, 2.0, 6.0
    low, high = gen.ordered_pair(n, m2, m1, M1, M2, seed)
    A, B = (low, high) if case == "i" else (high, low)
    T = tsallis(A, B, v)
    b = c8_bounds(case, m2, m1, M1, M2, v, A, B)
    assert loewner_margin(b.nabla_lo, T) >= -1e-9
    assert loewner_margin(T, b.nabla_hi) >= -1e-9
    assert loewner_margin(b.harm_lo, T) >= -1e-9
    assert loewner_margin(T, b.harm_hi) >= -1e-9
