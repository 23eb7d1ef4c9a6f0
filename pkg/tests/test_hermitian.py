import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sharpmeans import gen
from sharpmeans.hermitian import (
    DomainError,
    NotHermitianError,
    apply_fn,
    as_hermitian,
    congruence,
    eigh,
    from_json,
    loewner_le,
    loewner_margin,
    mpower,
    require_pd,
    to_json,
)


def test_scalar_promoted_to_1x1():
    X = as_hermitian(3.0)
    assert X.shape == (1, 1) and X.dtype == np.complex128


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        as_hermitian([[1, 2], [0, 1]])


def test_rejects_non_square():
    with pytest.raises(NotHermitianError):
        as_hermitian(np.ones((2, 3)))


def test_rejects_oversized():
    with pytest.raises(ValueError):
        as_hermitian(np.eye(65))


def test_eigh_reconstructs():
    A = gen.random_pd(5, (0.5, 3.0), 1)
    w, V = eigh(A)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose((V * w) @ V.conj().T, A, atol=1e-12)


def test_apply_fn_matches_power():
    A = gen.random_pd(4, (0.5, 3.0), 2)
    S = mpower(A, 0.5)
    assert np.allclose(S @ S, A, atol=1e-12)


def test_apply_fn_domain():
    A = np.diag([1.0, -1.0])
    with pytest.raises(DomainError):
        apply_fn(A, np.sqrt, 0.0)
    # whole real line
    out = apply_fn(A, lambda w: w**2, None)
    assert np.allclose(out, np.eye(2))


def test_apply_fn_rejects_nonfinite():
    with pytest.raises(DomainError):
        apply_fn(np.diag([1.0, 2.0]), lambda w: w / 0.0, None)


def test_congruence():
    A = gen.random_pd(3, (1.0, 2.0), 3)
    U = gen.random_unitary(3, 4)
    C = congruence(A, U)
    assert np.allclose(C, U.conj().T @ A @ U)


def test_margin_of_identity_order():
    # 2I - I has min eigenvalue 1; norms sum to 3
    assert loewner_margin(np.eye(2), 2 * np.eye(2)) == pytest.approx(1 / 3)
    assert loewner_margin(2 * np.eye(2), np.eye(2)) == pytest.approx(-1 / 3)
    assert loewner_le(np.eye(2), np.eye(2))


def test_margin_small_scale_uses_unit_floor():
    assert loewner_margin(np.zeros((1, 1)), 1e-3 * np.eye(1)) == pytest.approx(1e-3)


def test_margin_dimension_mismatch():
    with pytest.raises(ValueError):
        loewner_margin(np.eye(2), np.eye(3))


def test_require_pd():
    with pytest.raises(DomainError):
        require_pd(np.diag([1.0, 0.0]))


def test_json_roundtrip():
    A = gen.random_pd(3, (0.5, 2.0), 5)
    assert np.array_equal(from_json(to_json(A)), A)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1), c=st.floats(0.0, 5.0))
def test_margin_scale_shift(n, seed, c):
    # adding cI to the right side raises lambda_min by exactly c
    A = gen.random_pd(n, (0.5, 2.0), seed)
    B = gen.random_pd(n, (0.5, 2.0), seed + 1)
    lam = np.linalg.eigvalsh(B - A)[0]
    lam2 = np.linalg.eigvalsh(B + c * np.eye(n) - A)[0]
    assert lam2 == pytest.approx(lam + c, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_congruence_preserves_order(n, seed):
    rng = np.random.default_rng(seed)
    A = gen.random_pd(n, (0.5, 2.0), rng)
    P = gen.random_psd(n, 1.0, rng)
    C = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    assert loewner_margin(congruence(A, C), congruence(A + P, C)) >= -1e-12
