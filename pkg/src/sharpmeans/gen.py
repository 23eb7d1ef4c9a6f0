"""Seeded random instances.

Every generator accepts anything ``numpy.random.default_rng`` accepts (an
integer seed, a ``SeedSequence`` or a ``Generator``), so a draw is a pure
function of the seed material. ``substream`` derives independent per-trial
generators from a base seed and integer keys.
"""
from __future__ import annotations

import zlib

import numpy as np

from .hermitian import as_hermitian, congruence, mpower


def substream(seed: int, *keys) -> np.random.Generator:
    """Generator for the stream ``keys`` under base ``seed``.

    String keys are hashed with CRC-32 so check ids can label streams.
    """
    key = tuple(zlib.crc32(k.encode()) if isinstance(k, str) else int(k) for k in keys)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=key))


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    if n < 1:
        raise ValueError("random_unitary needs n >= 1")
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_isometry(n: int, k: int, seed=None) -> np.ndarray:
    """First ``k`` columns of a Haar unitary: an ``n x k`` isometry."""
    if not 1 <= k <= n:
        raise ValueError(f"isometry needs 1 <= k <= n, got n={n}, k={k}")
    return random_unitary(n, seed)[:, :k]


def _check_interval(interval) -> tuple[float, float]:
    lo, hi = (float(x) for x in interval)
    if not (0 < lo <= hi):
        raise ValueError(f"spectral interval must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
    return lo, hi


def random_spectrum(n: int, interval, seed=None) -> np.ndarray:
    """Eigenvalues uniform in ``[lo, hi]`` with both endpoints present for n >= 2."""
    lo, hi = _check_interval(interval)
    rng = np.random.default_rng(seed)
    w = rng.uniform(lo, hi, size=n)
    if n >= 2:
        w[0], w[1] = lo, hi
        rng.shuffle(w)
    return w


def random_pd(n: int, interval, seed=None) -> np.ndarray:
    """Random positive definite matrix with spectrum in ``interval``."""
    lo, hi = _check_interval(interval)
    if lo == hi:
        return lo * np.eye(n, dtype=np.complex128)
    rng = np.random.default_rng(seed)
    w = random_spectrum(n, interval, rng)
    U = random_unitary(n, rng)
    return as_hermitian((U * w) @ U.conj().T)


def random_psd(n: int, scale: float, seed=None) -> np.ndarray:
    """Random positive semidefinite matrix of random rank with norm <= scale."""
    rng = np.random.default_rng(seed)
    rank = int(rng.integers(1, n + 1))
    w = np.zeros(n)
    w[:rank] = rng.uniform(0.0, scale, size=rank)
    U = random_unitary(n, rng)
    return as_hermitian((U * w) @ U.conj().T)


def sandwich_pair(n: int, s: float, t: float, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """PD pair with ``sA <= B <= tA``, built as ``B = A^(1/2) C A^(1/2)``."""
    if not (0 < s <= t):
        raise ValueError(f"sandwich needs 0 < s <= t, got s={s}, t={t}")
    rng = np.random.default_rng(seed)
    A = random_pd(n, (0.5, 2.0), rng)
    if s == t:
        return A, s * A
    C = random_pd(n, (s, t), rng)
    B = congruence(C, mpower(A, 0.5))
    return A, B


def bounded_pair(n: int, m: float, M: float, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """Independent PD pair with ``mI <= A, B <= MI``."""
    rng = np.random.default_rng(seed)
    return random_pd(n, (m, M), rng), random_pd(n, (m, M), rng)


def ordered_pair(n: int, m2: float, m1: float, M1: float, M2: float, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """PD pair with ``m2 I <= A <= m1 I < M1 I <= B <= M2 I``."""
    if not (0 < m2 <= m1 < M1 <= M2):
        raise ValueError(f"ordered pair needs 0 < m2 <= m1 < M1 <= M2, got {(m2, m1, M1, M2)}")
    rng = np.random.default_rng(seed)
    return random_pd(n, (m2, m1), rng), random_pd(n, (M1, M2), rng)


def random_unit_vector(n: int, seed=None) -> np.ndarray:
    if n < 1:
        raise ValueError("random_unit_vector needs n >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)
