"""Tsallis relative operator entropy and its two-sided bounds for pairs with
separated spectra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import arith, geom, harm
from .hermitian import PreconditionError, apply_fn, congruence, eigvalsh, require_pd, spectral_norm
from .means import arithmetic_mean, geometric_mean, harmonic_mean

SELF_CHECK_TOL = 1e-10


def ln_v(x, v: float):
    return (np.asarray(x, dtype=float) ** v - 1) / v


def tsallis(A, B, v: float) -> np.ndarray:
    """``T_v(A|B) = (A #_v B - A) / v`` for ``v`` in (0, 1].

    Also evaluated as ``A^(1/2) ln_v(A^(-1/2) B A^(-1/2)) A^(1/2)``; the two
    must agree to 1e-10 relative to the operand scale.
    """
    if not 0 < v <= 1:
        raise ValueError(f"Tsallis entropy needs v in (0, 1], got {v}")
    A, B = require_pd(A, "A"), require_pd(B, "B")
    via_mean = (geometric_mean(A, B, v) - A) / v
    w, V = np.linalg.eigh(A)
    sq = (V * np.sqrt(w)) @ V.conj().T
    isq = (V * (1 / np.sqrt(w))) @ V.conj().T
    via_log = congruence(apply_fn(congruence(B, isq), lambda x: ln_v(x, v), 0.0), sq)
    scale = max(1.0, (spectral_norm(A) + spectral_norm(B)) / v)
    gap = spectral_norm(via_mean - via_log) / scale
    if gap > SELF_CHECK_TOL:
        raise ArithmeticError(f"Tsallis self-check failed: formulas differ by {gap:.3e}")
    return via_mean


@dataclass
class EntropyBounds:
    nabla_lo: np.ndarray
    nabla_hi: np.ndarray
    harm_lo: np.ndarray
    harm_hi: np.ndarray

    def as_list(self) -> list[np.ndarray]:
        return [self.nabla_lo, self.nabla_hi, self.harm_lo, self.harm_hi]


def check_separated(case: str, m2: float, m1: float, M1: float, M2: float, A, B, slack: float = 1e-10) -> None:
    """Validate ``m2 <= spec(lower) <= m1 < M1 <= spec(upper) <= M2``.

    In case ``i`` the lower operand is ``A``; in case ``ii`` it is ``B``.
    """
    if case not in ("i", "ii"):
        raise ValueError(f"case must be 'i' or 'ii', got {case!r}")
    if not (0 < m2 <= m1 < M1 <= M2):
        raise PreconditionError(f"need 0 < m2 <= m1 < M1 <= M2, got {(m2, m1, M1, M2)}")
    low, high = (A, B) if case == "i" else (B, A)
    wl, wh = eigvalsh(low), eigvalsh(high)
    eps = slack * M2
    if wl[0] < m2 - eps or wl[-1] > m1 + eps or wh[0] < M1 - eps or wh[-1] > M2 + eps:
        raise PreconditionError(
            f"spectra [{wl[0]:.6g}, {wl[-1]:.6g}] and [{wh[0]:.6g}, {wh[-1]:.6g}] "
            f"violate the separation {(m2, m1, M1, M2)}"
        )


def _scalar_pairs(case, m2, m1, M1, M2):
    # (outer-lower, outer-upper) pairs fed to the scalar means, per case
    if case == "i":
        return (m2, M2), (m1, M1)
    return (M2, m2), (M1, m1)


def c8_bounds(case: str, m2: float, m1: float, M1: float, M2: float, v: float, A, B) -> EntropyBounds:
    """Lower/upper bounds on ``T_v(A|B)`` from the nabla and harmonic families.

    The harmonic family uses ``A !_v B`` as its inner mean.
    """
    if not 0 < v <= 1:
        raise ValueError(f"entropy bounds need v in (0, 1], got {v}")
    A, B = require_pd(A, "A"), require_pd(B, "B")
    check_separated(case, m2, m1, M1, M2, A, B)
    (a_out, b_out), (a_in, b_in) = _scalar_pairs(case, m2, m1, M1, M2)
    nab, har = arithmetic_mean(A, B, v), harmonic_mean(A, B, v)

    def nabla_bound(a, b):
        return (geom(v, a, b) * nab - arith(v, a, b) * A) / (v * arith(v, a, b))

    def harm_bound(a, b):
        return (geom(v, a, b) * har - harm(v, a, b) * A) / (v * harm(v, a, b))

    return EntropyBounds(
        nabla_lo=nabla_bound(a_out, b_out),
        nabla_hi=nabla_bound(a_in, b_in),
        harm_lo=harm_bound(a_in, b_in),
        harm_hi=harm_bound(a_out, b_out),
    )


def c8_literal_bounds(case: str, m2: float, m1: float, M1: float, M2: float, v: float, A, B) -> tuple[np.ndarray, np.ndarray]:
    """The harmonic-family bounds with ``A nabla_v B`` as inner mean, as printed.

    Kept for diagnostics only: the lower bound is not valid in general.
    """
    A, B = require_pd(A, "A"), require_pd(B, "B")
    check_separated(case, m2, m1, M1, M2, A, B)
    (a_out, b_out), (a_in, b_in) = _scalar_pairs(case, m2, m1, M1, M2)
    nab = arithmetic_mean(A, B, v)

    def bound(a, b):
        return (geom(v, a, b) * nab - harm(v, a, b) * A) / (v * harm(v, a, b))

    return bound(a_in, b_in), bound(a_out, b_out)
