"""Weighted operator means.

The arithmetic, geometric and harmonic means are defined for every real
weight by their closed forms; a general mean is given by a representing
function ``h`` with ``h(1) = 1`` and evaluated as
``A^(1/2) h(A^(-1/2) B A^(-1/2)) A^(1/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hermitian import DomainError, apply_fn, as_hermitian, congruence, mpower, require_pd

KINDS = ("arithmetic", "geometric", "harmonic", "representing")
CANONICAL = ("harmonic", "geometric", "arithmetic")
_SHORT = {"arith": "arithmetic", "geom": "geometric", "harm": "harmonic"}

BETWEENNESS_GRID = np.logspace(-3, 3, 1000)


def power_mean(p: float) -> Callable[[float], Callable[[np.ndarray], np.ndarray]]:
    """Representing function of the weighted power mean of order ``p``.

    ``p = 1`` is arithmetic, ``p = -1`` harmonic; the limit ``p -> 0`` is the
    geometric mean.
    """

    def make(v):
        if p == 0:
            return lambda x: np.asarray(x, dtype=float) ** v
        return lambda x: ((1 - v) + v * np.asarray(x, dtype=float) ** p) ** (1 / p)

    return make


# built-in representing functions, keyed by config label; each maps v -> h
REPRESENTING = {
    "power_0.5": power_mean(0.5),
    "power_-0.5": power_mean(-0.5),
    "power_0.25": power_mean(0.25),
}


@dataclass(frozen=True)
class MeanDescriptor:
    kind: str
    v: float
    label: str | None = None

    def __post_init__(self):
        kind = _SHORT.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ValueError(f"unknown mean kind {self.kind!r}")
        if kind == "representing":
            if self.label not in REPRESENTING:
                raise ValueError(f"unknown representing function {self.label!r}")
            h1 = float(self.h(np.array([1.0]))[0])
            if abs(h1 - 1) > 1e-12:
                raise ValueError(f"representing function {self.label!r} has h(1) = {h1}")

    @property
    def h(self) -> Callable[[np.ndarray], np.ndarray]:
        v = self.v
        if self.kind == "arithmetic":
            return lambda x: (1 - v) + v * x
        if self.kind == "geometric":
            return lambda x: x**v
        if self.kind == "harmonic":
            return lambda x: 1 / ((1 - v) + v / x)
        return REPRESENTING[self.label](v)

    @property
    def name(self) -> str:
        return self.label if self.kind == "representing" else self.kind

    def __call__(self, A, B) -> np.ndarray:
        return weighted_mean(self, A, B)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "v": self.v}
        if self.kind == "representing":
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MeanDescriptor":
        return cls(d["kind"], float(d["v"]), d.get("label"))


def arithmetic_mean(A, B, v: float) -> np.ndarray:
    A, B = as_hermitian(A, "A"), as_hermitian(B, "B")
    return (1 - v) * A + v * B


def geometric_mean(A, B, v: float) -> np.ndarray:
    A, B = require_pd(A, "A"), require_pd(B, "B")
    return _representing_mean(A, B, lambda x: x**v)


def harmonic_mean(A, B, v: float) -> np.ndarray:
    A, B = require_pd(A, "A"), require_pd(B, "B")
    Ainv, Binv = mpower(A, -1.0), mpower(B, -1.0)
    inner = (1 - v) * Ainv + v * Binv
    try:
        return mpower(inner, -1.0)
    except DomainError as exc:
        raise DomainError(f"harmonic mean with v={v}: combined inverse is not positive definite") from exc


def _representing_mean(A, B, h) -> np.ndarray:
    w, V = np.linalg.eigh(A)
    sq = (V * np.sqrt(w)) @ V.conj().T
    isq = (V * (1 / np.sqrt(w))) @ V.conj().T
    T = congruence(B, isq)
    return congruence(apply_fn(T, h, 0.0), sq)


def weighted_mean(d: MeanDescriptor, A, B) -> np.ndarray:
    if d.kind == "arithmetic":
        A, B = require_pd(A, "A"), require_pd(B, "B")
        return arithmetic_mean(A, B, d.v)
    if d.kind == "harmonic":
        return harmonic_mean(A, B, d.v)
    if d.kind == "geometric":
        return geometric_mean(A, B, d.v)
    A, B = require_pd(A, "A"), require_pd(B, "B")
    return _representing_mean(A, B, d.h)


def catalog(v: float) -> list[MeanDescriptor]:
    """The canonical means !_v, #_v, nabla_v, in increasing order."""
    return [MeanDescriptor(kind, v) for kind in CANONICAL]


@dataclass(frozen=True)
class Betweenness:
    ok: bool
    worst_violation: float
    at: float


def representing_betweenness(h: Callable[[np.ndarray], np.ndarray], v: float, tol: float = 1e-12) -> Betweenness:
    """Certify ``x/(v + (1-v)x) <= h(x) <= (1-v) + vx`` on a log grid.

    ``worst_violation`` is the largest amount by which either bound is
    exceeded (non-positive when ``ok``), ``at`` the grid point where it
    happens.
    """
    if not 0 <= v <= 1:
        raise ValueError(f"betweenness is defined for v in [0, 1], got {v}")
    x = BETWEENNESS_GRID
    hx = np.asarray(h(x), dtype=float)
    if not np.all(np.isfinite(hx)):
        bad = x[~np.isfinite(hx)][0]
        raise ValueError(f"representing function is not finite at x={bad:g}")
    lower = x / (v + (1 - v) * x)
    upper = (1 - v) + v * x
    excess = np.maximum(lower - hx, hx - upper)
    i = int(np.argmax(excess))
    worst = float(excess[i])
    return Betweenness(worst <= tol, worst, float(x[i]))
