"""Scalar functions with declared operator classes.

A declaration (operator monotone, monotone decreasing, convex, concave) is
not something pointwise values can prove, so ``verify_function_class``
searches random instances for a counterexample instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import gen
from .hermitian import DEFAULT_TOL, apply_fn, loewner_margin, to_json

CLASSES = frozenset({"monotone", "monotone_decreasing", "convex", "concave"})


@dataclass(frozen=True)
class FunctionDescriptor:
    label: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    declared_class: frozenset
    nonnegative: bool
    # None: defined on the whole real line
    domain_floor: float | None = 0.0

    def __call__(self, A) -> np.ndarray:
        return eval_fn(self, A)

    def scalar(self, x: float) -> float:
        return float(self.evaluate(np.array([x], dtype=float))[0])


def _power(r):
    return lambda x: np.asarray(x, dtype=float) ** r


def _build_registry() -> dict[str, FunctionDescriptor]:
    inc = frozenset({"monotone", "concave"})
    dec = frozenset({"monotone_decreasing"})
    entries = [
        FunctionDescriptor("x^0.25", _power(0.25), inc, True),
        FunctionDescriptor("x^0.5", _power(0.5), inc, True),
        FunctionDescriptor("x^0.75", _power(0.75), inc, True),
        FunctionDescriptor("x", lambda x: np.asarray(x, dtype=float), inc, True),
        FunctionDescriptor("x/(1+x)", lambda x: x / (1 + x), inc, True),
        FunctionDescriptor("log(1+x)", np.log1p, inc, True),
        FunctionDescriptor("x^-0.25", _power(-0.25), dec, True),
        FunctionDescriptor("x^-0.5", _power(-0.5), dec, True),
        FunctionDescriptor("x^-1", _power(-1.0), dec | {"convex"}, True),
        FunctionDescriptor("1/(1+x)", lambda x: 1 / (1 + x), dec, True),
        FunctionDescriptor("x^2", _power(2.0), frozenset({"convex"}), True, None),
    ]
    return {d.label: d for d in entries}


REGISTRY: dict[str, FunctionDescriptor] = _build_registry()


def get(label: str) -> FunctionDescriptor:
    try:
        return REGISTRY[label]
    except KeyError:
        raise KeyError(f"unknown function label {label!r}") from None


def by_class(cls: str) -> list[FunctionDescriptor]:
    if cls not in CLASSES:
        raise ValueError(f"unknown operator class {cls!r}")
    return [d for d in REGISTRY.values() if cls in d.declared_class]


def eval_fn(d: FunctionDescriptor, A) -> np.ndarray:
    return apply_fn(A, d.evaluate, d.domain_floor)


@dataclass
class ClassVerdict:
    consistent: bool
    worst_margin: float
    witness: dict | None


def verify_function_class(d: FunctionDescriptor, cls: str, n: int, trials: int = 100, seed=0,
                          tol: float = DEFAULT_TOL) -> ClassVerdict:
    """Search ``trials`` random PD instances for a violation of ``cls``.

    Monotone classes draw ordered pairs ``A <= B = A + P`` with ``P >= 0``;
    convexity classes draw independent PD pairs and compare the midpoint.
    """
    if cls not in d.declared_class:
        raise ValueError(f"{d.label} does not declare class {cls!r}")
    rng = np.random.default_rng(seed)
    worst, witness = np.inf, None
    for _ in range(trials):
        lo = float(rng.uniform(0.05, 1.0))
        A = gen.random_pd(n, (lo, lo * float(rng.uniform(1.0, 20.0))), rng)
        if cls in ("monotone", "monotone_decreasing"):
            P = gen.random_psd(n, float(rng.uniform(0.1, 5.0)), rng)
            B = A + P
            fA, fB = eval_fn(d, A), eval_fn(d, B)
            margin = loewner_margin(fA, fB) if cls == "monotone" else loewner_margin(fB, fA)
        else:
            B = gen.random_pd(n, (lo, lo * float(rng.uniform(1.0, 20.0))), rng)
            avg_f = (eval_fn(d, A) + eval_fn(d, B)) / 2
            f_avg = eval_fn(d, (A + B) / 2)
            margin = loewner_margin(avg_f, f_avg) if cls == "concave" else loewner_margin(f_avg, avg_f)
        if margin < worst:
            worst = margin
            witness = {"A": to_json(A), "B": to_json(B), "margin": margin}
    consistent = worst >= -tol
    return ClassVerdict(consistent, float(worst), None if consistent else witness)
