"""Positive linear maps on matrices.

Every built-in map is unital by construction. Unitaries and isometries are
regenerated from integer seeds, so a map serializes to a small dict.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gen
from .hermitian import DEFAULT_TOL, as_hermitian, identity, loewner_margin, spectral_norm

ISOMETRY_TOL = 1e-10
UNITAL_TOL = 1e-10


class PositiveMap:
    """Base class: subclasses implement ``_apply`` and ``to_dict``."""

    variant = "abstract"
    unital = True

    def __call__(self, X) -> np.ndarray:
        return apply_map(self, X)

    def input_dim(self) -> int | None:
        return None

    def output_dim(self, n: int) -> int:
        return n

    def _apply(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    @property
    def label(self) -> str:
        return self.variant


@dataclass(frozen=True)
class Identity(PositiveMap):
    variant = "identity"

    def _apply(self, X):
        return X

    def to_dict(self):
        return {"variant": self.variant}


@dataclass(frozen=True)
class UnitaryConjugation(PositiveMap):
    n: int
    seed: int
    variant = "unitary_conjugation"

    @cached_property
    def U(self) -> np.ndarray:
        return gen.random_unitary(self.n, self.seed)

    def input_dim(self):
        return self.n

    def _apply(self, X):
        U = self.U
        return U.conj().T @ X @ U

    def to_dict(self):
        return {"variant": self.variant, "n": self.n, "seed": self.seed}


@dataclass(frozen=True)
class Compression(PositiveMap):
    """``X -> V* X V`` for an ``n x k`` isometry ``V``.

    ``perturb`` scales ``V`` by ``1 + perturb``; a nonzero value deliberately
    breaks the isometry (used to exercise ``validate_map``).
    """

    n: int
    k: int
    seed: int
    perturb: float = 0.0
    variant = "compression"

    @cached_property
    def V(self) -> np.ndarray:
        return (1 + self.perturb) * gen.random_isometry(self.n, self.k, self.seed)

    def input_dim(self):
        return self.n

    def output_dim(self, n):
        return self.k

    def isometry_defect(self) -> float:
        V = self.V
        return spectral_norm(V.conj().T @ V - np.eye(self.k))

    def _apply(self, X):
        V = self.V
        return V.conj().T @ X @ V

    def to_dict(self):
        d = {"variant": self.variant, "n": self.n, "k": self.k, "seed": self.seed}
        if self.perturb:
            d["perturb"] = self.perturb
        return d


@dataclass(frozen=True)
class Pinching(PositiveMap):
    """Keep the diagonal blocks of sizes ``blocks``, zero the rest."""

    blocks: tuple
    variant = "pinching"

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        if not self.blocks or any(b < 1 for b in self.blocks):
            raise ValueError(f"pinching blocks must be positive sizes, got {self.blocks}")

    def input_dim(self):
        return sum(self.blocks)

    def _apply(self, X):
        out = np.zeros_like(X)
        i = 0
        for b in self.blocks:
            out[i:i + b, i:i + b] = X[i:i + b, i:i + b]
            i += b
        return out

    def to_dict(self):
        return {"variant": self.variant, "blocks": list(self.blocks)}


@dataclass(frozen=True)
class NormalizedTrace(PositiveMap):
    variant = "normalized_trace"

    def _apply(self, X):
        n = X.shape[0]
        return (np.trace(X).real / n) * np.eye(n, dtype=X.dtype)

    def to_dict(self):
        return {"variant": self.variant}


@dataclass(frozen=True)
class ConvexCombination(PositiveMap):
    weights: tuple
    maps: tuple
    variant = "convex_combination"

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(w) != len(self.maps) or not w:
            raise ValueError("convex combination needs one weight per map")
        if min(w) < 0 or abs(sum(w) - 1) > 1e-12:
            raise ValueError(f"convex weights must be nonnegative and sum to 1, got {w}")

    def input_dim(self):
        dims = {m.input_dim() for m in self.maps} - {None}
        if len(dims) > 1:
            raise ValueError(f"convex combination mixes input dimensions {sorted(dims)}")
        return dims.pop() if dims else None

    def output_dim(self, n):
        outs = {m.output_dim(n) for m in self.maps}
        if len(outs) != 1:
            raise ValueError(f"convex combination mixes output dimensions {sorted(outs)}")
        return outs.pop()

    def _apply(self, X):
        return sum(w * m._apply(X) for w, m in zip(self.weights, self.maps))

    def to_dict(self):
        return {"variant": self.variant, "weights": list(self.weights),
                "maps": [m.to_dict() for m in self.maps]}


def apply_map(phi: PositiveMap, X) -> np.ndarray:
    X = as_hermitian(X)
    n = phi.input_dim()
    if n is not None and n != X.shape[0]:
        raise ValueError(f"{phi.label} acts on {n}x{n} matrices, got {X.shape[0]}x{X.shape[0]}")
    phi.output_dim(X.shape[0])
    Y = phi._apply(X)
    return (Y + Y.conj().T) / 2


def map_from_dict(d: dict) -> PositiveMap:
    variant = d["variant"]
    if variant == "identity":
        return Identity()
    if variant == "unitary_conjugation":
        return UnitaryConjugation(int(d["n"]), int(d["seed"]))
    if variant == "compression":
        return Compression(int(d["n"]), int(d["k"]), int(d["seed"]), float(d.get("perturb", 0.0)))
    if variant == "pinching":
        return Pinching(tuple(d["blocks"]))
    if variant == "normalized_trace":
        return NormalizedTrace()
    if variant == "convex_combination":
        return ConvexCombination(tuple(d["weights"]), tuple(map_from_dict(m) for m in d["maps"]))
    raise ValueError(f"unknown map variant {variant!r}")


def _halves(n: int) -> tuple:
    return (n,) if n == 1 else (n // 2, n - n // 2)


def map_catalog(n: int, seed: int) -> list[PositiveMap]:
    """Built-in unital maps acting on ``n x n`` matrices."""
    k = max(1, n // 2)
    conj = UnitaryConjugation(n, seed)
    pinch = Pinching(_halves(n))
    return [
        Identity(),
        conj,
        Compression(n, k, seed + 1),
        pinch,
        NormalizedTrace(),
        ConvexCombination((0.5, 0.3, 0.2), (conj, pinch, NormalizedTrace())),
    ]


@dataclass
class MapVerdict:
    positive_ok: bool
    unital_ok: bool
    worst_margin: float


def validate_map(phi: PositiveMap, n: int, trials: int = 50, seed=0, tol: float = DEFAULT_TOL) -> MapVerdict:
    """Check positivity on random PSD inputs and unitality on the identity."""
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(trials):
        X = gen.random_psd(n, float(rng.uniform(0.1, 10.0)), rng)
        Y = apply_map(phi, X)
        worst = min(worst, loewner_margin(np.zeros_like(Y), Y))
    out = apply_map(phi, identity(n))
    unital_ok = spectral_norm(out - np.eye(out.shape[0])) <= UNITAL_TOL
    if isinstance(phi, Compression):
        unital_ok = unital_ok and phi.isometry_defect() <= ISOMETRY_TOL
    return MapVerdict(bool(worst >= -tol), bool(unital_ok), float(worst))
