"""Dense Hermitian matrices: validation, eigendecomposition, functional
calculus, congruence and Loewner comparison.

Matrices are plain ``complex128`` numpy arrays. Real symmetric input is
promoted to complex on validation.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

HERMITIAN_RTOL = 1e-12
DOMAIN_RTOL = 1e-12
DEFAULT_TOL = 1e-9
MAX_DIM = 64


class NotHermitianError(ValueError):
    """Raised when an input matrix is not Hermitian within tolerance."""


class DomainError(ValueError):
    """Raised when a spectrum leaves the domain of a scalar function."""


class PreconditionError(ValueError):
    """Raised when an instance does not satisfy a statement's hypotheses."""


def symmetry_defect(X: np.ndarray) -> float:
    """Largest entrywise |X - X*| relative to the largest absolute entry."""
    scale = float(np.max(np.abs(X))) if X.size else 0.0
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(X - X.conj().T))) / scale


def as_hermitian(X, name: str = "matrix") -> np.ndarray:
    """Validate ``X`` and return it as a symmetrised complex128 array.

    Scalars and 1-element sequences become 1x1 matrices.
    """
    X = np.asarray(X, dtype=np.complex128)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] == 0:
        raise NotHermitianError(f"{name} must be a non-empty square matrix, got shape {X.shape}")
    if X.shape[0] > MAX_DIM:
        raise ValueError(f"{name} has dimension {X.shape[0]} > {MAX_DIM}")
    defect = symmetry_defect(X)
    if defect > HERMITIAN_RTOL:
        raise NotHermitianError(f"{name} is not Hermitian: relative symmetry defect {defect:.3e}")
    return (X + X.conj().T) / 2


def spectral_norm(X: np.ndarray) -> float:
    return float(np.linalg.norm(X, 2))


def eigh(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    A = as_hermitian(A)
    w, V = np.linalg.eigh(A)
    return w, V


def eigvalsh(A) -> np.ndarray:
    return np.linalg.eigvalsh(as_hermitian(A))


def apply_fn(A, phi: Callable[[np.ndarray], np.ndarray], domain_floor: float | None = 0.0) -> np.ndarray:
    """Return ``V diag(phi(w)) V*`` for ``A = V diag(w) V*``.

    Every eigenvalue must exceed ``domain_floor + 1e-12 * ||A||``; pass
    ``domain_floor=None`` for functions defined on the whole real line.
    """
    w, V = eigh(A)
    if domain_floor is not None:
        # ||A||_2 = max |w| for Hermitian A
        cutoff = domain_floor + DOMAIN_RTOL * float(np.max(np.abs(w)))
        if w[0] <= cutoff:
            raise DomainError(
                f"eigenvalue {w[0]:.6e} is not above the domain floor {domain_floor:g}"
            )
    fw = np.asarray(phi(w), dtype=np.float64)
    if not np.all(np.isfinite(fw)):
        raise DomainError("scalar function is not finite on the spectrum")
    out = (V * fw) @ V.conj().T
    return (out + out.conj().T) / 2


def mpower(A, p: float) -> np.ndarray:
    """Fractional power of a positive definite matrix."""
    return apply_fn(A, lambda w: w**p, 0.0)


def congruence(X, C) -> np.ndarray:
    """Return ``C* X C``."""
    X = as_hermitian(X)
    C = np.asarray(C, dtype=np.complex128)
    if C.ndim == 0:
        C = C.reshape(1, 1)
    if C.ndim != 2 or C.shape[0] != X.shape[0]:
        raise ValueError(f"congruence: shapes {X.shape} and {C.shape} are incompatible")
    out = C.conj().T @ X @ C
    return (out + out.conj().T) / 2


def loewner_margin(L, R) -> float:
    """Signed, scale-free margin of ``L <= R``.

    ``lambda_min(R - L) / max(1, ||R|| + ||L||)``; the order holds when the
    margin is at least ``-tol``.
    """
    L = as_hermitian(L, "left side")
    R = as_hermitian(R, "right side")
    if L.shape != R.shape:
        raise ValueError(f"loewner_margin: dimension mismatch {L.shape} vs {R.shape}")
    lam = float(np.linalg.eigvalsh(R - L)[0])
    return lam / max(1.0, spectral_norm(R) + spectral_norm(L))


def loewner_le(L, R, tol: float = DEFAULT_TOL) -> bool:
    return loewner_margin(L, R) >= -tol


def is_positive_definite(A) -> bool:
    w = eigvalsh(A)
    return bool(w[0] > DOMAIN_RTOL * max(float(np.max(np.abs(w))), 0.0))


def require_pd(A, name: str = "matrix") -> np.ndarray:
    A = as_hermitian(A, name)
    if not is_positive_definite(A):
        raise DomainError(f"{name} is not positive definite (min eigenvalue {eigvalsh(A)[0]:.3e})")
    return A


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def to_json(X) -> dict:
    X = np.asarray(X, dtype=np.complex128)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    return {"dim": int(X.shape[0]), "re": X.real.ravel().tolist(), "im": X.imag.ravel().tolist()}


def from_json(obj: dict) -> np.ndarray:
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj["im"], dtype=np.float64)
    if re.size != n * n or im.size != n * n:
        raise ValueError(f"matrix payload does not hold {n}x{n} entries")
    return as_hermitian((re + 1j * im).reshape(n, n))
