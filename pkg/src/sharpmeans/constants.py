"""Scalar constants for reverse mean inequalities.

Covers the auxiliary ratio functions, the endpoint constants ``xi``, ``psi``
and ``alpha`` of a sandwich ``sA <= B <= tA``, scalar weighted means, the
Kantorovich and Specht constants, and the constants used when raising the
arithmetic/geometric reverse to a power ``p >= 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

AUX_NAMES = ("f", "g", "h", "f_hat", "F", "G")


def _f(v, x):
    return ((1 - v) + v * x) / x**v


def _g(v, x):
    return x**v * ((1 - v) + v / x)


def _h(v, x):
    return ((1 - v) + v * x) * ((1 - v) + v / x)


def _f_hat(v, x):
    return x**v / ((1 - v) + v * x)


def aux_scalar(name: str, v: float, x: float) -> float:
    """Evaluate one of the auxiliary functions at ``x > 0``.

    ``f`` is arithmetic over geometric, ``g`` geometric over harmonic, ``h``
    arithmetic over harmonic, ``f_hat = 1/f``; ``F`` and ``G`` compare ``f``
    and ``g`` at ``x`` and ``1/x``.
    """
    if not x > 0:
        raise ValueError(f"aux_scalar requires x > 0, got {x}")
    if name == "f":
        return _f(v, x)
    if name == "g":
        return _g(v, x)
    if name == "h":
        return _h(v, x)
    if name == "f_hat":
        return _f_hat(v, x)
    if name == "F":
        return _f(v, x) - _f(v, 1 / x)
    if name == "G":
        return _g(v, x) - _g(v, 1 / x)
    raise ValueError(f"unknown auxiliary function {name!r}; expected one of {AUX_NAMES}")


def aux_derivative(name: str, v: float, x: float) -> float:
    """Closed-form derivative of ``f``, ``g``, ``h``, ``F`` or ``G``."""
    if name == "f":
        return v * (1 - v) * (x - 1) * x ** (-v - 1)
    if name == "g":
        return v * (1 - v) * x ** (v - 2) * (x - 1)
    if name == "h":
        return v * (1 - v) * (x * x - 1) / (x * x)
    if name == "F":
        return v * (1 - v) * (x - 1) * (1 - x ** (2 * v - 1)) / x ** (v + 1)
    if name == "G":
        return v * (1 - v) * (x - 1) * (x ** (2 * v - 1) - 1) / x ** (v + 1)
    raise ValueError(f"no closed-form derivative for {name!r}")


@dataclass(frozen=True)
class Weight:
    v: float

    @property
    def lam(self) -> float:
        return min(self.v, 1 - self.v)

    @property
    def mu(self) -> float:
        return max(self.v, 1 - self.v)


@dataclass(frozen=True)
class ConstantBundle:
    xi: float
    psi: float
    alpha: float
    xi_at: str
    psi_at: str
    alpha_at: str

    def endpoint(self, which: str, s: float, t: float) -> float:
        return s if getattr(self, f"{which}_at") == "s" else t


def _endpoint_max(fn: Callable[[float], float], s: float, t: float) -> tuple[float, str]:
    fs, ft = fn(s), fn(t)
    return (fs, "s") if fs >= ft else (ft, "t")


def endpoint_constants(s: float, t: float, v: float) -> ConstantBundle:
    """Maxima of ``f_v``, ``g_v`` and ``h_v`` over ``[s, t]``.

    Each function decreases on (0, 1] and increases on [1, inf), so the
    maximum over an interval sits at one of its endpoints.
    """
    if not (0 < s <= t):
        raise ValueError(f"endpoint_constants requires 0 < s <= t, got s={s}, t={t}")
    xi, xi_at = _endpoint_max(lambda x: _f(v, x), s, t)
    psi, psi_at = _endpoint_max(lambda x: _g(v, x), s, t)
    alpha, alpha_at = _endpoint_max(lambda x: _h(v, x), s, t)
    return ConstantBundle(xi, psi, alpha, xi_at, psi_at, alpha_at)


def scalar_mean(kind: str, v: float, a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise ValueError(f"scalar_mean requires positive arguments, got {a}, {b}")
    if kind in ("arith", "arithmetic"):
        return (1 - v) * a + v * b
    if kind in ("geom", "geometric"):
        return a ** (1 - v) * b**v
    if kind in ("harm", "harmonic"):
        return 1.0 / ((1 - v) / a + v / b)
    raise ValueError(f"unknown scalar mean {kind!r}")


def arith(v, a, b):
    return scalar_mean("arith", v, a, b)


def geom(v, a, b):
    return scalar_mean("geom", v, a, b)


def harm(v, a, b):
    return scalar_mean("harm", v, a, b)


def kantorovich(t: float) -> float:
    if not t > 0:
        raise ValueError(f"Kantorovich constant requires t > 0, got {t}")
    return (t + 1) ** 2 / (4 * t)


def specht(t: float) -> float:
    """Specht ratio ``t^(1/(t-1)) / (e log t^(1/(t-1)))`` with ``S(1) = 1``."""
    if not t > 0:
        raise ValueError(f"Specht ratio requires t > 0, got {t}")
    d = t - 1
    if abs(d) < 1e-6:
        # S(1 + d) = 1 + d^2/8 - d^3/8 + O(d^4)
        return 1 + d * d / 8 - d**3 / 8
    e = math.log(t) / d
    return math.exp(e) / (math.e * e)


def classical_constant(kind: str, t: float) -> float:
    if kind == "kantorovich":
        return kantorovich(t)
    if kind == "specht":
        return specht(t)
    raise ValueError(f"unknown classical constant {kind!r}")


def f_p(p: float, x: float) -> float:
    """Difference between the two power constants at condition ratio ``x``.

    Positive where the Kantorovich-type repair constant is worse.
    """
    lin = ((x + 1) ** 2 / (4 ** (2 / p) * x)) ** p
    fur = (1 + x ** (p - 1)) ** 2 / (4 * x ** (p - 1)) * ((1 + x) / (2 * math.sqrt(x))) ** p
    return lin - fur


@dataclass(frozen=True)
class PowerConstants:
    p: float
    c_lin: float
    c_fur: float
    eta: float

    def f_p_value(self, x: float) -> float:
        return f_p(self.p, x)


def power_constants(m: float, M: float, p: float) -> PowerConstants:
    if p < 2:
        raise ValueError(f"power constants need p >= 2, got {p}")
    if not (0 < m < M):
        raise ValueError(f"power constants need 0 < m < M, got m={m}, M={M}")
    c_lin = ((m + M) ** 2 / (4 ** (2 / p) * m * M)) ** p
    q = p - 1
    c_fur = (M**q + m**q) ** 2 / (4 * m**q * M**q) * ((M + m) / (2 * math.sqrt(m * M))) ** p
    return PowerConstants(p, c_lin, c_fur, min(c_lin, c_fur))


def corollary_constants(m: float, M: float, v: float) -> tuple[float, float]:
    """Lower and upper ratio constants under ``mI <= A, B <= MI``.

    Returns ``(m #_lam M)/(m nabla_lam M)`` and ``(m #_mu M)/(m !_mu M)``.
    """
    w = Weight(v)
    lower = geom(w.lam, m, M) / arith(w.lam, m, M)
    upper = geom(w.mu, m, M) / harm(w.mu, m, M)
    return lower, upper


def ratio_nabla(v: float, a: float, b: float) -> float:
    """``(a #_v b) / (a nabla_v b)``."""
    return geom(v, a, b) / arith(v, a, b)


def ratio_harm(v: float, a: float, b: float) -> float:
    """``(a #_v b) / (a !_v b)``."""
    return geom(v, a, b) / harm(v, a, b)


def hoa_constant(m: float, M: float) -> float:
    return (M + m) ** 2 / (4 * M * m)


def polya_szego_constant(m: float, M: float) -> float:
    return (M + m) / (2 * math.sqrt(M * m))
