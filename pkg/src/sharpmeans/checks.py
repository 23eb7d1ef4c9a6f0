"""Registry of operator inequalities as checkable predicates.

Each check states one result as a list of Loewner comparisons ``L <= R``.
Its margin is the smallest normalized margin over those comparisons, so a
single number summarizes the whole statement; the witness of a failure
names the comparison that broke.

Instances are built by ``make_instance`` from a base seed and a per-trial
substream, which keeps every trial reproducible on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import functions as fn_registry
from . import gen
from .constants import (
    arith,
    corollary_constants,
    endpoint_constants,
    geom,
    harm,
    hoa_constant,
    kantorovich,
    polya_szego_constant,
    power_constants,
    ratio_harm,
    ratio_nabla,
    specht,
    Weight,
)
from .entropy import c8_bounds, c8_literal_bounds, check_separated, tsallis
from .hermitian import (
    DEFAULT_TOL,
    DomainError,
    PreconditionError,
    as_hermitian,
    eigvalsh,
    identity,
    loewner_margin,
    mpower,
    to_json,
)
from .maps import PositiveMap, map_catalog
from .means import arithmetic_mean, catalog, geometric_mean, harmonic_mean, weighted_mean

REGISTRY_VERSION = "1.0"
SANDWICH_SLACK = 1e-11
SPECTRUM_SLACK = 1e-10
N_VECTORS = 8

V_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)
V_GT1_GRID = (1.5, 2.0, 3.0)
V_LT0_GRID = (-0.5, -1.0)
P_GRID = (2.0, 2.5, 3.0, 5.0)

# Spectral parameter sets cycled by trial index. Sandwich sets cover ranges
# straddling 1, lying on one side of 1, and the degenerate s = t.
DEFAULT_INTERVALS = {
    "sandwich": ((0.8, 1.25), (0.25, 4.0), (0.2, 0.8), (1.5, 3.0), (2.0, 2.0)),
    "bounds": ((1.0, 4.0), (0.5, 8.0)),
    "ordered": ((0.5, 1.0, 2.0, 4.0), (1.0, 1.0, 4.0, 4.0), (0.2, 0.5, 3.0, 9.0)),
    # operands close together keep A nabla_v B positive for v outside [0, 1]
    "near": ((1.0, 1.25),),
}

@dataclass
class Instance:
    """Operands of one trial. Scalar checks leave ``A`` and ``B`` unset."""

    A: np.ndarray | None = None
    B: np.ndarray | None = None
    phi: PositiveMap | None = None
    f: str | None = None
    vectors: np.ndarray | None = None

    def to_dict(self) -> dict:
        d = {}
        if self.A is not None:
            d["A"] = to_json(self.A)
        if self.B is not None:
            d["B"] = to_json(self.B)
        if self.phi is not None:
            d["map"] = self.phi.to_dict()
        if self.f is not None:
            d["function"] = self.f
        if self.vectors is not None:
            d["vectors"] = {"re": self.vectors.real.tolist(), "im": self.vectors.imag.tolist()}
        return d


@dataclass
class CheckResult:
    check_id: str
    params: dict
    margin: float
    passed: bool
    witness: dict | None = None
    sharpness_gap: float | None = None
    worst_part: str | None = None

    def to_dict(self) -> dict:
        d = {"check_id": self.check_id, "params": self.params, "margin": self.margin,
             "pass": self.passed, "worst_part": self.worst_part}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.sharpness_gap is not None:
            d["sharpness_gap"] = self.sharpness_gap
        return d


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    instance_kind: str
    grid: str
    evaluate: Callable[[Instance, dict], list] = field(repr=False, compare=False)
    uses: tuple = ()
    asserted: bool = True
    expect_fail: bool = False

    @property
    def schema(self) -> tuple:
        keys = list(_KIND_PARAMS[self.instance_kind])
        keys.append("p" if self.grid == "p" else "v")
        return tuple(keys) + tuple(self.uses)


_KIND_PARAMS = {
    "sandwich": ("s", "t"),
    "bounds": ("m", "M"),
    "ordered_i": ("m2", "m1", "M1", "M2"),
    "ordered_ii": ("m2", "m1", "M1", "M2"),
    "near": ("m", "M"),
    "scalar_x": ("x",),
    "scalar_pair": ("a", "b"),
    "ordered_params": ("m2", "m1", "M1", "M2"),
    "sandwich_params": ("s", "t"),
}

SCALAR_KINDS = frozenset({"scalar_x", "scalar_pair", "ordered_params", "sandwich_params"})


# ---------------------------------------------------------------- helpers

def _s(x: float) -> np.ndarray:
    return np.array([[x]], dtype=np.complex128)


def _fn(label):
    return fn_registry.get(label)


def _means(A, B, v):
    return harmonic_mean(A, B, v), geometric_mean(A, B, v), arithmetic_mean(A, B, v)


def _mean_pairs(v):
    cat = catalog(v)
    return [(sig, tau) for sig in cat for tau in cat]


# ------------------------------------------------------- check statements

def _eq6_chain(x: Instance, p: dict) -> list:
    hm, gm, am = _means(x.A, x.B, p["v"])
    return [("harmonic<=geometric", hm, gm), ("geometric<=arithmetic", gm, am)]


def _thm19(x, p):
    v = p["v"]
    c = endpoint_constants(p["s"], p["t"], v)
    hm, gm, am = _means(x.A, x.B, v)
    return [("arithmetic/xi<=geometric", am / c.xi, gm), ("geometric<=psi*harmonic", gm, c.psi * hm)]


def _lemma21_signs(x, p):
    from .constants import aux_scalar

    v, t = p["v"], p["x"]
    f, fi = aux_scalar("f", v, t), aux_scalar("f", v, 1 / t)
    g, gi = aux_scalar("g", v, t), aux_scalar("g", v, 1 / t)
    if v <= 0.5:
        return [("F<=0", _s(f), _s(fi)), ("G>=0", _s(gi), _s(g))]
    return [("F>=0", _s(fi), _s(f)), ("G<=0", _s(g), _s(gi))]


def _cor10(x, p):
    v = p["v"]
    lo, hi = corollary_constants(p["m"], p["M"], v)
    hm, gm, am = _means(x.A, x.B, v)
    return [("lower", lo * am, gm), ("upper", gm, hi * hm)]


def _remark_kantorovich(x, p):
    v, a, b = p["v"], p["a"], p["b"]
    w = Weight(v)
    k = kantorovich(b / a)
    r = ratio_nabla(v, a, b)
    return [("ratio<=K^-r", _s(r), _s(k ** (-w.lam))), ("1/ratio<=K^R", _s(1 / r), _s(k ** w.mu))]


def _needed_power(x, p):
    m, M = p["m"], p["M"]
    c = arith(0.5, m, M) / geom(0.5, m, M)
    return [("map", x.phi(arithmetic_mean(x.A, x.B, 0.5)), c * x.phi(geometric_mean(x.A, x.B, 0.5)))]


def _power(which):
    def evaluate(x, p):
        pc = power_constants(p["m"], p["M"], p["p"])
        c = getattr(pc, which)
        lhs = mpower(x.phi(arithmetic_mean(x.A, x.B, 0.5)), p["p"])
        return [(which, lhs, c * mpower(x.phi(geometric_mean(x.A, x.B, 0.5)), p["p"]))]
    return evaluate


def _power_eta_maps(x, p):
    pc = power_constants(p["m"], p["M"], p["p"])
    lhs = mpower(x.phi(arithmetic_mean(x.A, x.B, 0.5)), p["p"])
    rhs = pc.eta * mpower(geometric_mean(x.phi(x.A), x.phi(x.B), 0.5), p["p"])
    return [("eta", lhs, rhs)]


def _prop8_nabla(x, p):
    v = p["v"]
    gm, am = geometric_mean(x.A, x.B, v), arithmetic_mean(x.A, x.B, v)
    lo = ratio_nabla(v, p["m2"], p["M2"])
    hi = ratio_nabla(v, p["m1"], p["M1"])
    return [("lower", lo * am, gm), ("upper", gm, hi * am)]


def _prop8_harm(x, p):
    v = p["v"]
    gm, hm = geometric_mean(x.A, x.B, v), harmonic_mean(x.A, x.B, v)
    lo = ratio_harm(v, p["m1"], p["M1"])
    hi = ratio_harm(v, p["m2"], p["M2"])
    return [("lower", lo * hm, gm), ("upper", gm, hi * hm)]


def _prop8_harm_literal(x, p):
    # upper constant with the mixed denominator m1 !_v M2
    v = p["v"]
    gm, hm = geometric_mean(x.A, x.B, v), harmonic_mean(x.A, x.B, v)
    lo = ratio_harm(v, p["m1"], p["M1"])
    hi = geom(v, p["m2"], p["M2"]) / harm(v, p["m1"], p["M2"])
    return [("lower", lo * hm, gm), ("upper_literal", gm, hi * hm)]


def _cor2_2(case):
    def evaluate(x, p):
        v, m2, m1, M1, M2 = p["v"], p["m2"], p["m1"], p["M1"], p["M2"]
        if case == "i":
            c = geom(v, m1, M1) / geom(v, m2, M2) * arith(v, m2, M2) / arith(v, m1, M1)
        else:
            c = geom(v, M1, m1) / geom(v, M2, m2) * arith(v, M2, m2) / arith(v, M1, m1)
        lhs = geometric_mean(x.phi(x.A), x.phi(x.B), v)
        return [("map", lhs, c * x.phi(geometric_mean(x.A, x.B, v)))]
    return evaluate


def _polya_szego(x, p):
    c = polya_szego_constant(p["m"], p["M"])
    lhs = geometric_mean(x.phi(x.A), x.phi(x.B), 0.5)
    return [("map", lhs, c * x.phi(geometric_mean(x.A, x.B, 0.5)))]


def _remark1_3(x, p):
    m2, m1, M1, M2 = p["m2"], p["m1"], p["M1"], p["M2"]
    ci = geom(0.5, m1, M1) / geom(0.5, m2, M2) * arith(0.5, m2, M2) / arith(0.5, m1, M1)
    cii = geom(0.5, M1, m1) / geom(0.5, M2, m2) * arith(0.5, M2, m2) / arith(0.5, M1, m1)
    ps = polya_szego_constant(m2, M2)
    return [("case_i", _s(ci), _s(ps)), ("case_ii", _s(cii), _s(ps))]


def _c8(case):
    def evaluate(x, p):
        v = p["v"]
        T = tsallis(x.A, x.B, v)
        b = c8_bounds(case, p["m2"], p["m1"], p["M1"], p["M2"], v, x.A, x.B)
        return [("nabla_lower", b.nabla_lo, T), ("nabla_upper", T, b.nabla_hi),
                ("harmonic_lower", b.harm_lo, T), ("harmonic_upper", T, b.harm_hi)]
    return evaluate


def _c8_literal(x, p):
    v = p["v"]
    T = tsallis(x.A, x.B, v)
    lo, hi = c8_literal_bounds("i", p["m2"], p["m1"], p["M1"], p["M2"], v, x.A, x.B)
    return [("literal_lower", lo, T), ("literal_upper", T, hi)]


def _eq5(x, p):
    v = p["v"]
    return [("arithmetic<=geometric", arithmetic_mean(x.A, x.B, v), geometric_mean(x.A, x.B, v))]


def _prop13_gt1(x, p):
    v = p["v"]
    gm, am = geometric_mean(x.A, x.B, v), arithmetic_mean(x.A, x.B, v)
    lo = ratio_nabla(v, p["m1"], p["M1"])
    hi = ratio_nabla(v, p["m2"], p["M2"])
    return [("lower", lo * am, gm), ("upper", gm, hi * am)]


def _prop13_lt0(x, p):
    v = p["v"]
    gm, hm = geometric_mean(x.A, x.B, v), harmonic_mean(x.A, x.B, v)
    lo = 1 / ratio_harm(v, p["m1"], p["M1"])
    hi = 1 / ratio_harm(v, p["m2"], p["M2"])
    return [("lower", lo * gm, hm), ("upper", hm, hi * gm)]


def _map_means_f(x, v, const):
    """``f(Phi A) tau f(Phi B) <= const f(Phi(A sigma B))`` over the catalog."""
    f = _fn(x.f)
    fa, fb = f(x.phi(x.A)), f(x.phi(x.B))
    cat = catalog(v)
    left = {tau.name: weighted_mean(tau, fa, fb) for tau in cat}
    right = {sig.name: const * f(x.phi(weighted_mean(sig, x.A, x.B))) for sig in cat}
    return [(f"sigma={s},tau={t}", left[t], right[s]) for s in right for t in left]


def _map_means_g(x, v, const):
    g = _fn(x.f)
    ga, gb = g(x.phi(x.A)), g(x.phi(x.B))
    cat = catalog(v)
    right = {tau.name: const * weighted_mean(tau, ga, gb) for tau in cat}
    left = {sig.name: g(x.phi(weighted_mean(sig, x.A, x.B))) for sig in cat}
    return [(f"sigma={s},tau={t}", left[s], right[t]) for s in left for t in right]


def _thm_c_f(x, p):
    c = endpoint_constants(p["s"], p["t"], p["v"])
    return _map_means_f(x, p["v"], c.xi * c.psi)


def _thm_c_g(x, p):
    c = endpoint_constants(p["s"], p["t"], p["v"])
    return _map_means_g(x, p["v"], c.xi * c.psi)


def _remark_alpha_f(x, p):
    c = endpoint_constants(p["s"], p["t"], p["v"])
    return _map_means_f(x, p["v"], c.alpha)


def _hoa_baseline(x, p):
    return _map_means_f(x, 0.5, hoa_constant(p["m"], p["M"]))


def _additive_f(x, p):
    m, M = p["m"], p["M"]
    f = _fn(x.f)
    k = x.phi(x.A).shape[0]
    bound = (M - m) ** 2 / (4 * M * m) * f.scalar(M) * identity(k)
    return [(label, L - R, bound) for label, L, R in _map_means_f(x, 0.5, 1.0)]


def _additive_g(x, p):
    m, M = p["m"], p["M"]
    g = _fn(x.f)
    k = x.phi(x.A).shape[0]
    bound = (M - m) ** 2 / (4 * M * m) * g.scalar(m) * identity(k)
    return [(label, L - R, bound) for label, L, R in _map_means_g(x, 0.5, 1.0)]


def _sharp_f(x, v, const):
    f = _fn(x.f)
    lhs = geometric_mean(f(x.A), f(x.B), v)
    return [("f", lhs, const * f(geometric_mean(x.A, x.B, v)))]


def _eq15_specht(x, p):
    return _sharp_f(x, p["v"], max(specht(p["s"]), specht(p["t"])))


def _cor_xi_sharp(x, p):
    return _sharp_f(x, p["v"], endpoint_constants(p["s"], p["t"], p["v"]).xi)


def _xi_vs_specht(x, p):
    xi = endpoint_constants(p["s"], p["t"], p["v"]).xi
    return [("xi<=specht", _s(xi), _s(max(specht(p["s"]), specht(p["t"]))))]


def _inner_product_g(x, p):
    v = p["v"]
    c = endpoint_constants(p["s"], p["t"], v)
    g = _fn(x.f)
    ga, gb = g(x.A), g(x.B)
    parts = []
    for sig in catalog(v):
        gs = g(weighted_mean(sig, x.A, x.B))
        for j, h in enumerate(x.vectors):
            lhs = float(np.real(np.vdot(h, gs @ h)))
            qa = float(np.real(np.vdot(h, ga @ h)))
            qb = float(np.real(np.vdot(h, gb @ h)))
            rhs = c.xi * c.psi * qa ** (1 - v) * qb**v
            parts.append((f"sigma={sig.name},h={j}", _s(lhs), _s(rhs)))
    return parts


def _lemma14(convex):
    def evaluate(x, p):
        v = p["v"]
        f = _fn(x.f)
        combo = (1 - v) * f(x.A) + v * f(x.B)
        inner = f(arithmetic_mean(x.A, x.B, v))
        if convex:
            return [("convex", combo, inner)]
        return [("concave", inner, combo)]
    return evaluate


def _final_prop(case, which):
    def evaluate(x, p):
        v = p["v"]
        if case == "i":
            c = ratio_nabla(v, p["m2"], p["M2"])
        else:
            c = ratio_nabla(v, p["M2"], p["m2"])
        f = _fn(x.f)
        gm = geometric_mean(x.A, x.B, v)
        fmean = geometric_mean(f(x.A), f(x.B), v)
        if which == "f":
            return [("f", f(gm), c * fmean)]
        return [("g", fmean, c * f(gm))]
    return evaluate


# --------------------------------------------------------------- registry

def _build() -> dict[str, Check]:
    C = Check
    entries = [
        C("eq6_chain", "weighted harmonic-geometric-arithmetic mean chain", "bounds", "v01", _eq6_chain),
        C("thm19", "sandwich reverse mean inequalities with xi and psi", "sandwich", "v01", _thm19),
        C("lemma21_signs", "sign lemma for f_v(x) - f_v(1/x) and g_v(x) - g_v(1/x)", "scalar_x", "v01",
          _lemma21_signs),
        C("cor10", "bounded-spectrum mean inequalities with lambda and mu", "bounds", "v01", _cor10),
        C("remark_kantorovich_compare", "comparison with Kantorovich-power constants", "scalar_pair", "v01",
          _remark_kantorovich),
        C("needed_power", "map form of the arithmetic-geometric reverse", "bounds", "fixed", _needed_power,
          ("map",)),
        C("power_p_lin", "p-th power with the squared-Kantorovich constant", "bounds", "p", _power("c_lin"),
          ("map",)),
        C("power_p_fur", "p-th power through the Furuta-type constant", "bounds", "p", _power("c_fur"),
          ("map",)),
        C("power_p_eta", "p-th power with the smaller of both constants", "bounds", "p", _power("eta"),
          ("map",)),
        C("power_p_eta_maps", "p-th power against the mean of mapped operands", "bounds", "p",
          _power_eta_maps, ("map",)),
        C("prop8_nabla", "separated spectra, geometric vs arithmetic", "ordered_i", "v01", _prop8_nabla),
        C("prop8_harm", "separated spectra, geometric vs harmonic", "ordered_i", "v01", _prop8_harm),
        C("prop8_harm_literal", "separated spectra, mixed-denominator upper constant", "ordered_i", "v01",
          _prop8_harm_literal, asserted=False, expect_fail=True),
        C("cor2_2_i", "maps under separated spectra, lower operand A", "ordered_i", "v01", _cor2_2("i"),
          ("map",)),
        C("cor2_2_ii", "maps under separated spectra, lower operand B", "ordered_ii", "v01", _cor2_2("ii"),
          ("map",)),
        C("polya_szego", "operator Polya-Szego inequality", "bounds", "fixed", _polya_szego, ("map",)),
        C("remark1_3_improves", "separated-spectra constant below the Polya-Szego constant",
          "ordered_params", "fixed", _remark1_3),
        C("c8_i", "Tsallis entropy bounds, lower operand A", "ordered_i", "v01", _c8("i")),
        C("c8_ii", "Tsallis entropy bounds, lower operand B", "ordered_ii", "v01", _c8("ii")),
        C("c8_literal", "Tsallis entropy harmonic-family bounds with arithmetic inner mean", "ordered_i",
          "v01", _c8_literal, asserted=False, expect_fail=True),
        C("eq5", "arithmetic below geometric for v outside [0, 1]", "bounds", "v_out", _eq5),
        C("prop13_v_gt1", "multiplicative refinement and reverse for v > 1", "ordered_i", "v_gt1",
          _prop13_gt1),
        C("prop13_v_lt0", "multiplicative refinement and reverse for v < 0", "ordered_i", "v_lt0",
          _prop13_lt0),
        C("thm_c_f", "monotone f under maps and means between harmonic and arithmetic", "sandwich", "v01",
          _thm_c_f, ("map", "f")),
        C("thm_c_g", "monotone decreasing g under maps and means", "sandwich", "v01", _thm_c_g,
          ("map", "g")),
        C("remark_alpha_f", "monotone f under maps with the constant alpha", "sandwich", "v01",
          _remark_alpha_f, ("map", "f")),
        C("hoa_baseline", "unweighted means under maps with (M+m)^2/(4Mm)", "bounds", "fixed", _hoa_baseline,
          ("map", "f")),
        C("additive_f", "additive bound (M-m)^2/(4Mm) f(M)", "bounds", "fixed", _additive_f, ("map", "f")),
        C("additive_g", "additive bound (M-m)^2/(4Mm) g(m)", "bounds", "fixed", _additive_g, ("map", "g")),
        C("eq15_specht", "Specht-ratio bound for f(A) #_v f(B)", "sandwich", "v01", _eq15_specht, ("f",)),
        C("cor_xi_sharp", "xi bound for f(A) #_v f(B)", "sandwich", "v01", _cor_xi_sharp, ("f",)),
        C("xi_vs_specht", "xi against the larger Specht ratio", "sandwich_params", "v01", _xi_vs_specht,
          asserted=False),
        C("inner_product_g", "quadratic-form bound for monotone decreasing g", "sandwich", "v01",
          _inner_product_g, ("g", "vectors")),
        C("lemma14_convex", "convex f and arithmetic means for v outside [0, 1]", "near", "v_out",
          _lemma14(True), ("convex",)),
        C("lemma14_concave", "concave f and arithmetic means for v outside [0, 1]", "near", "v_out",
          _lemma14(False), ("concave",)),
        C("final_prop_i_f", "monotone f, geometric means for v > 1", "ordered_i", "v_gt1",
          _final_prop("i", "f"), ("f",)),
        C("final_prop_i_g", "monotone decreasing g, geometric means for v > 1", "ordered_i", "v_gt1",
          _final_prop("i", "g"), ("g",)),
        C("final_prop_ii_f", "monotone f, geometric means for v < 0", "ordered_ii", "v_lt0",
          _final_prop("ii", "f"), ("f",)),
        C("final_prop_ii_g", "monotone decreasing g, geometric means for v < 0", "ordered_ii", "v_lt0",
          _final_prop("ii", "g"), ("g",)),
    ]
    return {c.check_id: c for c in entries}


REGISTRY: dict[str, Check] = _build()

FUNCTION_POOLS = {
    "f": "monotone",
    "g": "monotone_decreasing",
    "convex": "convex",
    "concave": "concave",
}


def get_check(check_id: str) -> Check:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}") from None


def list_checks() -> list[tuple[str, str, str, tuple]]:
    """Sorted ``(check_id, anchor, instance kind, parameter schema)`` rows."""
    return [(c.check_id, c.anchor, c.instance_kind, c.schema) for c in sorted(REGISTRY.values(),
                                                                           key=lambda c: c.check_id)]


def grid_values(check: Check, v_grid=V_GRID, p_grid=P_GRID, v_gt1_grid=V_GT1_GRID,
                v_lt0_grid=V_LT0_GRID) -> list[float]:
    if check.grid == "v01":
        return list(v_grid)
    if check.grid == "p":
        return list(p_grid)
    if check.grid == "v_gt1":
        return list(v_gt1_grid)
    if check.grid == "v_lt0":
        return list(v_lt0_grid)
    if check.grid == "v_out":
        return list(v_gt1_grid) + list(v_lt0_grid)
    return [0.5]


# ---------------------------------------------------------- preconditions

def _spectrum_within(X, lo, hi, name):
    w = eigvalsh(X)
    eps = SPECTRUM_SLACK * max(1.0, hi)
    if w[0] < lo - eps or w[-1] > hi + eps:
        raise PreconditionError(f"spectrum of {name} [{w[0]:.6g}, {w[-1]:.6g}] leaves [{lo:g}, {hi:g}]")


def validate(check: Check, inst: Instance, params: dict) -> None:
    """Raise ``PreconditionError`` unless ``inst`` meets the check's hypotheses."""
    kind = check.instance_kind
    if check.grid in ("v01",) and not 0 <= params["v"] <= 1:
        raise PreconditionError(f"{check.check_id} needs v in [0, 1], got {params['v']}")
    if check.grid == "v_gt1" and not params["v"] > 1:
        raise PreconditionError(f"{check.check_id} needs v > 1, got {params['v']}")
    if check.grid == "v_lt0" and not params["v"] < 0:
        raise PreconditionError(f"{check.check_id} needs v < 0, got {params['v']}")
    if check.grid == "v_out" and 0 <= params["v"] <= 1:
        raise PreconditionError(f"{check.check_id} needs v outside [0, 1], got {params['v']}")
    if check.grid == "p" and params["p"] < 2:
        raise PreconditionError(f"{check.check_id} needs p >= 2, got {params['p']}")
    if kind in SCALAR_KINDS:
        if kind == "scalar_x" and not 0 < params["x"] <= 1:
            raise PreconditionError(f"x must lie in (0, 1], got {params['x']}")
        if kind == "scalar_pair" and not (params["a"] > 0 and params["b"] > 0):
            raise PreconditionError("scalar pair must be positive")
        if kind == "ordered_params" and not (0 < params["m2"] <= params["m1"] < params["M1"] <= params["M2"]):
            raise PreconditionError("need 0 < m2 <= m1 < M1 <= M2")
        if kind == "sandwich_params" and not 0 < params["s"] <= params["t"]:
            raise PreconditionError("need 0 < s <= t")
        return
    A, B = as_hermitian(inst.A, "A"), as_hermitian(inst.B, "B")
    if A.shape != B.shape:
        raise PreconditionError(f"operand shapes differ: {A.shape} vs {B.shape}")
    if kind == "sandwich":
        s, t = params["s"], params["t"]
        if not 0 < s <= t:
            raise PreconditionError(f"need 0 < s <= t, got s={s}, t={t}")
        if eigvalsh(A)[0] <= 0:
            raise PreconditionError("A is not positive definite")
        if loewner_margin(s * A, B) < -SANDWICH_SLACK or loewner_margin(B, t * A) < -SANDWICH_SLACK:
            raise PreconditionError(f"sandwich sA <= B <= tA fails for s={s}, t={t}")
    elif kind in ("bounds", "near"):
        m, M = params["m"], params["M"]
        if not 0 < m <= M:
            raise PreconditionError(f"need 0 < m <= M, got m={m}, M={M}")
        if check.grid == "p" and not m < M:
            raise PreconditionError("power constants need m < M")
        _spectrum_within(A, m, M, "A")
        _spectrum_within(B, m, M, "B")
    elif kind in ("ordered_i", "ordered_ii"):
        check_separated("i" if kind == "ordered_i" else "ii", params["m2"], params["m1"], params["M1"],
                        params["M2"], A, B, SPECTRUM_SLACK)
    if inst.phi is not None and inst.phi.input_dim() not in (None, A.shape[0]):
        raise PreconditionError(f"map acts on dimension {inst.phi.input_dim()}, operands have {A.shape[0]}")


# ---------------------------------------------------------------- running

def evaluate_parts(check_id: str, inst: Instance, params: dict) -> list[tuple[str, float]]:
    """Validated ``(label, margin)`` pairs for every comparison of a check."""
    check = get_check(check_id)
    validate(check, inst, params)
    try:
        parts = check.evaluate(inst, params)
    except DomainError as exc:
        raise PreconditionError(str(exc)) from exc
    return [(label, loewner_margin(L, R)) for label, L, R in parts]


def run_check(check_id: str, inst: Instance, params: dict, tol: float = DEFAULT_TOL) -> CheckResult:
    """Evaluate one check on one instance.

    Raises ``PreconditionError`` when the instance does not meet the
    check's hypotheses; callers count that as a skip, not a failure.
    """
    parts = evaluate_parts(check_id, inst, params)
    label, margin = min(parts, key=lambda lm: lm[1])
    passed = margin >= -tol
    witness = None
    if not passed:
        witness = {"part": label, "margin": margin, "params": params, **inst.to_dict()}
    return CheckResult(check_id, params, float(margin), bool(passed), witness, None, label)


# ---------------------------------------------------------- instance maker

def _cycle(intervals: dict, key: str, trial: int):
    sets = intervals.get(key) or DEFAULT_INTERVALS[key]
    return tuple(float(x) for x in sets[trial % len(sets)])


def make_instance(check_id: str, n: int, value: float, seed: int, trial: int, cell: int = 0,
                  intervals: dict | None = None) -> tuple[Instance, dict]:
    """Random valid instance for ``check_id`` at dimension ``n`` and grid value.

    The draw depends only on ``(seed, check_id, n, cell, trial)``.
    """
    check = get_check(check_id)
    intervals = intervals or {}
    rng = gen.substream(seed, check_id, n, cell, trial)
    params: dict = {"p" if check.grid == "p" else "v": float(value), "n": int(n), "seed": int(seed),
                    "trial": int(trial)}
    kind = check.instance_kind
    inst = Instance()
    if kind == "sandwich":
        s, t = _cycle(intervals, "sandwich", trial)
        params.update(s=s, t=t)
        inst.A, inst.B = gen.sandwich_pair(n, s, t, rng)
    elif kind in ("bounds", "near"):
        m, M = _cycle(intervals, "bounds" if kind == "bounds" else "near", trial)
        params.update(m=m, M=M)
        inst.A, inst.B = gen.bounded_pair(n, m, M, rng)
    elif kind in ("ordered_i", "ordered_ii"):
        m2, m1, M1, M2 = _cycle(intervals, "ordered", trial)
        params.update(m2=m2, m1=m1, M1=M1, M2=M2, case="i" if kind == "ordered_i" else "ii")
        low, high = gen.ordered_pair(n, m2, m1, M1, M2, rng)
        inst.A, inst.B = (low, high) if kind == "ordered_i" else (high, low)
    elif kind == "scalar_x":
        params["x"] = float(rng.uniform(1e-3, 1.0))
    elif kind == "scalar_pair":
        m, M = _cycle(intervals, "bounds", trial)
        a, b = rng.uniform(m, M, size=2)
        params.update(a=float(a), b=float(b))
    elif kind == "ordered_params":
        m2, m1, M1, M2 = np.sort(np.exp(rng.uniform(math.log(0.1), math.log(10.0), size=4)))
        params.update(m2=float(m2), m1=float(m1), M1=float(M1), M2=float(M2))
    elif kind == "sandwich_params":
        s, t = np.sort(np.exp(rng.uniform(math.log(0.1), math.log(10.0), size=2)))
        params.update(s=float(s), t=float(t))
    else:  # pragma: no cover - registry and kinds are defined together
        raise ValueError(f"unknown instance kind {kind!r}")

    if "map" in check.uses:
        maps = map_catalog(n, int(rng.integers(0, 2**31 - 2)))
        inst.phi = maps[int(rng.integers(len(maps)))]
        params["map"] = inst.phi.label
    for use, cls in FUNCTION_POOLS.items():
        if use in check.uses:
            pool = fn_registry.by_class(cls)
            inst.f = pool[int(rng.integers(len(pool)))].label
            params["function"] = inst.f
    if "vectors" in check.uses:
        inst.vectors = np.array([gen.random_unit_vector(n, rng) for _ in range(N_VECTORS)])
    return inst, params


# --------------------------------------------------------------- sharpness

SHARPNESS_CHECKS = ("thm19", "cor10", "prop8_nabla", "prop8_harm", "cor_xi_sharp")


def _probe_candidates(check_id: str, p: dict) -> list[tuple[float, float]]:
    if check_id in ("thm19", "cor_xi_sharp"):
        return [(1.0, p["s"]), (1.0, p["t"])]
    if check_id == "cor10":
        return [(p["m"], p["M"]), (p["M"], p["m"])]
    return [(a, b) for a in (p["m2"], p["m1"]) for b in (p["M1"], p["M2"])]


def probe_params(check_id: str, s: float, t: float, v: float, **extra) -> dict:
    """Parameter record for a probe, filling bounds from ``(s, t)`` when absent.

    ``cor10`` defaults to ``m = s, M = t``; the separated-spectra checks
    default to ``m2 = s/2, m1 = s, M1 = t, M2 = 2t``.
    """
    p = {"s": float(s), "t": float(t), "v": float(v)}
    if check_id == "cor10":
        p["m"] = float(extra.get("m") or s)
        p["M"] = float(extra.get("M") or t)
    elif check_id in ("prop8_nabla", "prop8_harm"):
        p["m2"] = float(extra.get("m2") or s / 2)
        p["m1"] = float(extra.get("m1") or s)
        p["M1"] = float(extra.get("M1") or t)
        p["M2"] = float(extra.get("M2") or 2 * t)
    return p


def sharpness_probe(check_id: str, params: dict) -> tuple[float, dict]:
    """Distance from equality of each constant at its scalar endpoint instance.

    Every comparison of the check is evaluated on the scalar instances where
    its constant is attained; the gap is the largest, over comparisons, of
    the smallest ``|margin|`` over candidates. A gap near zero means no
    smaller constant would do.
    """
    if check_id not in SHARPNESS_CHECKS:
        raise ValueError(f"sharpness probe does not support {check_id!r}; choose from {SHARPNESS_CHECKS}")
    check = get_check(check_id)
    labels = fn_registry.by_class("monotone") if "f" in check.uses else [None]
    best: dict[str, tuple[float, dict]] = {}
    for a, b in _probe_candidates(check_id, params):
        for f in labels:
            inst = Instance(_s(a), _s(b), f=None if f is None else f.label)
            for label, margin in evaluate_parts(check_id, inst, params):
                g = abs(margin)
                if label not in best or g < best[label][0]:
                    best[label] = (g, {"A": a, "B": b, "function": inst.f})
    label = max(best, key=lambda k: best[k][0])
    gap, where = best[label]
    return float(gap), {"part": label, **where, "parts": {k: {"gap": g, **w} for k, (g, w) in best.items()}}
