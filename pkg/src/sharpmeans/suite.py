"""Suite configuration, orchestration and JSON reports."""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

from . import checks as registry
from .hermitian import DEFAULT_TOL, MAX_DIM, DomainError, PreconditionError


class ConfigError(ValueError):
    """Raised for malformed or out-of-range suite configuration."""


@dataclass
class SuiteConfig:
    checks: list | str = "all"
    trials: int = 200
    dims: list = field(default_factory=lambda: [1, 2, 4, 8])
    seed: int = 0
    tol: float = DEFAULT_TOL
    v_grid: list = field(default_factory=lambda: list(registry.V_GRID))
    p_grid: list = field(default_factory=lambda: list(registry.P_GRID))
    v_gt1_grid: list = field(default_factory=lambda: list(registry.V_GT1_GRID))
    v_lt0_grid: list = field(default_factory=lambda: list(registry.V_LT0_GRID))
    interval_params: dict = field(default_factory=dict)
    report_path: str | None = None

    def selected(self) -> list[str]:
        if self.checks == "all":
            return sorted(registry.REGISTRY)
        return list(self.checks)

    def to_dict(self) -> dict:
        return asdict(self)


_INTERVAL_ARITY = {"sandwich": 2, "bounds": 2, "near": 2, "ordered": 4}


def _real_list(name, value, ok=lambda x: True, why=""):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{name} must be a non-empty list")
    out = []
    for x in value:
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ConfigError(f"{name} entries must be finite numbers, got {x!r}")
        if not ok(x):
            raise ConfigError(f"{name} entry {x!r} out of range: {why}")
        out.append(float(x))
    return out


def _int(name, value, lo, hi):
    if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
        raise ConfigError(f"{name} must be an integer in [{lo}, {hi}], got {value!r}")
    return value


def _intervals(value) -> dict:
    if not isinstance(value, dict):
        raise ConfigError("interval_params must be an object")
    out = {}
    for key, sets in value.items():
        if key not in _INTERVAL_ARITY:
            raise ConfigError(f"unknown interval set {key!r}; expected one of {sorted(_INTERVAL_ARITY)}")
        if not isinstance(sets, list) or not sets:
            raise ConfigError(f"interval_params.{key} must be a non-empty list")
        rows = []
        for row in sets:
            row = _real_list(f"interval_params.{key}", row, lambda x: x > 0, "must be positive")
            if len(row) != _INTERVAL_ARITY[key]:
                raise ConfigError(f"interval_params.{key} rows need {_INTERVAL_ARITY[key]} numbers, got {row}")
            if key == "ordered" and not row[0] <= row[1] < row[2] <= row[3]:
                raise ConfigError(f"ordered set {row} violates m2 <= m1 < M1 <= M2")
            if key != "ordered" and not row[0] <= row[1]:
                raise ConfigError(f"{key} set {row} needs lo <= hi")
            rows.append(row)
        out[key] = rows
    return out


def parse_config(text: str) -> SuiteConfig:
    """Parse JSON suite configuration, applying defaults for absent fields."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    cfg = SuiteConfig()
    known = set(cfg.to_dict())
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")

    checks = raw.get("checks", "all")
    if checks != "all":
        if not isinstance(checks, list) or not checks or not all(isinstance(c, str) for c in checks):
            raise ConfigError('checks must be "all" or a non-empty list of check ids')
        missing = [c for c in checks if c not in registry.REGISTRY]
        if missing:
            raise ConfigError(f"unknown check id(s): {', '.join(missing)}")
    cfg.checks = checks
    if "trials" in raw:
        cfg.trials = _int("trials", raw["trials"], 1, 10**7)
    if "dims" in raw:
        dims = raw["dims"]
        if not isinstance(dims, list) or not dims:
            raise ConfigError("dims must be a non-empty list")
        cfg.dims = [_int("dims entry", d, 1, MAX_DIM) for d in dims]
    if "seed" in raw:
        cfg.seed = _int("seed", raw["seed"], 0, 2**64 - 1)
    if "tol" in raw:
        tol = raw["tol"]
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not (tol > 0 and math.isfinite(tol)):
            raise ConfigError(f"tol must be a positive number, got {tol!r}")
        cfg.tol = float(tol)
    if "v_grid" in raw:
        cfg.v_grid = _real_list("v_grid", raw["v_grid"], lambda x: 0 < x <= 1, "must lie in (0, 1]")
    if "p_grid" in raw:
        cfg.p_grid = _real_list("p_grid", raw["p_grid"], lambda x: x >= 2, "must be >= 2")
    if "v_gt1_grid" in raw:
        cfg.v_gt1_grid = _real_list("v_gt1_grid", raw["v_gt1_grid"], lambda x: x > 1, "must be > 1")
    if "v_lt0_grid" in raw:
        cfg.v_lt0_grid = _real_list("v_lt0_grid", raw["v_lt0_grid"], lambda x: x < 0, "must be < 0")
    if "interval_params" in raw:
        cfg.interval_params = _intervals(raw["interval_params"])
    if "report_path" in raw:
        if raw["report_path"] is not None and not isinstance(raw["report_path"], str):
            raise ConfigError("report_path must be a string")
        cfg.report_path = raw["report_path"]
    return cfg


def _grid(cfg: SuiteConfig, check) -> list[float]:
    return registry.grid_values(check, cfg.v_grid, cfg.p_grid, cfg.v_gt1_grid, cfg.v_lt0_grid)


def _sharpness_gap(cfg: SuiteConfig, check_id: str) -> float:
    """Largest probe gap over the configured parameter sets and v grid."""
    sets = cfg.interval_params or {}
    worst = 0.0
    for v in cfg.v_grid:
        if check_id in ("thm19", "cor_xi_sharp"):
            params = [{"s": s, "t": t, "v": v} for s, t in sets.get("sandwich") or
                      registry.DEFAULT_INTERVALS["sandwich"]]
        elif check_id == "cor10":
            params = [{"m": m, "M": M, "v": v} for m, M in sets.get("bounds") or
                      registry.DEFAULT_INTERVALS["bounds"] if m < M]
        else:
            params = [{"m2": a, "m1": b, "M1": c, "M2": d, "v": v}
                      for a, b, c, d in sets.get("ordered") or registry.DEFAULT_INTERVALS["ordered"]]
        for p in params:
            gap, _ = registry.sharpness_probe(check_id, p)
            worst = max(worst, gap)
    return worst


def run_check_cells(cfg: SuiteConfig, check_id: str) -> dict:
    """Aggregate one check over dims x grid x trials."""
    check = registry.get_check(check_id)
    grid = _grid(cfg, check)
    trials = skips = failures = 0
    min_margin = math.inf
    witnesses, cells = [], []
    for n in cfg.dims:
        for cell, value in enumerate(grid):
            c_trials = c_skips = c_fail = 0
            c_min = math.inf
            for trial in range(cfg.trials):
                inst, params = registry.make_instance(check_id, n, value, cfg.seed, trial, cell,
                                                      cfg.interval_params)
                try:
                    res = registry.run_check(check_id, inst, params, cfg.tol)
                except (PreconditionError, DomainError):
                    c_skips += 1
                    continue
                c_trials += 1
                c_min = min(c_min, res.margin)
                if not res.passed:
                    c_fail += 1
                    witnesses.append(res.witness)
            cells.append({"dim": n, "value": value, "trials": c_trials, "skips": c_skips,
                          "failures": c_fail, "min_margin": c_min if c_trials else None})
            trials += c_trials
            skips += c_skips
            failures += c_fail
            min_margin = min(min_margin, c_min)
    out = {
        "check_id": check_id,
        "params": {"dims": list(cfg.dims), "grid": check.grid, "values": grid, "tol": cfg.tol},
        "asserted": check.asserted,
        "expect_fail": check.expect_fail,
        "trials": trials,
        "skips": skips,
        "failures": failures,
        "min_margin": min_margin if trials else None,
    }
    if check_id in registry.SHARPNESS_CHECKS:
        out["sharpness_gap"] = _sharpness_gap(cfg, check_id)
    out["cells"] = cells
    out["witnesses"] = witnesses
    return out


def run_suite(cfg: SuiteConfig) -> dict:
    """Run every selected check and return the report; also written to
    ``cfg.report_path`` when set."""
    start = time.perf_counter()
    results = [run_check_cells(cfg, cid) for cid in cfg.selected()]
    report = {
        "config": cfg.to_dict(),
        "results": results,
        "elapsed_seconds": time.perf_counter() - start,
        "version": registry.REGISTRY_VERSION,
    }
    if cfg.report_path:
        write_report(report, cfg.report_path)
    return report


def write_report(report: dict, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path!r}: {exc}") from exc


def exit_status(report: dict) -> int:
    """0 when no asserted check failed, 1 otherwise."""
    bad = [r for r in report["results"] if r["asserted"] and r["failures"] > 0]
    return 1 if bad else 0


def summary_lines(report: dict) -> list[str]:
    lines = []
    for r in report["results"]:
        if r["failures"] == 0:
            status = "PASS"
        elif r["asserted"]:
            status = "FAIL"
        else:
            status = "REPORTED"
        mm = r["min_margin"]
        line = (f"{status:8s} {r['check_id']:28s} trials={r['trials']:6d} skips={r['skips']:4d} "
                f"failures={r['failures']:5d} min_margin={mm if mm is None else format(mm, '+.3e')}")
        if "sharpness_gap" in r:
            line += f" sharpness_gap={r['sharpness_gap']:.3e}"
        lines.append(line)
    return lines
