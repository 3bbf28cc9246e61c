"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import analysis, draws
from .geometry import SingularPoint, curvature_function
from .motion import build_chart
from .params import InvalidParams, MotionParams
from .projection import DEFAULT_MAP, axonometric_project, projected_translation

COMMANDS = ("verify-thm31", "verify-thm32", "coeffs", "sample", "figure1", "verify-metric")
DEFAULT_KS = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(3))
FIGURE1_GRID = (0.0, 1.0, 11, 0.0, 2 * math.pi, 73)
SAMPLE_GRID = (-0.5, 0.5, 5, 0.0, 2 * math.pi, 13)


class ConfigError(Exception):
    pass


class CheckFailure(Exception):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


@dataclass
class RunConfig:
    command: str
    params: Optional[MotionParams] = None
    count: int = 1
    seed: Optional[int] = None
    out: Optional[str] = None
    format: str = "json"
    grid: Optional[Tuple[float, float, int, float, float, int]] = None
    K: Optional[List[Fraction]] = None
    mode: str = "forward"
    workers: int = 1
    svg: Optional[str] = None
    denominator: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.count < 1:
            raise ConfigError("count must be >= 1")
        if self.grid is not None and (self.grid[2] < 2 or self.grid[5] < 2):
            raise ConfigError("grid needs n_t >= 2 and n_phi >= 2")
        if self.K is not None and any(k == 0 for k in self.K):
            raise ConfigError("K must be nonzero")

    def need_seed(self) -> int:
        if self.seed is None:
            raise ConfigError("random draws need --seed (or EQUIFORM_SEED)")
        return self.seed


# -- parsing ---------------------------------------------------------------------


def load_params(path: str) -> MotionParams:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("parameter file must hold a JSON object")
    try:
        return MotionParams.from_dict(data)
    except (InvalidParams, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def parse_grid(text: str):
    parts = text.split(",")
    if len(parts) != 6:
        raise ConfigError("--grid needs tmin,tmax,nt,pmin,pmax,np")
    try:
        return (float(parts[0]), float(parts[1]), int(parts[2]), float(parts[3]), float(parts[4]), int(parts[5]))
    except ValueError as exc:
        raise ConfigError(f"bad --grid: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="equiform", description=__doc__)
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--config", help="JSON parameter file")
    ap.add_argument("--seed", type=int, help="seed for random draws (fallback: $EQUIFORM_SEED)")
    ap.add_argument("--count", type=int, default=1, help="number of random draws")
    ap.add_argument("--out", help="output path (default: stdout)")
    ap.add_argument("--format", default="json", choices=("csv", "json"))
    ap.add_argument("--grid", help="tmin,tmax,nt,pmin,pmax,np")
    ap.add_argument("--K", action="append", help="constant curvature to test (repeatable; rational)")
    ap.add_argument("--mode", default="forward", choices=("forward", "converse"),
                    help="verify-thm31: omega_1..15 = 0 draws (forward) or generic draws (converse)")
    ap.add_argument("--workers", type=int, default=1, help="processes for draw verification")
    ap.add_argument("--svg", help="figure1: also write an SVG wireframe here")
    ap.add_argument("--denominator", action="store_true", help="coeffs: emit Q instead of P")
    return ap


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    seed = args.seed
    if seed is None and os.environ.get("EQUIFORM_SEED"):
        try:
            seed = int(os.environ["EQUIFORM_SEED"])
        except ValueError:
            raise ConfigError("EQUIFORM_SEED must be an integer") from None
    Ks = None
    if args.K:
        try:
            Ks = [Fraction(k) for k in args.K]
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --K: {exc}") from None
    return RunConfig(
        command=args.command,
        params=load_params(args.config) if args.config else None,
        count=args.count,
        seed=seed,
        out=args.out,
        format=args.format,
        grid=parse_grid(args.grid) if args.grid else None,
        K=Ks,
        mode=args.mode,
        workers=max(1, args.workers),
        svg=args.svg,
        denominator=args.denominator,
    )


# -- serialization ---------------------------------------------------------------


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dumps_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def coeff_rows(poly):
    """CSV rows i, j, kind, numerator, denominator."""
    from .trigpoly import extract_coeffs

    return list(extract_coeffs(poly).rows())


# -- draw workers (top-level so they pickle) -------------------------------------


def _thm31_job(item):
    index, p, mode = item
    ratio = analysis.curvature_ratio(p)
    nonzero = len(ratio.P)
    passed = nonzero == 0 if mode == "forward" else nonzero > 0
    return {
        "index": index,
        "mode": mode,
        "nonzero_terms": nonzero,
        "max_power": ratio.P.max_power,
        "max_freq": ratio.P.max_freq,
        "pass": passed,
        "params": p.to_dict(),
    }


def _thm32_job(item):
    index, p, Ks = item
    ratio = analysis.curvature_ratio(p)
    out = []
    for K in Ks:
        residual = ratio.residual(K)
        entry = {"index": index, "K": _q(K), "nonzero_terms": len(residual), "pass": len(residual) > 0}
        if p.w(2) == 0 and p.w(7) == 0:
            entry["A6,0"] = _q(residual.coeff(6, 0))
        out.append(entry)
    return {"index": index, "params": p.to_dict(), "results": out}


def _metric_job(item):
    index, p = item
    chk = analysis.verify_metric_expansion(p)
    return {
        "index": index,
        "pass": chk.ok,
        "mismatches": [[n, k, list(key), _q(a), _q(b)] for n, k, key, a, b in chk.mismatches],
        "alpha_diffs": [
            {"alpha": d.index, "printed": _q(d.printed_value), "corrected": _q(d.corrected_value), "differs": d.differs}
            for d in chk.alpha_diffs
        ],
        "params": p.to_dict(),
    }


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- commands ----------------------------------------------------------------------


def _draw_or_config(cfg: RunConfig, kind) -> List[MotionParams]:
    if cfg.params is not None:
        return [cfg.params]
    return draws.sequence(kind, cfg.need_seed(), cfg.count)


def cmd_verify_thm31(cfg: RunConfig):
    mode = cfg.mode
    if cfg.params is not None:
        mode = "converse" if any(cfg.params.w(k) for k in range(1, 16)) else "forward"
    kind = draws.theorem31 if mode == "forward" else draws.converse
    ps = _draw_or_config(cfg, kind)
    results = _map(_thm31_job, [(i, p, mode) for i, p in enumerate(ps)], cfg.workers)
    ok = all(r["pass"] for r in results)
    report = {"command": cfg.command, "seed": cfg.seed, "count": len(ps), "mode": mode, "pass": ok, "results": results}
    if cfg.format == "csv":
        text = dumps_csv(["index", "mode", "nonzero_terms", "max_power", "max_freq", "pass"],
                         [[r["index"], r["mode"], r["nonzero_terms"], r["max_power"], r["max_freq"], r["pass"]] for r in results])
    else:
        text = dumps_json(report)
    return ok, text, report


def cmd_verify_thm32(cfg: RunConfig):
    Ks = cfg.K or list(DEFAULT_KS)
    ps = _draw_or_config(cfg, draws.generic)
    results = _map(_thm32_job, [(i, p, Ks) for i, p in enumerate(ps)], cfg.workers)
    ok = all(e["pass"] for r in results for e in r["results"])
    report = {"command": cfg.command, "seed": cfg.seed, "count": len(ps), "K": [_q(k) for k in Ks],
              "pass": ok, "results": results}
    if cfg.format == "csv":
        rows = [[e["index"], e["K"], e["nonzero_terms"], e["pass"]] for r in results for e in r["results"]]
        text = dumps_csv(["index", "K", "nonzero_terms", "pass"], rows)
    else:
        text = dumps_json(report)
    return ok, text, report


def cmd_verify_metric(cfg: RunConfig):
    ps = _draw_or_config(cfg, draws.generic)
    results = _map(_metric_job, [(i, p) for i, p in enumerate(ps)], cfg.workers)
    ok = all(r["pass"] for r in results)
    report = {"command": cfg.command, "seed": cfg.seed, "count": len(ps), "pass": ok, "results": results,
              "corrections": {str(k): {"printed": a, "corrected": b} for k, (a, b) in analysis.ALPHA_CORRECTIONS.items()}}
    if cfg.format == "csv":
        text = dumps_csv(["index", "pass", "mismatches"], [[r["index"], r["pass"], len(r["mismatches"])] for r in results])
    else:
        text = dumps_json(report)
    return ok, text, report


def cmd_coeffs(cfg: RunConfig):
    if cfg.params is not None:
        p = cfg.params
    else:
        p = draws.generic(draws.seeded(cfg.need_seed()))
    ratio = analysis.curvature_ratio(p)
    if cfg.K:
        if len(cfg.K) != 1:
            raise ConfigError("coeffs takes a single --K")
        poly, table = ratio.residual(cfg.K[0]), "P-KQ"
    elif cfg.denominator:
        poly, table = ratio.Q, "Q"
    else:
        poly, table = ratio.P, "P"
    rows = coeff_rows(poly)
    report = {"command": cfg.command, "table": table, "K": _q(cfg.K[0]) if cfg.K else None,
              "params": p.to_dict(), "max_power": poly.max_power, "max_freq": poly.max_freq,
              "entries": [{"i": i, "j": j, "kind": k, "numerator": n, "denominator": d} for i, j, k, n, d in rows]}
    if cfg.format == "csv":
        text = dumps_csv(["i", "j", "kind", "numerator", "denominator"], rows)
    else:
        text = dumps_json(report)
    return True, text, report


def grid_points(grid):
    t0, t1, nt, p0, p1, nphi = grid
    return np.linspace(t0, t1, nt), np.linspace(p0, p1, nphi)


def cmd_sample(cfg: RunConfig):
    p = cfg.params if cfg.params is not None else draws.generic(draws.seeded(cfg.need_seed()))
    ts, phis = grid_points(cfg.grid or SAMPLE_GRID)
    chart = build_chart(p)
    K = curvature_function(p)
    rows = []
    for t in ts:
        for ph in phis:
            x = chart.point(t, ph)
            y = axonometric_project(x)
            try:
                k = float(K(t, ph))
            except SingularPoint:
                k = None
            rows.append([float(t), float(ph)] + [float(v) for v in x] + [float(v) for v in y] + [k])
    header = ["t", "phi"] + [f"x{k}" for k in range(1, 8)] + ["y1", "y2", "y3", "K"]
    if cfg.format == "csv":
        text = dumps_csv(header, [[("" if v is None else repr(v)) for v in r] for r in rows])
    else:
        text = dumps_json({"command": cfg.command, "params": p.to_dict(), "columns": header, "rows": rows})
    return True, text, {"rows": len(rows)}


def figure1_params() -> MotionParams:
    """lambda = 1/(2 pi) (as the nearest double), s' = 1, B' = (1, 1, 1), mu = 1."""
    return analysis.example_params(mu=1, lam=Fraction(1 / (2 * math.pi)), s_prime=1, b_prime=(1, 1, 1, 0, 0, 0, 0))


def helix_property_defect(ts, phis, Y, B, s_prime: float, lam: float) -> float:
    """Max deviation of each t-slice of Y from a helix about the axis through t*B'.

    Checks constant distance 1 + s' t from the axis and a third coordinate
    linear in phi with slope lam (1 + s' t).
    """
    worst = 0.0
    for a, t in enumerate(ts):
        radius = 1 + s_prime * t
        dx = Y[a, :, 0] - t * B[0]
        dy = Y[a, :, 1] - t * B[1]
        worst = max(worst, float(np.abs(np.hypot(dx, dy) - radius).max()))
        z = Y[a, :, 2] - t * B[2]
        worst = max(worst, float(np.abs(z - lam * radius * phis).max()))
    return worst


def svg_wireframe(Y: np.ndarray, size: int = 480) -> str:
    """Oblique-view polyline wireframe of a grid of 3D points."""
    # fixed oblique view: screen = (y2 - y1 cos30, y3 - y1 sin30)
    c, s = math.cos(math.pi / 6), math.sin(math.pi / 6)
    u = Y[..., 1] - Y[..., 0] * c
    v = Y[..., 2] - Y[..., 0] * s
    lo_u, hi_u, lo_v, hi_v = u.min(), u.max(), v.min(), v.max()
    scale = (size - 20) / max(hi_u - lo_u, hi_v - lo_v, 1e-12)

    def pt(a, b):
        return f"{10 + (u[a, b] - lo_u) * scale:.3f},{size - 10 - (v[a, b] - lo_v) * scale:.3f}"

    lines = []
    nt, nphi = u.shape
    for a in range(nt):
        lines.append(" ".join(pt(a, b) for b in range(nphi)))
    for b in range(0, nphi, max(1, nphi // 24)):
        lines.append(" ".join(pt(a, b) for a in range(nt)))
    body = "\n".join(f'<polyline fill="none" stroke="black" stroke-width="0.6" points="{ln}"/>' for ln in lines)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n{body}\n</svg>\n')


def cmd_figure1(cfg: RunConfig):
    p = cfg.params if cfg.params is not None else figure1_params()
    ts, phis = grid_points(cfg.grid or FIGURE1_GRID)
    chart = build_chart(p)
    X = np.array([[chart.point(t, ph) for ph in phis] for t in ts])
    Y = axonometric_project(X, DEFAULT_MAP)
    B = [float(x) for x in projected_translation(p.b_prime)]
    defect = helix_property_defect(ts, phis, Y, B, float(p.s_prime), float(p.lam))
    ok = defect <= 1e-9
    rows = [[float(t), float(ph), float(Y[a, b, 0]), float(Y[a, b, 1]), float(Y[a, b, 2])]
            for a, t in enumerate(ts) for b, ph in enumerate(phis)]
    if cfg.format == "csv":
        text = dumps_csv(["t", "phi", "y1", "y2", "y3"], [[repr(v) for v in r] for r in rows])
    else:
        text = dumps_json({"command": cfg.command, "params": p.to_dict(), "B_prime": [_q(x) for x in projected_translation(p.b_prime)],
                           "grid": list(cfg.grid or FIGURE1_GRID), "helix_defect": defect, "pass": ok,
                           "columns": ["t", "phi", "y1", "y2", "y3"], "rows": rows})
    if cfg.svg:
        _write(cfg.svg, svg_wireframe(Y))
    return ok, text, {"helix_defect": defect, "pass": ok}


HANDLERS = {
    "verify-thm31": cmd_verify_thm31,
    "verify-thm32": cmd_verify_thm32,
    "verify-metric": cmd_verify_metric,
    "coeffs": cmd_coeffs,
    "sample": cmd_sample,
    "figure1": cmd_figure1,
}


def run(cfg: RunConfig) -> int:
    ok, text, report = HANDLERS[cfg.command](cfg)
    _write(cfg.out, text)
    if not ok:
        raise CheckFailure(f"{cfg.command} failed", report)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except ConfigError as exc:
        sys.stderr.write(json.dumps({"error": "config", "message": str(exc)}) + "\n")
        return 2
    except CheckFailure as exc:
        failures = {k: v for k, v in exc.report.items() if k != "results"}
        if "results" in exc.report:
            failures["failed"] = [r.get("index") for r in exc.report["results"] if not r.get("pass", True)
                                  or any(not e["pass"] for e in r.get("results", []))]
        sys.stderr.write(json.dumps({"error": "check", "message": str(exc), "report": failures}, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
