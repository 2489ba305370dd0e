"""Config-driven experiment runner and scenario generator.

Subcommands: tau, ddf, check-axioms, diameter, continuity, psi,
fixpoint, verify-t34, gen-scenarios.  Configs and reports are JSON;
per-threshold curves go to CSV with the fixed column schema
scenario_id, t, psi_t, residual_t, dominance.

Exit codes: 0 success, 2 validation or configuration error, 3 an
existence guarantee failed on this run (kept distinct so CI can tell a
broken invariant from a broken config).  Reports are byte-identical
across runs with the same config and seed; scenario batches fan out
over at most PNKIT_THREADS workers and merge in scenario order.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .ddf import Ddf, make_epsilon, sibley_distance
from .discont import (DEFAULT_DELTA_SCHEDULE, DEFAULT_GRID_RESOLUTIONS,
                      DEFAULT_T_GRID, Piece, PiecewiseMap1D, SampledMap,
                      _validate_descending, discontinuity_estimate,
                      discontinuity_exact)
from .errors import InvalidArgumentError, PnkitError, TheoremViolationError
from .fixpoint import find_approx_fixed_point, kakutani_search, verify_approx_fixed_point
from .neighborhoods import PointSet, default_tprime_schedule, prob_diameter, strong_t_continuity_test
from .pn_space import PnSpace, check_axioms, random_vector_pairs
from .tnorms import TNormKind, tau_apply

MIN_BREAK_SEPARATION = 0.01


# ---------------------------------------------------------------------------
# scenario generation

@dataclass(frozen=True)
class ScenarioFamily:
    """Random family of piecewise self-maps: piece counts drawn from
    `pieces`, piece values uniform in `values` clamped into the domain,
    breakpoints uniform with a minimum separation."""

    count: int
    pieces: tuple[int, int] = (1, 5)
    values: tuple[float, float] = (0.0, 1.0)
    kind: str = "constant"
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.count < 1:
            raise InvalidArgumentError(f"count must be positive, got {self.count!r}")
        plo, phi = self.pieces
        if not (1 <= plo <= phi):
            raise InvalidArgumentError(f"pieces range must satisfy 1 <= lo <= hi, got {self.pieces!r}")
        if self.kind not in ("constant", "affine"):
            raise InvalidArgumentError(f"kind must be 'constant' or 'affine', got {self.kind!r}")
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise InvalidArgumentError(f"domain must be a nondegenerate interval, got {self.domain!r}")
        if phi * MIN_BREAK_SEPARATION > (hi - lo):
            raise InvalidArgumentError(
                f"{phi} pieces cannot keep separation {MIN_BREAK_SEPARATION} "
                f"inside a domain of width {hi - lo}")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ScenarioFamily":
        if not isinstance(obj, dict) or "count" not in obj:
            raise InvalidArgumentError("scenarios spec must be an object with at least 'count'")
        return cls(count=int(obj["count"]),
                   pieces=tuple(obj.get("pieces", (1, 5))),
                   values=tuple(obj.get("values", (0.0, 1.0))),
                   kind=obj.get("kind", "constant"),
                   domain=tuple(obj.get("domain", (0.0, 1.0))))


def _draw_breakpoints(rng: np.random.Generator, lo: float, hi: float, n: int) -> list[float]:
    if n == 0:
        return []
    for _ in range(1000):
        bps = np.sort(rng.uniform(lo, hi, n))
        gaps = np.diff(np.concatenate([[lo], bps, [hi]]))
        if np.min(gaps) >= MIN_BREAK_SEPARATION:
            return [float(b) for b in bps]
    raise InvalidArgumentError(
        f"could not place {n} breakpoints with separation {MIN_BREAK_SEPARATION} in [{lo}, {hi}]")


def generate_scenarios(family: ScenarioFamily, seed: int) -> list[PiecewiseMap1D]:
    """Deterministic under the seed; every generated map satisfies the
    piecewise-map invariants (values are clamped into the domain, so the
    self-map condition holds by construction)."""
    rng = np.random.default_rng(seed)
    lo, hi = family.domain
    vlo, vhi = family.values
    maps = []
    for _ in range(family.count):
        n_pieces = int(rng.integers(family.pieces[0], family.pieces[1] + 1))
        bps = _draw_breakpoints(rng, lo, hi, n_pieces - 1)
        edges = [lo] + bps + [hi]
        pieces = []
        if family.kind == "constant":
            vals = np.clip(rng.uniform(vlo, vhi, n_pieces), lo, hi)
            for k in range(n_pieces):
                pieces.append(Piece(edges[k], edges[k + 1], "left", 0.0, float(vals[k])))
        else:
            ends = np.clip(rng.uniform(vlo, vhi, (n_pieces, 2)), lo, hi)
            for k in range(n_pieces):
                y0, y1 = float(ends[k][0]), float(ends[k][1])
                a = (y1 - y0) / (edges[k + 1] - edges[k])
                b = y0 - a * edges[k]
                pieces.append(Piece(edges[k], edges[k + 1], "left", a, b))
        maps.append(PiecewiseMap1D(domain=(lo, hi), pieces=tuple(pieces)))
    return maps


# ---------------------------------------------------------------------------
# experiment config

@dataclass
class ExperimentConfig:
    space: PnSpace
    map: PiecewiseMap1D | SampledMap | None
    scenarios: ScenarioFamily | None
    seed: int | None
    delta_schedule: tuple[float, ...]
    grid_resolutions: tuple[float, ...]
    t_grid: tuple[float, ...]
    tprime_schedule: tuple[float, ...] | None
    output: str | None
    output_csv: str | None
    raw: dict


def _parse_t_grid(obj) -> tuple[float, ...]:
    if obj is None:
        return DEFAULT_T_GRID
    if isinstance(obj, dict):
        n = int(obj.get("count", 1024))
        tmax = float(obj.get("max", 1.0))
        if n < 1 or tmax <= 0:
            raise InvalidArgumentError("schedules.t_grid: count and max must be positive")
        return tuple(k * tmax / n for k in range(1, n + 1))
    return tuple(float(t) for t in obj)


def _parse_map_spec(obj) -> PiecewiseMap1D | SampledMap:
    if isinstance(obj, dict) and "sampled" in obj:
        return SampledMap.from_json_obj(obj["sampled"])
    return PiecewiseMap1D.from_json_obj(obj)


def parse_config(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise InvalidArgumentError("config must be a JSON object")
    try:
        space = PnSpace.from_json_obj(raw["space"]) if "space" in raw else PnSpace(dimension=1)
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"space: {exc}") from exc

    mp = None
    if "map" in raw:
        try:
            mp = _parse_map_spec(raw["map"])
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"map: {exc}") from exc

    fam = None
    if "scenarios" in raw:
        fam = ScenarioFamily.from_json_obj(raw["scenarios"])

    seed = raw.get("seed")
    if seed is not None:
        seed = int(seed)
    if fam is not None and seed is None:
        raise InvalidArgumentError("seed: required whenever a scenario generator is used")

    sched = raw.get("schedules", {})
    if not isinstance(sched, dict):
        raise InvalidArgumentError("schedules: must be an object")
    try:
        delta = _validate_descending("schedules.delta", sched.get("delta", DEFAULT_DELTA_SCHEDULE))
        grids = _validate_descending("schedules.grids", sched.get("grids", DEFAULT_GRID_RESOLUTIONS))
        tprime = None
        if "tprime" in sched:
            tprime = _validate_descending("schedules.tprime", sched["tprime"])
        t_grid = _parse_t_grid(sched.get("t_grid"))
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"schedules: {exc}") from exc

    return ExperimentConfig(
        space=space, map=mp, scenarios=fam, seed=seed,
        delta_schedule=delta, grid_resolutions=grids, t_grid=t_grid,
        tprime_schedule=tprime,
        output=raw.get("output"), output_csv=raw.get("output_csv"),
        raw=raw)


def load_config(path: str) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return parse_config(raw)
    except InvalidArgumentError as exc:
        raise InvalidArgumentError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# ddf argument parsing

def parse_ddf_spec(spec: str) -> Ddf:
    """eps:A for a unit step, @path for a JSON file, else inline JSON."""
    if spec.startswith("eps:"):
        return make_epsilon(float(spec[4:]))
    if spec.startswith("@"):
        return Ddf.from_json(Path(spec[1:]).read_text())
    return Ddf.from_json(spec)


# ---------------------------------------------------------------------------
# verify pipeline

def _threads() -> int:
    raw = os.environ.get("PNKIT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"PNKIT_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise InvalidArgumentError(f"PNKIT_THREADS must be a positive integer, got {raw!r}")
    return n


def run_verify(cfg: ExperimentConfig) -> tuple[dict, list[list]]:
    """Run the full verification pipeline for the configured map or
    scenario batch; returns (report, csv_rows)."""
    if cfg.map is None and cfg.scenarios is None:
        raise InvalidArgumentError("config needs either 'map' or 'scenarios'")
    if cfg.map is not None and cfg.scenarios is not None:
        raise InvalidArgumentError("config must name exactly one of 'map' and 'scenarios'")
    if cfg.map is not None:
        maps = [cfg.map]
    else:
        maps = generate_scenarios(cfg.scenarios, cfg.seed)

    def one(item):
        idx, m = item
        rep = verify_approx_fixed_point(
            cfg.space, m,
            search_h=min(cfg.grid_resolutions),
            t_grid=cfg.t_grid,
            delta_schedule=cfg.delta_schedule,
            grid_resolutions=cfg.grid_resolutions)
        rep["scenario_id"] = idx
        return idx, rep

    workers = min(_threads(), len(maps))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(one, enumerate(maps)))
    else:
        results = dict(one(item) for item in enumerate(maps))
    scenario_reports = [results[i] for i in range(len(maps))]

    rows = []
    for rep in scenario_reports:
        psi = Ddf.from_json_obj(rep["psi"])
        residual = Ddf.from_json_obj(rep["fixpoint"]["residual"])
        dom = rep["fixpoint"]["dominance"]
        ts = np.array(cfg.t_grid, dtype=float)
        psi_t = psi.eval_many(ts)
        res_t = residual.eval_many(ts)
        for t, pv, rv in zip(cfg.t_grid, psi_t, res_t):
            rows.append([rep["scenario_id"], float(t), float(pv), float(rv), dom])

    anomalies = [rep["scenario_id"] for rep in scenario_reports
                 if not (rep["fixpoint"]["dominance"] and rep["chain"]["holds"])]
    report = {
        "config": cfg.raw,
        "scenarios": scenario_reports,
        "summary": {
            "count": len(scenario_reports),
            "dominance_successes": sum(1 for r in scenario_reports if r["fixpoint"]["dominance"]),
            "chain_successes": sum(1 for r in scenario_reports if r["chain"]["holds"]),
            "anomalies": anomalies,
        },
    }
    return report, rows


def write_report(report: dict, path: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def write_csv(rows: list[list], path: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario_id", "t", "psi_t", "residual_t", "dominance"])
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# subcommands

def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_tau(args) -> int:
    try:
        kind = TNormKind(args.tnorm)
    except ValueError as exc:
        raise InvalidArgumentError(f"unknown t-norm {args.tnorm!r}") from exc
    result = tau_apply(kind, parse_ddf_spec(args.f), parse_ddf_spec(args.g))
    print(result.to_json())
    return 0


def cmd_ddf(args) -> int:
    F = parse_ddf_spec(args.f)
    out: dict = {"ddf": F.to_json_obj()}
    if args.at:
        out["evals"] = [{"x": x, "value": F.eval(x)} for x in args.at]
    if args.leq is not None:
        from .ddf import ddf_leq
        out["leq"] = ddf_leq(F, parse_ddf_spec(args.leq))
    if args.sibley is not None:
        out["sibley_distance"] = sibley_distance(F, parse_ddf_spec(args.sibley))
    _print_json(out)
    return 0


def cmd_check_axioms(args) -> int:
    cfg = load_config(args.config)
    raw = cfg.raw
    count = int(raw.get("pairs", 200))
    seed = cfg.seed if cfg.seed is not None else 0
    lambdas = tuple(float(x) for x in raw.get("lambdas", [k / 10.0 for k in range(11)]))
    pairs = random_vector_pairs(cfg.space.dimension, count, seed)
    report = check_axioms(cfg.space, pairs, lambdas)
    _print_json(report.to_json_obj())
    return 0


def cmd_diameter(args) -> int:
    cfg = load_config(args.config)
    pts_raw = json.loads(args.points) if args.points else cfg.raw.get("points")
    if not pts_raw:
        raise InvalidArgumentError("diameter needs --points or a 'points' config entry")
    A = PointSet(tuple(tuple(float(c) for c in p) for p in pts_raw))
    print(prob_diameter(cfg.space, A).to_json())
    return 0


def cmd_continuity(args) -> int:
    cfg = load_config(args.config)
    raw = cfg.raw
    if cfg.map is None:
        raise InvalidArgumentError("continuity needs a 'map' config entry")
    t = float(raw.get("t", 0.5))
    sample_spec = raw.get("sample", {"count": 9})
    if "points" in sample_spec:
        pts = tuple(tuple(float(c) for c in p) for p in sample_spec["points"])
    else:
        n = int(sample_spec.get("count", 9))
        if isinstance(cfg.map, PiecewiseMap1D):
            lo, hi = cfg.map.domain
        else:
            lo, hi = cfg.map.box[0]
        pts = tuple((float(x),) for x in np.linspace(lo, hi, n))
    schedule = cfg.tprime_schedule or default_tprime_schedule(t)
    report = strong_t_continuity_test(cfg.space, cfg.map, PointSet(pts), t,
                                      tprime_schedule=schedule,
                                      probe_budget=int(raw.get("probe_budget", 512)))
    _print_json(report.to_json_obj())
    return 0


def cmd_psi(args) -> int:
    cfg = load_config(args.config)
    if cfg.map is None:
        raise InvalidArgumentError("psi needs a 'map' config entry")
    out: dict = {}
    exact_available = isinstance(cfg.map, PiecewiseMap1D) and cfg.space.dimension == 1
    route = args.route
    if route == "both" and not exact_available:
        route = "estimate"
    if route in ("exact", "both"):
        if not exact_available:
            raise InvalidArgumentError("exact route needs a piecewise map in a 1-d space")
        out["exact"] = discontinuity_exact(cfg.space, cfg.map).to_json_obj()
    if route in ("estimate", "both"):
        est = discontinuity_estimate(cfg.space, cfg.map,
                                     delta_schedule=cfg.delta_schedule,
                                     grid_resolutions=cfg.grid_resolutions,
                                     t_grid=cfg.t_grid)
        out["estimate"] = est.to_json_obj()
    if route == "both":
        out["sibley_distance"] = sibley_distance(
            Ddf.from_json_obj(out["estimate"]["ddf"]), Ddf.from_json_obj(out["exact"]))
    _print_json(out)
    return 0


def cmd_fixpoint(args) -> int:
    cfg = load_config(args.config)
    if cfg.map is None:
        raise InvalidArgumentError("fixpoint needs a 'map' config entry")
    if isinstance(cfg.map, PiecewiseMap1D) and cfg.space.dimension == 1:
        psi = discontinuity_exact(cfg.space, cfg.map)
    else:
        psi = discontinuity_estimate(cfg.space, cfg.map,
                                     delta_schedule=cfg.delta_schedule,
                                     grid_resolutions=cfg.grid_resolutions,
                                     t_grid=cfg.t_grid).ddf
    h = min(cfg.grid_resolutions)
    fp = find_approx_fixed_point(cfg.space, cfg.map, psi, h)
    kk = kakutani_search(cfg.map, h)
    out = fp.to_json_obj()
    out["kakutani"] = kk.to_json_obj()
    _print_json(out)
    return 0


def cmd_verify_t34(args) -> int:
    cfg = load_config(args.config)
    report, rows = run_verify(cfg)
    out_json = args.output or cfg.output
    out_csv = cfg.output_csv
    if out_json:
        if out_csv is None:
            out_csv = str(Path(out_json).with_suffix(".csv"))
        write_report(report, out_json)
        write_csv(rows, out_csv)
        print(f"report: {out_json}")
        print(f"curves: {out_csv}")
    else:
        _print_json(report)
    summary = report["summary"]
    print(f"scenarios: {summary['count']}  dominance: {summary['dominance_successes']}"
          f"  chain: {summary['chain_successes']}")
    if summary["anomalies"]:
        print(f"anomalous scenarios: {summary['anomalies']}", file=sys.stderr)
        return 3
    return 0


def cmd_gen_scenarios(args) -> int:
    if args.config:
        cfg = load_config(args.config)
        if cfg.scenarios is None:
            raise InvalidArgumentError("gen-scenarios config needs a 'scenarios' entry")
        fam, seed = cfg.scenarios, cfg.seed
    else:
        if args.seed is None:
            raise InvalidArgumentError("gen-scenarios needs --seed (or a config)")
        fam = ScenarioFamily(count=args.count,
                             pieces=(args.pieces[0], args.pieces[1]),
                             values=(args.values[0], args.values[1]),
                             kind=args.kind,
                             domain=(args.domain[0], args.domain[1]))
        seed = args.seed
    maps = generate_scenarios(fam, seed)
    payload = [m.to_json_obj() for m in maps]
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        print(f"wrote {len(maps)} maps to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnkit",
        description="Exact step-function algebra and fixed-point verification "
                    "for probabilistic-normed spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="apply a triangle function to two d.d.f.s")
    p.add_argument("--tnorm", required=True, choices=[k.value for k in TNormKind])
    p.add_argument("--f", required=True, help="d.d.f. spec: eps:A, @file.json, or inline JSON")
    p.add_argument("--g", required=True, help="d.d.f. spec")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("ddf", help="evaluate and compare d.d.f.s")
    p.add_argument("--f", required=True)
    p.add_argument("--at", type=float, action="append", default=[])
    p.add_argument("--leq", default=None)
    p.add_argument("--sibley", default=None)
    p.set_defaults(func=cmd_ddf)

    p = sub.add_parser("check-axioms", help="check the space axioms on seeded samples")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("diameter", help="probabilistic diameter of a point set")
    p.add_argument("--config", required=True)
    p.add_argument("--points", default=None, help="JSON array of coordinate arrays")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("continuity", help="strong continuity witness scan")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_continuity)

    p = sub.add_parser("psi", help="discontinuity measure of the configured map")
    p.add_argument("--config", required=True)
    p.add_argument("--route", choices=["exact", "estimate", "both"], default="both")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("fixpoint", help="approximate fixed-point search")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_fixpoint)

    p = sub.add_parser("verify-t34", help="full dominance verification pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None, help="report JSON path (overrides config)")
    p.set_defaults(func=cmd_verify_t34)

    p = sub.add_parser("gen-scenarios", help="generate seeded random piecewise maps")
    p.add_argument("--config", default=None)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--pieces", type=int, nargs=2, default=[1, 5], metavar=("LO", "HI"))
    p.add_argument("--values", type=float, nargs=2, default=[0.0, 1.0], metavar=("LO", "HI"))
    p.add_argument("--kind", choices=["constant", "affine"], default="constant")
    p.add_argument("--domain", type=float, nargs=2, default=[0.0, 1.0], metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen_scenarios)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return 3
    except (InvalidArgumentError, PnkitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
