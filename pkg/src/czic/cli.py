"""Command-line surface: plot-ready CSV frontiers, machine-checkable
comparison reports, regime/condition queries, the finite-alphabet oracle,
and the random-coding simulator.

Exit codes: 0 success, 2 regime precondition violation, 3 I/O failure,
4 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BOUND_IDS, bound_frontier
from .channel import ChannelParams, classify_regime, is_strong_interference, more_capable_sufficient
from .dm import (SearchConfig, check_more_capable, check_strong_interference,
                 inner_region_search, load_channel, outer_region_search)
from .errors import CzicError, ParameterError, RegimeError
from .mc import SimConfig, run_trials
from .regions import directed_gap, gap_curve, save_frontier


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are malformed input, not regime errors
        self.exit(4, f"{self.prog}: error: {message}\n")


def _add_channel_args(p):
    p.add_argument("--a", type=float, default=4.0, help="interference gain (default 4)")
    p.add_argument("--p1", type=float, default=6.0, help="primary power (default 6)")
    p.add_argument("--p2", type=float, default=6.0, help="cognitive power (default 6)")


def _add_grid_args(p):
    p.add_argument("--alpha-grid", type=int, default=201)
    p.add_argument("--rho-grid", type=int, default=101)
    p.add_argument("--r2-grid", type=int, default=401)


def _manifest(command, args, extra=None):
    doc = {
        "command": command,
        "params": {"a": args.a, "p1": args.p1, "p2": args.p2},
        "seed": getattr(args, "seed", 0),
        "tool_version": __version__,
    }
    if hasattr(args, "alpha_grid"):
        doc["grids"] = {"alpha": args.alpha_grid, "rho": args.rho_grid, "r2": args.r2_grid}
    if extra:
        doc.update(extra)
    return doc


def _emit(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


def _frontier(bound, args, params):
    return bound_frontier(
        bound, params,
        alpha_grid=args.alpha_grid, rho_grid=args.rho_grid, r2_grid=args.r2_grid,
        convexify=getattr(args, "convexify", False),
    )


def _cmd_region(args):
    params = ChannelParams(args.a, args.p1, args.p2)
    t0 = time.perf_counter()
    fr = _frontier(args.bound, args, params)
    out = Path(args.out or f"{args.bound}.csv")
    manifest = _manifest("region", args, {"bound": args.bound, "csv": str(out),
                                          "convexified": fr.convexified})
    manifest["wallclock_s"] = round(time.perf_counter() - t0, 6)
    save_frontier(fr, out, manifest)
    _emit(manifest)
    return 0


def _compare_report(bounds, frontiers, tol):
    # ordered pairs over the requested list (duplicates compare against
    # themselves, which reports a gap of exactly 0)
    pairs = []
    for i, outer in enumerate(bounds):
        for j, inner in enumerate(bounds):
            if i == j:
                continue
            grid, gaps = gap_curve(frontiers[outer], frontiers[inner])
            k = int(np.argmax(gaps))
            pairs.append({
                "outer": outer,
                "inner": inner,
                "directed_gap": float(gaps[k]),
                "max_gap_r2": float(grid[k]),
                "contained": bool(gaps[k] <= tol),
            })
    return pairs


def _cmd_compare(args):
    bounds = [b.strip() for b in args.bounds.split(",") if b.strip()]
    if len(bounds) < 2:
        raise ParameterError("compare needs at least two bound ids")
    params = ChannelParams(args.a, args.p1, args.p2)
    t0 = time.perf_counter()
    frontiers = {b: _frontier(b, args, params) for b in dict.fromkeys(bounds)}
    report = _manifest("compare", args, {
        "bounds": bounds,
        "tol": args.tol,
        "pairs": _compare_report(bounds, frontiers, args.tol),
    })
    report["wallclock_s"] = round(time.perf_counter() - t0, 6)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(report)
    return 0


def _cmd_figure4(args):
    params = ChannelParams(args.a, args.p1, args.p2)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    frontiers = {b: _frontier(b, args, params) for b in ("lemma1", "cor1", "inner")}
    for name, fr in frontiers.items():
        manifest = _manifest("figure4", args, {"bound": name, "convexified": fr.convexified})
        save_frontier(fr, outdir / f"{name}.csv", manifest)
    report = _manifest("figure4", args, {
        "bounds": list(frontiers),
        "tol": args.tol,
        "pairs": _compare_report(list(frontiers), frontiers, args.tol),
        "out_dir": str(outdir),
    })
    report["wallclock_s"] = round(time.perf_counter() - t0, 6)
    with open(outdir / "report.json", "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit(report)
    return 0


def _cmd_classify(args):
    regime = classify_regime(ChannelParams(args.a, args.p1, args.p2))
    _emit({"regime": regime.tag.value, "thresholds": list(regime.thresholds)})
    return 0


def _cmd_conditions(args):
    params = ChannelParams(args.a, args.p1, args.p2)
    _emit({
        "strong_interference": is_strong_interference(params),
        "more_capable_sufficient": more_capable_sufficient(params),
    })
    return 0


def _verdict_dict(v):
    doc = {"status": v.status, "min_gap": None if np.isnan(v.min_gap) else v.min_gap}
    if v.witness is not None:
        doc["witness"] = np.asarray(v.witness).tolist()
    return doc


def _cmd_dm_oracle(args):
    channel = load_channel(args.channel)
    u_size = args.u_size or None
    t0 = time.perf_counter()
    search = SearchConfig(samples=max(200, args.budget), seed=args.seed)
    inner = inner_region_search(channel, budget=args.budget, seed=args.seed,
                                u_size=u_size, r2_grid_size=args.r2_grid)
    outer = outer_region_search(channel, budget=args.budget, seed=args.seed,
                                u_size=u_size, r2_grid_size=args.r2_grid)
    gap = directed_gap(inner, outer)
    doc = {
        "command": "dm-oracle",
        "channel": str(args.channel),
        "budget": args.budget,
        "seed": args.seed,
        "u_size": u_size or channel.default_u_size(),
        "checks": {
            "more_capable": _verdict_dict(check_more_capable(channel, search)),
            "strong_interference": _verdict_dict(check_strong_interference(channel, search)),
        },
        "inner_frontier": [[float(r2), float(r1)] for r2, r1 in zip(inner.r2, inner.r1)],
        "outer_frontier": [[float(r2), float(r1)] for r2, r1 in zip(outer.r2, outer.r1)],
        "directed_gap_inner_to_outer": gap,
        "inner_within_outer": bool(gap <= args.tol),
        "tol": args.tol,
        "tool_version": __version__,
        "wallclock_s": round(time.perf_counter() - t0, 6),
    }
    _emit(doc)
    return 0


def _cmd_simulate(args):
    config = SimConfig(
        params=ChannelParams(args.a, args.p1, args.p2),
        alpha=args.alpha, n=args.n, r1=args.r1, r2=args.r2,
        trials=args.trials, seed=args.seed, decoder1=args.decoder,
        max_pair_evals=args.max_pair_evals,
    )
    _emit(run_trials(config).to_dict())
    return 0


def build_parser():
    parser = _Parser(prog="czic", description=__doc__)
    parser.add_argument("--version", action="version", version=f"czic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", parents=[], help="write one bound's frontier CSV")
    p.add_argument("bound", choices=BOUND_IDS)
    _add_channel_args(p)
    _add_grid_args(p)
    p.add_argument("--convexify", action="store_true", help="apply the time-sharing envelope")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default <bound>.csv)")
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("compare", help="pairwise gap/containment report for several bounds")
    p.add_argument("bounds", help="comma-separated bound ids")
    _add_channel_args(p)
    _add_grid_args(p)
    p.add_argument("--convexify", action="store_true")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="also write the JSON report here")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("figure4", help="reproduce the flagship bound comparison data")
    _add_channel_args(p)
    _add_grid_args(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="figure4", help="output directory")
    p.set_defaults(func=_cmd_figure4)

    p = sub.add_parser("classify", help="interference regime and thresholds")
    _add_channel_args(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("conditions", help="strong-interference / more-capable checks")
    _add_channel_args(p)
    p.set_defaults(func=_cmd_conditions)

    p = sub.add_parser("dm-oracle", help="finite-alphabet region search and condition checks")
    p.add_argument("channel", help="channel JSON path")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--u-size", type=int, default=0, help="auxiliary alphabet size (0 = auto)")
    p.add_argument("--r2-grid", type=int, default=201)
    p.add_argument("--tol", type=float, default=0.01)
    p.set_defaults(func=_cmd_dm_oracle)

    p = sub.add_parser("simulate", help="random-coding error-rate trials")
    _add_channel_args(p)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--r1", type=float, default=1.0)
    p.add_argument("--r2", type=float, default=0.2)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decoder", choices=("joint_ml", "successive"), default="joint_ml")
    p.add_argument("--max-pair-evals", type=int, default=2**20)
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RegimeError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except (CzicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
