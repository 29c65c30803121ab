"""Command-line front door: construction commands, verification suites, exports.

Every subcommand is a thin wrapper over the library; data moves as JSON files.
Exit codes: 0 success (or SAT for ``solve``), 1 UNSAT or suite failures,
2 bad input / resource errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import boardgames, gadgets, simulate, solver, suites
from .lattice import LatticeTile, TileError
from .partition import decorate, partition_cube
from .solver import CellBudgetError

DEFAULT_MAX_CELLS = 10 ** 8


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_json(path: str, payload) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_tiles(obj) -> list[LatticeTile]:
    if isinstance(obj, dict):
        return [LatticeTile.from_json(obj)]
    return [LatticeTile.from_json(item) for item in obj]


def cmd_partition(args) -> int:
    cp = partition_cube(args.dim, args.m)
    parts = decorate(cp).parts if args.decorate else cp.parts
    _write_json(args.out, [p.to_json() for p in parts])
    if args.figure:
        from .viz import render_partition_layers
        render_partition_layers(cp, args.figure)
    total = sum(len(p) for p in parts)
    _emit(args, {"dim": args.dim, "m": args.m, "cells": total,
                 "decorated": bool(args.decorate), "out": args.out},
          f"wrote {len(parts)} parts ({total} cells) to {args.out}")
    return 0


def cmd_simulate(args) -> int:
    tiles = _load_tiles(_read_json(args.infile))
    plan = simulate.plan_simulation(tiles)
    payload = {
        "frame": plan.frame, "parts": plan.part_count,
        "period": plan.period, "input_cells": plan.input_cells,
        "output_cells": plan.output_cells,
    }
    if args.dry_run:
        _emit(args, payload,
              f"frame {plan.frame}, period {plan.period}, outputs "
              f"{plan.output_cells} cells (dry run, nothing written)")
        return 0
    result = simulate.simulate_set(tiles, max_cells=args.max_cells)
    _write_json(args.out, [t.to_json() for t in result.tiles])
    payload["out"] = args.out
    _emit(args, payload,
          f"wrote {len(result.tiles)} connected tiles to {args.out} "
          f"(period {plan.period})")
    return 0


def cmd_encode(args) -> int:
    ds = boardgames.DominoSet.from_json(_read_json(args.domino))
    n = args.n or boardgames.smallest_modulus(ds.m)
    ts = boardgames.encode_domino(ds, n,
                                  require_coprime_six=not args.any_modulus)
    _write_json(args.out, ts.to_json())
    sizes = [len(ts.rule(i)) for i in range(1, 5)]
    _emit(args, {"n": n, "rule_sizes": sizes, "out": args.out},
          f"encoded m={ds.m} domino set over Z_{n}; rule sizes {sizes}")
    return 0


def cmd_gadgets(args) -> int:
    ts = boardgames.CyclicTriominoSet.from_json(_read_json(args.triomino))
    gs = gadgets.build_gadgets(ts)
    if args.scaled:
        gs = gadgets.decorate_gadgets(gs)
    _write_json(args.out, gs.to_json())
    _emit(args, {"n": gs.n, "m": gs.m, "brick_cells": len(gs.brick),
                 "scaled": bool(args.scaled), "out": args.out},
          f"built gadgets: n={gs.n}, {gs.m} tower triples, "
          f"brick {len(gs.brick)} cells -> {args.out}")
    return 0


def cmd_realize(args) -> int:
    ts = boardgames.CyclicTriominoSet.from_json(_read_json(args.triomino))
    grid = boardgames.GridAssignment.from_json(_read_json(args.solution))
    gs = gadgets.build_gadgets(ts)
    if args.scaled:
        gs = gadgets.decorate_gadgets(gs)
    cert = gadgets.realize_tiling(ts, gs, grid, scaled=args.scaled)
    violation = solver.certificate_violation(cert)
    if violation:
        print(f"internal error: realized certificate invalid: {violation}",
              file=sys.stderr)
        return 2
    _write_json(args.out, cert.to_json())
    _emit(args, {"region": cert.region.to_json(),
                 "placements": len(cert.placements), "out": args.out},
          f"verified certificate with {len(cert.placements)} placements "
          f"on torus {cert.region.dims} -> {args.out}")
    return 0


def cmd_solve(args) -> int:
    region = solver.Region.from_json(_read_json(args.region))
    tiles = _load_tiles(_read_json(args.tiles))
    cert = solver.solve(region, tiles, max_cells=args.max_cells)
    if cert is None:
        _emit(args, {"status": "UNSAT"}, "UNSAT (search exhausted)")
        return 1
    if args.out:
        _write_json(args.out, cert.to_json())
    _emit(args, {"status": "SAT", "placements": len(cert.placements),
                 "out": args.out},
          f"SAT: {len(cert.placements)} placements"
          + (f" -> {args.out}" if args.out else ""))
    return 0


def _write_report_dir(report_dir: str, reports) -> None:
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(str(out / "report.json"), [r.to_json() for r in reports])
    with open(out / "cases.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "case", "status", "seconds", "message"])
        for rep in reports:
            for res in rep.results:
                writer.writerow([rep.suite, res.case,
                                 "pass" if res.ok else "fail",
                                 f"{res.seconds:.4f}", res.message])
    from . import viz
    viz.render_suite_summary(reports, str(out / "summary.png"))
    ran = {r.suite for r in reports}
    if "blockers" in ran:
        viz.render_blocker_table(gadgets.blocker_truth_table(),
                                 str(out / "blockers.png"))
    if "towers" in ran:
        n = 5
        verdicts = {(a, b, c): gadgets.tower_check(n, a, b, c)
                    for a in range(n) for b in range(n) for c in range(n)}
        viz.render_tower_criterion(n, verdicts, str(out / f"towers_n{n}.png"))


def cmd_verify_suite(args) -> int:
    params = suites.SuiteParams(
        m_max=args.m_max,
        high_dim_m_max=args.high_dim_m_max,
        tower_moduli=tuple(args.tower_n) if args.tower_n else (5, 7),
        oracle_cases=args.cases,
        seed=args.seed,
        only=args.only,
    )
    reports = suites.run_suite(args.suite, params)
    for rep in reports:
        status = "ok" if rep.ok else f"{len(rep.failures)} FAILED"
        print(f"[{rep.suite}] {rep.cases} cases, {status} "
              f"({rep.wall_time_s:.1f}s)")
        for f in rep.failures:
            print(f"  FAIL {f['case']}: {f['message']}")
            print(f"       repro: {f['repro']}")
    if args.report_dir:
        _write_report_dir(args.report_dir, reports)
        print(f"report written to {args.report_dir}")
    if args.json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    return 0 if all(r.ok for r in reports) else 1


def cmd_export(args) -> int:
    data = _read_json(args.infile)
    is_cert = isinstance(data, dict) and "placements" in data
    if is_cert:
        cert = solver.TilingCertificate.from_json(data)
    else:
        items = _load_tiles(data)
        if len(items) != 1:
            raise TileError("export expects a single tile or a certificate")
        t = items[0]
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    if args.format == "xyz":
        from .export import certificate_cells
        tilelike = certificate_cells(cert) if is_cert else t
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(tilelike.to_xyz())
    elif args.format == "obj":
        from .export import certificate_cells, obj_mesh
        tilelike = certificate_cells(cert) if is_cert else t
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(obj_mesh(tilelike))
    else:  # png
        from . import viz
        if is_cert:
            viz.render_certificate(cert, args.out)
        else:
            viz.render_tile(t, args.out)
    _emit(args, {"format": args.format, "out": args.out},
          f"wrote {args.format} export to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS,
                        help="cell budget guard for large constructions")
    common.add_argument("--json", action="store_true",
                        help="machine-readable stdout")
    common.add_argument("--seed", type=int, default=1,
                        help="seed for randomized suites (deterministic "
                             "paths ignore it)")

    parser = argparse.ArgumentParser(
        prog="tileforge",
        description="lattice-tile constructions, gadgets and exact-cover "
                    "verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[common],
                       help="build the labeled cube partition")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--decorate", action="store_true",
                   help="triple the parts and add the alignment bumps/dents")
    p.add_argument("--out", required=True)
    p.add_argument("--figure", help="optional PNG of the layer label maps")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("simulate", parents=[common],
                       help="replace tiles by connected equivalents")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--dry-run", action="store_true",
                   help="report sizes only, build nothing")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("encode", parents=[common],
                       help="embed a domino set into a cyclic triomino set")
    p.add_argument("--domino", required=True)
    p.add_argument("--n", type=int,
                   help="modulus (default: smallest legal, coprime to 6)")
    p.add_argument("--any-modulus", action="store_true",
                   help="drop the coprime-to-6 requirement")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("gadgets", parents=[common],
                       help="build the brick and filler for a rule set")
    p.add_argument("--triomino", required=True)
    p.add_argument("--scaled", action="store_true",
                   help="include the tripled, bump-decorated variants")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gadgets)

    p = sub.add_parser("realize", parents=[common],
                       help="turn a grid solution into a tiling certificate")
    p.add_argument("--triomino", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("solve", parents=[common],
                       help="exact-cover tiling of a region")
    p.add_argument("--region", required=True)
    p.add_argument("--tiles", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-suite", parents=[common],
                       help="run a named verification suite")
    p.add_argument("suite", choices=suites.SUITE_NAMES)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--high-dim-m-max", type=int, default=4)
    p.add_argument("--tower-n", type=int, action="append",
                   help="tower modulus; repeatable (default 5 and 7)")
    p.add_argument("--cases", type=int, default=200,
                   help="random instance count for solver-oracle")
    p.add_argument("--only", help="substring filter on case ids")
    p.add_argument("--report-dir",
                   help="write report.json, cases.csv and figures here")
    p.set_defaults(func=cmd_verify_suite)

    p = sub.add_parser("export", parents=[common],
                       help="export a tile or certificate for inspection")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("xyz", "obj", "png"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CellBudgetError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except (TileError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
