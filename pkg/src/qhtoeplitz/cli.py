"""Command-line front end: mellin, rank and verify.

Every command builds a JSON envelope (schema "toeplitz-qh/1"); --json prints
it, otherwise a short table is shown. The exit status is 0 exactly when
every check in the envelope passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .catalog import parametric_sweep, run_examples
from .mellin import MellinPoleError, MellinTransform, RadialSymbol, SymbolParseError
from .operators import DEFAULT_MARGIN, QHOperator, commutator_map, gen_semicommutator_map
from .oracle import QuadratureError, quad_mellin
from .rank import DEFAULT_TOL, detect_rank, svd_rank
from .support import COMMUTATOR, GENSEMI, normalize_space
from .theorems import (B_COMMUTE, B_GENSEMI, H_COMMUTE, H_GENSEMI, GridSpec, rank_gap_check,
                       negative_control, parity_violations, verify_corollaries, verify_grid)

SCHEMA = "toeplitz-qh/1"
DEFAULT_GRID = "k1=-6..6,k2=-6..6,m=-1..7"
VERIFY_TARGETS = (H_COMMUTE, H_GENSEMI, B_COMMUTE, B_GENSEMI, "examples", "cross-space",
                  "equivalence", "parity", "negative", "corollaries", "all")
GAP_MS = (-0.5, 0.0, 1.0, 2.5)


def envelope(command: str, inputs: dict, outputs, passed: bool, summary: str,
             tol: float, margin: int, window=None) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": command, "inputs": inputs,
            "outputs": outputs, "tolerances": {"tol": tol, "rel": 1e-9}, "window": window,
            "margin": margin, "passed": passed, "summary": summary,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _parse_symbol(text: str, flag: str) -> RadialSymbol:
    try:
        return RadialSymbol.parse(text)
    except SymbolParseError as exc:
        raise CliError(f"{flag}: {exc}\n  {text}\n  {' ' * exc.position}^") from exc


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# mellin
# ---------------------------------------------------------------------------


def cmd_mellin(args) -> dict:
    sym = _parse_symbol(args.symbol, "--symbol")
    closed = MellinTransform.of(sym)
    rows, ok = [], True
    for z in args.z:
        row = {"z": z}
        try:
            row["closed_form"] = closed(z)
        except MellinPoleError:
            row["closed_form"] = None
        try:
            row["quadrature"] = quad_mellin(sym, z)
        except QuadratureError as exc:
            row["quadrature"] = None
            row["note"] = str(exc)
        a, b = row["closed_form"], row["quadrature"]
        if a is None or b is None:
            row["agree"] = a is None and b is None
        else:
            row["agree"] = abs(a - b) <= 1e-8 * max(1.0, abs(a))
        ok &= row["agree"]
        rows.append(row)
    return envelope("mellin", {"symbol": args.symbol, "parsed": str(sym), "z": args.z},
                    rows, ok, f"{sum(r['agree'] for r in rows)}/{len(rows)} agree",
                    args.tol, args.margin)


def _show_mellin(env: dict) -> str:
    lines = [f"symbol: {env['inputs']['parsed']}", f"{'z':>10}  {'closed form':>22}  {'quadrature':>22}  agree"]
    for r in env["outputs"]:
        fmt = lambda x: "pole" if x is None else f"{x:.15g}"  # noqa: E731
        lines.append(f"{r['z']:>10g}  {fmt(r['closed_form']):>22}  {fmt(r['quadrature']):>22}  {r['agree']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------


def cmd_rank(args) -> dict:
    space = normalize_space(args.space)
    s1, s2 = _parse_symbol(args.sym1, "--sym1"), _parse_symbol(args.sym2, "--sym2")
    T1, T2 = QHOperator.of(space, args.k1, s1), QHOperator.of(space, args.k2, s2)
    if args.kind == GENSEMI:
        if args.psi is None:
            raise CliError("--psi is required with --kind gensemi")
        M = gen_semicommutator_map(T1, T2, _parse_symbol(args.psi, "--psi"), margin=args.margin)
    else:
        M = commutator_map(T1, T2, margin=args.margin)
    rep = detect_rank(M, tol=args.tol)
    out = rep.to_json()
    out["svd_rank"] = svd_rank(M, restrict_to_support=rep.finite)
    passed = rep.finite and rep.range_ok and rep.bound_ok and rep.parity_ok is not False
    summary = f"rank {rep.rank}" if rep.finite else "not finite rank at this window"
    inputs = {"space": space, "k1": args.k1, "sym1": str(s1), "k2": args.k2, "sym2": str(s2),
              "psi": args.psi, "kind": args.kind}
    return envelope("rank", inputs, out, passed, summary, args.tol, args.margin, list(M.window))


def _show_rank(env: dict) -> str:
    o = env["outputs"]
    lines = [f"space {o['space']}, {o['kind']}, degrees ({o['k1']}, {o['k2']}), window {o['window']}",
             f"finite: {o['finite']}   rank: {o['rank']}   svd rank: {o['svd_rank']}"]
    if o["finite"]:
        for t in o["canonical"]:
            lines.append(f"  C = {t['coeff']:+.15g}   e_{t['index']} (x) e_{t['source']}")
        lines.append(f"range ok: {o['range_ok']}   bound ok: {o['bound_ok']}   parity ok: {o['parity_ok']}")
    else:
        lines.append(f"nonzero outside the support set: {o['margin_violations'][:3]}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _grid_part(report, cells: bool) -> tuple[dict, bool]:
    return report.to_json(cells=cells), report.passed


def _run_target(target: str, grid: GridSpec, args, csv_rows: list) -> tuple[dict, bool]:
    cells = args.cells
    if target in (H_COMMUTE, H_GENSEMI, B_COMMUTE, B_GENSEMI, "equivalence"):
        rep = verify_grid(target, grid, args.margin, args.tol)
        csv_rows.extend(rep.cells)
        return _grid_part(rep, cells)
    if target == "parity":
        rep = verify_grid(H_COMMUTE, grid, args.margin, args.tol)
        odd = parity_violations(rep)
        return {"checked": len(rep.cells), "odd_rank_cells": [c.to_json() for c in odd]}, not odd
    if target == "cross-space":
        rep = verify_grid("cross-space", grid, args.margin, args.tol)
        csv_rows.extend(rep.cells)
        part, ok = _grid_part(rep, cells)
        gaps = [rank_gap_check(m, args.margin, args.tol) for m in GAP_MS]
        part["rank_gap"] = [r.to_json() for r in gaps]
        return part, ok and all(gaps)
    if target == "examples":
        ex, par = run_examples(margin=args.margin, tol=args.tol), parametric_sweep()
        return {"examples": ex.to_json(), "parametric": par.to_json()}, ex.passed and par.passed
    if target == "negative":
        rep = negative_control(draws=args.draws, seed=args.seed, margin=args.margin, tol=args.tol)
        return rep.to_json(), rep.passed
    if target == "corollaries":
        rep = verify_corollaries(args.margin, args.tol)
        csv_rows.extend(rep.cells)
        return _grid_part(rep, cells)
    raise CliError(f"unknown theorem {target!r}")


def cmd_verify(args) -> dict:
    try:
        grid = GridSpec.parse(args.grid)
    except ValueError as exc:
        raise CliError(f"--grid: {exc}") from exc
    targets = [t for t in VERIFY_TARGETS if t != "all"] if args.theorem == "all" else [args.theorem]
    outputs, csv_rows, verdicts = {}, [], {}
    for t in targets:
        outputs[t], verdicts[t] = _run_target(t, grid, args, csv_rows)
    if args.csv:
        write_csv(args.csv, csv_rows)
    passed = all(verdicts.values())
    summary = ", ".join(f"{t}: {'pass' if ok else 'FAIL'}" for t, ok in verdicts.items())
    inputs = {"theorem": args.theorem, "grid": args.grid, "draws": args.draws, "seed": args.seed}
    return envelope("verify", inputs, outputs, passed, summary, args.tol, args.margin)


def write_csv(path: str, cells) -> None:
    keys = sorted({k for c in cells for k in c.params})
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theorem", *keys, "conditions", "predicted_rank", "computed_rank", "passed", "detail"])
        for c in cells:
            w.writerow([c.theorem, *(c.params.get(k, "") for k in keys),
                        " ".join(map(str, c.conditions)),
                        "" if c.predicted_rank is None else c.predicted_rank,
                        "" if c.computed_rank is None else c.computed_rank, c.passed, c.detail])


def _show_verify(env: dict) -> str:
    lines = []
    for t, part in env["outputs"].items():
        if t == "examples":
            ex, par = part["examples"], part["parametric"]
            lines.append(f"{t:<12} examples {ex['summary']}, parametric {par['summary']}")
            lines += [f"  FAIL {r['name']}: {r['detail']}" for r in ex["results"] + par["results"]
                      if not r["passed"]]
        elif t == "negative":
            lines.append(f"{t:<12} {part['draws']} draws, margin failures {part['margin_fraction']:.0%}"
                         f" (need {part['threshold']:.0%}), {'pass' if part['passed'] else 'FAIL'}")
        elif t == "parity":
            lines.append(f"{t:<12} {part['checked']} commutators, {len(part['odd_rank_cells'])} odd ranks")
        else:
            lines.append(f"{t:<12} {part['checked']} checked, {part['skipped']} skipped, "
                         f"{part['failed']} failed")
            lines += [f"  FAIL {c['params']} {c['detail']}" for c in part.get("cells", [])
                      if not c["passed"]][:10]
            for r in part.get("rank_gap", []):
                lines.append(f"  rank gap m={r['m']:g}: L2h ranks "
                             f"{r['harmonic_commutator_rank']}/{r['harmonic_gensemi_rank']}, "
                             f"L2a commutator {r['bergman_commutator']}, "
                             f"{'pass' if r['passed'] else 'FAIL'}")
    lines.append(("PASS" if env["passed"] else "FAIL") + ": " + env["summary"])
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhtoeplitz",
                                description="Finite-rank commutators of quasihomogeneous Toeplitz operators.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--margin", type=int, default=DEFAULT_MARGIN, help="window margin (default 20)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="zero tolerance (default 1e-10)")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mellin", parents=[common], help="closed-form vs quadrature Mellin transform")
    m.add_argument("--symbol", required=True, help='radial symbol, e.g. "3*r^-1 - r^3" or "r^2*log"')
    m.add_argument("--z", type=float, nargs="+", required=True)
    m.set_defaults(func=cmd_mellin, show=_show_mellin)

    r = sub.add_parser("rank", parents=[common], help="rank and canonical form of one operator")
    r.add_argument("--space", default="h", help="h (harmonic) or a (Bergman)")
    r.add_argument("--k1", type=int, required=True)
    r.add_argument("--sym1", required=True)
    r.add_argument("--k2", type=int, required=True)
    r.add_argument("--sym2", required=True)
    r.add_argument("--psi")
    r.add_argument("--kind", choices=(COMMUTATOR, GENSEMI), default=COMMUTATOR)
    r.set_defaults(func=cmd_rank, show=_show_rank)

    v = sub.add_parser("verify", parents=[common], help="check theorems, examples and controls")
    v.add_argument("--theorem", choices=VERIFY_TARGETS, default="all")
    v.add_argument("--grid", default=DEFAULT_GRID, help=f"parameter grid (default {DEFAULT_GRID})")
    v.add_argument("--csv", help="write per-cell grid results here")
    v.add_argument("--cells", action="store_true", help="include every grid cell in the JSON")
    v.add_argument("--draws", type=int, default=100, help="negative-control draws")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify, show=_show_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(env, indent=2, default=str))
    else:
        print(args.show(env))
    return 0 if env["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
