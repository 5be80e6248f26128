"""``flatgame`` command line.

Exit status: 0 on success, 2 on usage errors, 3 on domain errors.  Output
contains no color or terminal control codes, so ``NO_COLOR`` is honoured
trivially.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import continuous as cont
from .equilibrium import FLAGS, classify, nash_equilibria
from .errors import GameError, UsageError
from .flatten import iterate_flatten, m_equilibria
from .game import BUILTIN_NAMES, FiniteGame, builtin
from .io import FORMATS, emit_game, format_rational, load_game
from .mixed import (
    expected_payoff,
    mixed_equilibrium_candidates,
    outcome_lottery,
    min_gain,
    pure_equilibrium_lifts,
    selection_stream,
)
from .multiplayer import TensorGame, flat_tensor_game, m_equilibria_n


def _real(v: float) -> str:
    return f"{v:.12g}"


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="one of: " + ", ".join(BUILTIN_NAMES))
    src.add_argument("--file", metavar="PATH", help="game document (.json or matrix text)")
    p.add_argument("--input-format", choices=FORMATS, help="override format guessed from the file name")
    p.add_argument("--lo", type=int, help="traveler: lowest claim")
    p.add_argument("--hi", type=int, help="traveler: highest claim")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json"), default="table")


def _load(args) -> FiniteGame | TensorGame:
    if args.builtin:
        params = None
        if args.lo is not None or args.hi is not None:
            params = (2 if args.lo is None else args.lo, 100 if args.hi is None else args.hi)
        return builtin(args.builtin, params)
    try:
        return load_game(args.file, args.input_format)
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror or e}") from None


def _two_player(game) -> FiniteGame:
    if isinstance(game, TensorGame):
        raise UsageError("this command needs a two-player game")
    return game


def _labels(g: FiniteGame, p) -> list[str]:
    return [g.labels1[p[0]], g.labels2[p[1]]]


def _bimatrix_lines(g: FiniteGame) -> list[str]:
    cells = [[f"[{format_rational(g.payoff1[x][y])},{format_rational(g.payoff2[x][y])}]"
              for y in range(g.cols)] for x in range(g.rows)]
    width = max(len(c) for row in cells for c in row)
    return [" ".join(c.rjust(width) for c in row) for row in cells]


def _matrix_json(g: FiniteGame) -> list:
    return [[[format_rational(g.payoff1[x][y]), format_rational(g.payoff2[x][y])]
             for y in range(g.cols)] for x in range(g.rows)]


# -- commands -----------------------------------------------------------------------


def cmd_classify(args, out) -> None:
    g = _two_player(_load(args))
    report = classify(g)
    if args.format == "json":
        rows = [{"profile": _labels(g, p), "flags": [f for f in FLAGS if f in report.flags[p]]}
                for p in report.profiles]
        json.dump({"title": g.title, "flags": list(FLAGS), "profiles": rows}, out, indent=1)
        out.write("\n")
        return
    width = max(len("profile"), *(len(g.label(p)) for p in report.profiles))
    out.write(f"{g.title}\n")
    out.write("profile".ljust(width) + " " + " ".join(FLAGS) + "\n")
    for p in report.profiles:
        marks = " ".join(("x" if f in report.flags[p] else ".").center(len(f)) for f in FLAGS)
        out.write(g.label(p).ljust(width) + " " + marks.rstrip() + "\n")


def cmd_flatten(args, out) -> None:
    game = _load(args)
    if isinstance(game, TensorGame):
        flat = flat_tensor_game(game)
        out.write(emit_game(flat, "json"))
        return
    results = iterate_flatten(game, args.iterations)
    if args.format == "json":
        doc = {"title": game.title, "iterations": []}
        for res in results:
            entry = {"iteration": res.iteration, "fixed_point": res.is_fixed_point,
                     "payoffs": _matrix_json(res.flat)}
            if args.responses:
                entry["responses"] = [
                    {"profile": _labels(res.source, p),
                     "player1": [res.source.labels1[k] for k in sorted(r1)],
                     "player2": [res.source.labels2[k] for k in sorted(r2)]}
                    for p, (r1, r2) in sorted(res.responses.items())
                ]
            doc["iterations"].append(entry)
        json.dump(doc, out, indent=1)
        out.write("\n")
        return
    for res in results:
        note = " (fixed point)" if res.is_fixed_point else ""
        out.write(f"{res.flat.title} [iteration {res.iteration}]{note}\n")
        for line in _bimatrix_lines(res.flat):
            out.write(line + "\n")
        if args.responses:
            out.write("not-worse responses (player 1 | player 2):\n")
            for p, (r1, r2) in sorted(res.responses.items()):
                a = ",".join(res.source.labels1[k] for k in sorted(r1))
                b = ",".join(res.source.labels2[k] for k in sorted(r2))
                out.write(f"  {res.source.label(p)}: {{{a}}} | {{{b}}}\n")


def cmd_me(args, out) -> None:
    game = _load(args)
    if isinstance(game, TensorGame):
        eqs = sorted(m_equilibria_n(game))
        if args.format == "json":
            json.dump({"title": game.title, "me": [[s + 1 for s in p] for p in eqs]}, out, indent=1)
            out.write("\n")
        else:
            out.write(f"m-equilibria of {game.title}:\n")
            for p in eqs:
                out.write("(" + ",".join(str(s + 1) for s in p) + ")\n")
        return
    eqs = sorted(m_equilibria(game))
    if args.format == "json":
        json.dump({"title": game.title, "me": [_labels(game, p) for p in eqs]}, out, indent=1)
        out.write("\n")
        return
    out.write(f"m-equilibria of {game.title}:\n")
    for p in eqs:
        out.write(game.label(p) + "\n")


def cmd_mixed(args, out) -> None:
    g = _two_player(_load(args))
    cands = mixed_equilibrium_candidates(g, args.max_support)
    lifts = pure_equilibrium_lifts(g)
    if args.format == "json":
        doc = {
            "title": g.title,
            "equilibria": [
                {"row": [format_rational(v) for v in mp.strat1.weights],
                 "col": [format_rational(v) for v in mp.strat2.weights],
                 "payoffs": [format_rational(expected_payoff(g, mp, i)) for i in (1, 2)],
                 "min_gain": [format_rational(min_gain(outcome_lottery(g, mp, i))) for i in (1, 2)]}
                for mp in cands
            ],
            "lifts": [{"profile": _labels(g, e.profile), "pure": sorted(e.pure), "lifted": sorted(e.lifted)}
                      for e in lifts],
        }
        json.dump(doc, out, indent=1)
        out.write("\n")
        return
    out.write(f"mixed equilibria of {g.title} (support <= {args.max_support}):\n")
    for mp in cands:
        pay = ", ".join(format_rational(expected_payoff(g, mp, i)) for i in (1, 2))
        low = ", ".join(format_rational(min_gain(outcome_lottery(g, mp, i))) for i in (1, 2))
        row = ",".join(format_rational(v) for v in mp.strat1.weights)
        col = ",".join(format_rational(v) for v in mp.strat2.weights)
        out.write(f"  (({row}), ({col}))  expected ({pay})  minimal gain ({low})\n")
    out.write("pure equilibria lifted to the mixed extension:\n")
    for e in lifts:
        out.write(f"  {g.label(e.profile)}: pure {{{','.join(sorted(e.pure))}}} "
                  f"lifted {{{','.join(sorted(e.lifted))}}}\n")


def cmd_duopoly(args, out) -> None:
    if args.model == "dimcost":
        if args.C is None:
            raise UsageError("--C is required for the dimcost model")
        d = cont.diminishing_cost(args.L, args.C, args.xmax)
    else:
        if args.C is not None or args.xmax is not None:
            raise UsageError("--C and --xmax apply to the dimcost model only")
        d = cont.ParametricDuopoly(args.model, args.L)
    me = cont.analytic_me_set(d)
    ne = cont.nash_point(d)
    doc: dict = {"model": d.model, "L": _real(d.L), "me_set": me.description}
    if d.model == "dimcost":
        doc.update(C=_real(d.C), xmax=_real(d.xmax))
    if ne is not None:
        doc["nash"] = [_real(v) for v in ne]
        doc["nash_payoff"] = _real(cont.payoff(d, *ne))
        doc["nash_is_me"] = cont.verify_me_membership(d, ne)
    if args.grid:
        lower = args.lower if args.lower is not None else (0.01 if d.model == "puu" else 0.0)
        grid = cont.GridSpec(args.grid, lower, d.upper)
        doc["grid"] = {"points": args.grid, "lower": _real(lower), "upper": _real(d.upper), "step": _real(grid.step)}
        if args.check:
            cmp = cont.verify_flat_closed_form(d, grid)
            doc["flat_check"] = {
                "max_deviation": _real(cmp.max_deviation),
                "worst_point": [_real(v) for v in cmp.worst_point],
                "max_budget": _real(cmp.max_budget),
                "excess_over_budget": _real(cmp.excess),
                "within_budget": cmp.within_budget,
            }
        pts = cont.grid_m_equilibria(d, grid)
        doc["grid_me_count"] = len(pts)
        if d.model == "cournot":
            doc["grid_me_hausdorff_steps"] = _real(cont.hausdorff(pts, cont.restrict_to_grid(me, grid)) / grid.step)
    if args.format == "json":
        json.dump(doc, out, indent=1)
        out.write("\n")
        return
    for k, v in doc.items():
        if isinstance(v, dict):
            out.write(f"{k}:\n")
            for kk, vv in v.items():
                out.write(f"  {kk}: {vv}\n")
        else:
            out.write(f"{k}: {v}\n")


def cmd_lstar(args, out) -> None:
    lo, hi = cont.lstar_bracket(args.tol)
    root = 0.5 * (lo + hi)
    flo = cont.lstar_polynomial(Fraction(lo))
    fhi = cont.lstar_polynomial(Fraction(hi))
    if args.format == "json":
        json.dump({"lstar": _real(root), "bracket": [_real(lo), _real(hi)],
                   "sign_change": bool(flo > 0 > fhi) or lo == hi}, out, indent=1)
        out.write("\n")
        return
    out.write(f"L* = {_real(root)}\n")
    out.write(f"bracket [{_real(lo)}, {_real(hi)}], p(lo) {'>' if flo > 0 else '<='} 0, "
              f"p(hi) {'<' if fhi < 0 else '>='} 0\n")


def cmd_select(args, out) -> None:
    g = _two_player(_load(args))
    eqs = m_equilibria(g) if args.among == "me" else nash_equilibria(g)
    stream = selection_stream(eqs, args.seed)
    picks = [next(stream) for _ in range(args.draws)]
    if args.format == "json":
        json.dump({"title": g.title, "among": args.among, "seed": args.seed,
                   "choices": [_labels(g, p) for p in picks]}, out, indent=1)
        out.write("\n")
        return
    for p in picks:
        out.write(g.label(p) + "\n")


def cmd_builtin(args, out) -> None:
    if args.list or not args.name:
        for name in BUILTIN_NAMES:
            out.write(name + "\n")
        return
    params = None
    if args.lo is not None or args.hi is not None:
        params = (2 if args.lo is None else args.lo, 100 if args.hi is None else args.hi)
    out.write(emit_game(builtin(args.name, params), args.emit))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatgame", description="Flat games and m-equilibria of normal-form games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="solution-concept flags for every pure profile")
    _add_source(p)
    _add_output(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("flatten", help="print the flat game (lower payoffs)")
    _add_source(p)
    _add_output(p)
    p.add_argument("--iterations", type=int, default=1, metavar="K")
    p.add_argument("--responses", action="store_true", help="also print not-worse-response sets")
    p.set_defaults(func=cmd_flatten)

    p = sub.add_parser("me", help="list m-equilibria")
    _add_source(p)
    _add_output(p)
    p.set_defaults(func=cmd_me)

    p = sub.add_parser("mixed", help="mixed equilibria by support enumeration")
    _add_source(p)
    _add_output(p)
    p.add_argument("--max-support", type=int, default=3, metavar="K")
    p.set_defaults(func=cmd_mixed)

    p = sub.add_parser("duopoly", help="continuous duopoly closed forms and grid oracle")
    p.add_argument("--model", choices=cont.MODELS, required=True)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--C", type=float)
    p.add_argument("--xmax", type=float, help="dimcost truncation (default 100 L)")
    p.add_argument("--grid", type=int, metavar="N", help="grid points per axis")
    p.add_argument("--lower", type=float, help="grid lower bound (puu default 0.01)")
    p.add_argument("--check", action="store_true", help="compare closed-form flat payoff with the grid oracle")
    _add_output(p)
    p.set_defaults(func=cmd_duopoly)

    p = sub.add_parser("lstar", help="root of 1+4L+6L^2+4L^3+L^4-L^5 by bisection")
    p.add_argument("--tol", type=float, default=1e-12)
    _add_output(p)
    p.set_defaults(func=cmd_lstar)

    p = sub.add_parser("select", help="seeded uniform choice among equilibria")
    _add_source(p)
    _add_output(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--draws", type=int, default=1)
    p.add_argument("--among", choices=("me", "ne"), default="me")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("builtin", help="list or emit the built-in games")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit", choices=FORMATS, default="json")
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.set_defaults(func=cmd_builtin)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for name in ("iterations", "draws", "tol"):
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            print(f"flatgame: --{name} must be positive", file=sys.stderr)
            return 2
    try:
        args.func(args, out)
    except UsageError as e:
        print(f"flatgame: {e}", file=sys.stderr)
        return 2
    except GameError as e:
        print(f"flatgame: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
