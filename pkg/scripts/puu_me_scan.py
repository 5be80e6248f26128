"""Puu duopoly: where the closed-form flat game and the listed m-equilibrium
set (triangle, E points, N point) agree.

Scans a square of points, runs the sampled m-equilibrium check on each and
tabulates it against membership in the listed set.
"""

import argparse
import math

import numpy as np

from flatgame.continuous import analytic_me_set, deviation_gains, lstar, puu, verify_me_membership


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=float, nargs="*", default=[2.0, 8.0, 20.0])
    ap.add_argument("--lstar", action="store_true", help="also scan at L = L*")
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--samples", type=int, default=400)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    Ls = list(args.L) + ([lstar()] if args.lstar else [])

    for L in Ls:
        d = puu(L)
        s = analytic_me_set(d)
        xs = np.linspace(0.0, L, args.points)
        table = {(a, b): 0 for a in (True, False) for b in (True, False)}
        examples = {}
        for x in xs:
            for y in xs:
                p = (float(x), float(y))
                listed = s.contains(p, 1e-9)
                found = verify_me_membership(d, p, args.samples, args.tol)
                table[listed, found] += 1
                examples.setdefault((listed, found), p)
        print(f"L = {L:.6g}: {s.description}")
        print(f"  listed & passes {table[True, True]:5d}   listed & fails {table[True, False]:5d}")
        print(f"  unlisted & passes {table[False, True]:3d}   unlisted & fails {table[False, False]:5d}")
        for key in ((True, False), (False, True)):
            if key in examples:
                p = examples[key]
                print(f"  e.g. {p}: sampled flat gains {tuple(round(g, 4) for g in deviation_gains(d, p))}")
        r = math.sqrt(L) / 2
        print(f"  (L/4, L/4) passes: {verify_me_membership(d, (L / 4, L / 4))}; "
              f"(sqrt L/2, sqrt L/2) passes: {verify_me_membership(d, (r, r))}")


if __name__ == "__main__":
    main()
