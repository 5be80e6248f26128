"""Traveler's dilemma: equilibria, the flat game, and a population view.

The population part compares the claims 2 and 100 against a co-player drawn
from a mix: a share ``q`` claims ``c``, the rest claim 2.
"""

import argparse
from fractions import Fraction

from flatgame.equilibrium import nash_equilibria
from flatgame.flatten import iterate_flatten, m_equilibria
from flatgame.game import traveler


def sign(v):
    return (v > 0) - (v < 0)


def expected(g, claim, mix):
    x = claim - 2
    return sum(q * g.payoff1[x][c - 2] for c, q in mix.items())


def threshold(g, c):
    """Smallest share q of claim-c players making 100 beat 2 (linear in q)."""
    gain = lambda q: expected(g, 100, {c: q, 2: 1 - q}) - expected(g, 2, {c: q, 2: 1 - q})
    a, b = gain(Fraction(0)), gain(Fraction(1))
    return -a / (b - a) if b != a else None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--hi", type=int, default=100)
    args = ap.parse_args()
    g = traveler(2, args.hi)
    res = iterate_flatten(g, 2)
    flat = res[0].flat
    print(f"NE: {[g.label(p) for p in sorted(nash_equilibria(g))]}")
    print(f"ME: {[g.label(p) for p in sorted(m_equilibria(g))]}")
    print(f"NE of the twice-flattened game: {[g.label(p) for p in sorted(nash_equilibria(res[1].flat))]}")

    claims = range(2, args.hi + 1)
    off = [(x, y) for i, x in enumerate(claims) for j, y in enumerate(claims)
           if flat.payoff1[i][j] != min(x, y) - 4 + 2 * sign(x - y)]
    print(f"cells where the lower payoff differs from min(x,y)-4+2 sign(x-y): {len(off)}")
    for x in range(2, 7):
        row = [(y, flat.payoff1[x - 2][y - 2], min(x, y) - 4 + 2 * sign(x - y)) for y in range(2, 9)]
        print(f"  x={x}: " + "  ".join(f"y={y}:{int(v)}/{f}" for y, v, f in row))
    print("  (lower payoff / formula; claims cannot go below 2, so low rows are cut off)")

    print("\nshare q of co-players claiming c (rest claim 2) at which 100 beats 2:")
    for c in (54, 60, 75, 90, 99):
        q = threshold(g, c)
        print(f"  c={c:3d}: q > {q} = {float(q):.4f}")
    for q in (Fraction(1, 10), Fraction(1, 5)):
        mix = {90: q, 2: 1 - q}
        ratio = expected(g, 100, mix) / expected(g, 2, mix)
        print(f"  q={q} at c=90: E[100]/E[2] = {ratio} = {float(ratio):.2f}")


if __name__ == "__main__":
    main()
