"""Cournot duopoly: grid m-equilibria against the two analytic segments."""

import argparse
import time

from flatgame.continuous import (
    GridSpec,
    analytic_me_set,
    cournot,
    deviation_gains,
    grid_m_equilibria,
    hausdorff,
    restrict_to_grid,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=201)
    args = ap.parse_args()

    d = cournot(args.L)
    me = analytic_me_set(d)
    grid = GridSpec.over(d, args.points)
    t0 = time.perf_counter()
    pts = grid_m_equilibria(d, grid)
    on = restrict_to_grid(me, grid)
    print(f"{d.describe()}: {len(pts)} grid m-equilibria, {len(on)} grid nodes on {me.description}")
    print(f"step {grid.step:.6g}, computed in {time.perf_counter() - t0:.2f} s")
    extra = sorted(set(pts) - set(on))
    missing = sorted(set(on) - set(pts))
    print(f"grid ME not on the set: {extra}")
    print(f"set nodes that are not grid ME: {missing}")
    for p in extra:
        print(f"  {p}: distance to set {me.distance(p):.4g}, sampled flat gains {deviation_gains(d, p)}")
    print(f"Hausdorff (max norm) {hausdorff(pts, on):.6g}; "
          f"without the points off the set {hausdorff([p for p in pts if me.distance(p) <= grid.step], on):.6g}")


if __name__ == "__main__":
    main()
