"""Continuous duopolies with closed-form lower payoffs.

Three models on a strategy interval, all quantitatively symmetric
(``P2(x, y) = P1(y, x)``):

* ``cournot``: ``P1 = x (L - x - y)`` on ``[0, L]``;
* ``puu``: ``P1 = (L / (x + y) - 1) x`` on ``[0, L]`` with ``P1(0, 0) = 0``;
* ``dimcost``: ``P1 = L x / (x + y) - C / x`` for ``x > 0``, ``0`` at ``x = 0``,
  truncated to ``[0, xmax]``.

Closed forms are evaluated in floating point.  The grid oracle
(:func:`discretize`) snaps parameters and nodes to exact decimals and builds
a :class:`~flatgame.game.FiniteGame`, so the finite machinery computes the
lower payoffs straight from their definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DomainError
from .flatten import flat_game, m_equilibria
from .game import FiniteGame, make_game

MODELS = ("cournot", "puu", "dimcost")


@dataclass(frozen=True)
class ParametricDuopoly:
    model: str
    L: float
    C: float | None = None
    xmax: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.model == "cournot" and not self.L > 0:
            raise DomainError("Cournot needs L > 0")
        if self.model == "puu" and not self.L > 1:
            raise DomainError("Puu needs L > 1")
        if self.model == "dimcost":
            if self.C is None or not self.C > 0 or not self.L >= 2 * self.C:
                raise DomainError("diminishing-cost model needs C > 0 and L >= 2C")
            if self.xmax is None:
                object.__setattr__(self, "xmax", 100 * self.L)
            if not self.xmax > 0:
                raise DomainError("xmax must be positive")
        elif self.C is not None or self.xmax is not None:
            raise DomainError(f"{self.model} takes no C or xmax")

    @property
    def upper(self) -> float:
        return self.xmax if self.model == "dimcost" else self.L

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, self.upper

    def check(self, *coords) -> None:
        hi = self.upper
        for v in coords:
            if not 0 <= v <= hi:
                raise DomainError(f"{v} outside the strategy interval [0, {hi}]")

    def describe(self) -> str:
        extra = f", C={self.C}, xmax={self.xmax}" if self.model == "dimcost" else ""
        return f"{self.model}(L={self.L}{extra})"


def cournot(L: float) -> ParametricDuopoly:
    return ParametricDuopoly("cournot", L)


def puu(L: float) -> ParametricDuopoly:
    return ParametricDuopoly("puu", L)


def diminishing_cost(L: float, C: float, xmax: float | None = None) -> ParametricDuopoly:
    return ParametricDuopoly("dimcost", L, C, xmax)


# The formulas below take the model constants explicitly so they work for
# floats and, inside ``discretize``, for exact Fractions.


def _p1(model: str, L, C, x, y):
    if model == "cournot":
        return x * (L - x - y)
    if model == "puu":
        if x + y == 0:
            return 0 * x
        return (L / (x + y) - 1) * x
    if x == 0:
        return 0 * x
    return L * x / (x + y) - C / x


def _flat1(model: str, L, C, x, y):
    if model == "cournot":
        return x * min(y, L - x - y)
    if model == "puu":
        return min(y, _p1(model, L, C, x, y))
    if x == 0:
        return 0 * x
    return -C / x


def payoff(d: ParametricDuopoly, x: float, y: float, player: int = 1) -> float:
    d.check(x, y)
    if player == 2:
        x, y = y, x
    elif player != 1:
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return float(_p1(d.model, d.L, d.C, x, y))


def analytic_flat_payoff(d: ParametricDuopoly, x: float, y: float, player: int = 1) -> float:
    d.check(x, y)
    if player == 2:
        x, y = y, x
    elif player != 1:
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return float(_flat1(d.model, d.L, d.C, x, y))


def nash_point(d: ParametricDuopoly) -> tuple[float, float] | None:
    """Interior Nash equilibrium of the original game, where there is one."""
    if d.model == "cournot":
        return d.L / 3, d.L / 3
    if d.model == "puu":
        return d.L / 4, d.L / 4
    return None


# -- L* ----------------------------------------------------------------------------


def lstar_polynomial(L):
    """``1 + 4L + 6L^2 + 4L^3 + L^4 - L^5``; exact for Fraction input."""
    return 1 + 4 * L + 6 * L**2 + 4 * L**3 + L**4 - L**5


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Shrink a sign-change bracket ``[lo, hi]`` below width ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


LSTAR_BRACKET = (3.0, 4.0)


def lstar_bracket(tolerance: float = 1e-12) -> tuple[float, float]:
    lo, hi = LSTAR_BRACKET
    if not (lstar_polynomial(Fraction(lo)) > 0 > lstar_polynomial(Fraction(hi))):
        raise RuntimeError("L* polynomial does not change sign on [3, 4]")
    return bisect(lstar_polynomial, lo, hi, tolerance)


def lstar(tolerance: float = 1e-12) -> float:
    """Unique positive root of ``1 + 4L + 6L^2 + 4L^3 + L^4 - L^5``."""
    lo, hi = lstar_bracket(tolerance)
    return 0.5 * (lo + hi)


# -- m-equilibrium sets --------------------------------------------------------------


def _segment_distance(p, a, b) -> float:
    p, a, b = (np.asarray(v, dtype=float) for v in (p, a, b))
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.linalg.norm(p - (a + t * ab)))


@dataclass(frozen=True)
class MESet:
    """Union of closed segments, points and at most one solid triangle.

    ``distance`` is Euclidean; ``contains`` is ``distance <= tol`` with weak
    inequalities on the boundary.
    """

    description: str
    segments: tuple[tuple[tuple[float, float], tuple[float, float]], ...] = ()
    points: tuple[tuple[float, float], ...] = ()
    triangle: tuple[tuple[float, float], ...] | None = None

    def _triangle_distance(self, p) -> float:
        a, b, c = self.triangle
        # inside test by barycentric signs
        def cross(o, u, v):
            return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])

        s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)]
        if all(v >= 0 for v in s) or all(v <= 0 for v in s):
            return 0.0
        return min(_segment_distance(p, a, b), _segment_distance(p, b, c), _segment_distance(p, c, a))

    def distance(self, point) -> float:
        out = math.inf
        for a, b in self.segments:
            out = min(out, _segment_distance(point, a, b))
        for q in self.points:
            out = min(out, math.dist(point, q))
        if self.triangle is not None:
            out = min(out, self._triangle_distance(point))
        return out

    def contains(self, point, tol: float = 1e-9) -> bool:
        return self.distance(point) <= tol

    def sample(self, per_piece: int = 200) -> list[tuple[float, float]]:
        """Points spread over the set (segments and isolated points only)."""
        out = list(self.points)
        for a, b in self.segments:
            for t in np.linspace(0.0, 1.0, per_piece):
                out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
        if self.triangle is not None:
            a, b, c = self.triangle
            for s in np.linspace(0.0, 1.0, per_piece):
                for t in np.linspace(0.0, 1.0 - s, max(2, int(per_piece * (1 - s)))):
                    out.append((a[0] + s * (b[0] - a[0]) + t * (c[0] - a[0]),
                                a[1] + s * (b[1] - a[1]) + t * (c[1] - a[1])))
        return out


def analytic_me_set(d: ParametricDuopoly, lstar_tol: float = 1e-4) -> MESet:
    L = d.L
    if d.model == "cournot":
        mid = (L / 3, L / 3)
        return MESet(
            "{(x, L-2x): 0 <= x <= L/3} u {(x, (L-x)/2): L/3 <= x <= L}",
            segments=(((0.0, L), mid), (mid, (L, 0.0))),
        )
    if d.model == "puu":
        r = math.sqrt(L)
        points: list[tuple[float, float]] = []
        parts = ["{x, y >= 0, x + y <= sqrt(L)}"]
        if abs(L - lstar()) <= lstar_tol:
            q = r * (L**0.25 - 1)
            points += [(r, q), (q, r)]
            parts.append("E = {(sqrt L, sqrt L (L^(1/4) - 1)), mirrored}")
        if L > 16:
            points.append((L / 4, L / 4))
            parts.append("N = {(L/4, L/4)}")
        return MESet(" u ".join(parts), points=tuple(points),
                     triangle=((0.0, 0.0), (r, 0.0), (0.0, r)))
    return MESet("{(0, 0)}", points=((0.0, 0.0),))


# -- sampled equilibrium checks ------------------------------------------------------


def _max_gain(fn, d: ParametricDuopoly, point, samples: int) -> tuple[float, float]:
    x, y = point
    d.check(x, y)
    grid = np.linspace(0.0, d.upper, samples)
    here1, here2 = fn(d, x, y, 1), fn(d, x, y, 2)
    best1 = max(fn(d, float(u), y, 1) for u in grid)
    best2 = max(fn(d, x, float(v), 2) for v in grid)
    return best1 - here1, best2 - here2


def deviation_gains(d: ParametricDuopoly, point, samples: int = 400, flat: bool = True) -> tuple[float, float]:
    """Largest sampled unilateral improvement of each player (flat or plain payoffs)."""
    return _max_gain(analytic_flat_payoff if flat else payoff, d, point, samples)


def verify_me_membership(d: ParametricDuopoly, point, samples: int = 400, tol: float = 1e-9) -> bool:
    """No sampled unilateral deviation raises either lower payoff by more than
    ``tol`` (``tol > 0`` gives the epsilon version)."""
    return max(deviation_gains(d, point, samples, flat=True)) <= tol


def verify_ne_membership(d: ParametricDuopoly, point, samples: int = 400, tol: float = 1e-9) -> bool:
    return max(deviation_gains(d, point, samples, flat=False)) <= tol


# -- grid oracle ---------------------------------------------------------------------


def snap(value) -> Fraction:
    """Exact decimal value of ``value`` as printed (``0.01 -> 1/100``)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(repr(float(value)))


@dataclass(frozen=True)
class GridSpec:
    points: int
    lower: float = 0.0
    upper: float | None = None
    nodes: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.points < 2:
            raise DomainError("a grid needs at least 2 points")
        if self.upper is None:
            raise DomainError("grid upper bound missing")
        lo, hi = snap(self.lower), snap(self.upper)
        if not hi > lo:
            raise DomainError("grid needs upper > lower")
        step = (hi - lo) / (self.points - 1)
        object.__setattr__(self, "nodes", tuple(lo + k * step for k in range(self.points)))

    @property
    def step(self) -> float:
        return float((snap(self.upper) - snap(self.lower)) / (self.points - 1))

    @classmethod
    def over(cls, d: ParametricDuopoly, points: int, lower: float = 0.0) -> "GridSpec":
        return cls(points, lower, d.upper)


def discretize(d: ParametricDuopoly, grid: GridSpec) -> FiniteGame:
    lo, hi = grid.nodes[0], grid.nodes[-1]
    if lo < 0 or hi > snap(d.upper):
        raise DomainError(f"grid [{float(lo)}, {float(hi)}] leaves the strategy interval [0, {d.upper}]")
    L = snap(d.L)
    C = snap(d.C) if d.C is not None else None
    nodes = grid.nodes
    p1 = [[_p1(d.model, L, C, x, y) for y in nodes] for x in nodes]
    p2 = [list(col) for col in zip(*p1)]
    labels = tuple(str(v) for v in nodes)
    return make_game(p1, p2, f"{d.describe()} on {grid.points}-point grid", labels, labels)


def _flat_lipschitz(d: ParametricDuopoly, grid: GridSpec) -> float:
    # bound on |d P1(x, y) / dy| over the grid box
    if d.model == "cournot":
        return float(grid.nodes[-1])
    if d.model == "puu":
        return d.L / (4 * float(grid.nodes[0])) if grid.nodes[0] > 0 else math.inf
    return d.L


@dataclass(frozen=True)
class FlatComparison:
    max_deviation: float
    worst_point: tuple[float, float]
    step: float
    lipschitz: float
    max_budget: float
    excess: float

    @property
    def within_budget(self) -> bool:
        return self.excess <= 0


def verify_flat_closed_form(d: ParametricDuopoly, grid: GridSpec) -> FlatComparison:
    """Compare the definition-based lower payoff on the grid with the closed form.

    Per cell the budget is ``lipschitz * step``, plus ``L x / (x + xmax)`` for
    the truncated diminishing-cost model (its infimum is only approached as
    the co-player's output grows without bound).
    """
    game = discretize(d, grid)
    flat = flat_game(game).flat
    xs = [float(v) for v in grid.nodes]
    lip = _flat_lipschitz(d, grid)
    step = grid.step
    worst, worst_pt, excess, max_budget = 0.0, (xs[0], xs[0]), -math.inf, 0.0
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            dev = abs(float(flat.payoff1[i][j]) - analytic_flat_payoff(d, x, y, 1))
            budget = lip * step
            if d.model == "dimcost":
                budget += d.L * x / (x + d.xmax)
            if dev > worst:
                worst, worst_pt = dev, (x, y)
            excess = max(excess, dev - budget)
            max_budget = max(max_budget, budget)
    return FlatComparison(worst, worst_pt, step, lip, max_budget, excess)


def grid_m_equilibria(d: ParametricDuopoly, grid: GridSpec) -> list[tuple[float, float]]:
    """m-equilibria of the discretized game, as coordinates."""
    game = discretize(d, grid)
    return [(float(grid.nodes[p.row]), float(grid.nodes[p.col])) for p in sorted(m_equilibria(game))]


def restrict_to_grid(me_set: MESet, grid: GridSpec, tol: float = 1e-9) -> list[tuple[float, float]]:
    """Grid nodes lying on the set (within ``tol``)."""
    xs = [float(v) for v in grid.nodes]
    return [(x, y) for x in xs for y in xs if me_set.distance((x, y)) <= tol]


def hausdorff(a, b, norm: str = "max") -> float:
    """Hausdorff distance between two finite point sets.

    The default max norm measures grid adjacency: diagonal neighbours are one
    step apart.  ``norm="euclidean"`` is also accepted.
    """
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        return math.inf
    diff = np.abs(a[:, None, :] - b[None, :, :])
    if norm == "max":
        dist = diff.max(axis=2)
    elif norm == "euclidean":
        dist = np.sqrt((diff**2).sum(axis=2))
    else:
        raise ValueError(f"unknown norm {norm!r}")
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))
