"""Pure-strategy solution concepts of a finite two-player game.

Every function returns a ``frozenset`` of :class:`~flatgame.game.Profile`.
For a profile ``(x*, y*)`` the unilateral deviations of player 1 are the
cells of column ``y*`` and those of player 2 the cells of row ``x*``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .game import FiniteGame, Profile

FLAGS = ("PO", "SPO", "WALD", "MAXIMIN", "NE", "SNE", "SSNE", "WSSNE", "CWI", "ME")


def _deviations(g: FiniteGame, p: Profile, player: int) -> Iterator[tuple[Fraction, Fraction]]:
    """(own payoff, co-player payoff) for each unilateral deviation of ``player``,
    the status quo included."""
    x, y = p
    if player == 1:
        for xx in range(g.rows):
            yield g.payoff1[xx][y], g.payoff2[xx][y]
    else:
        for yy in range(g.cols):
            yield g.payoff2[x][yy], g.payoff1[x][yy]


def _own_and_other(g: FiniteGame, p: Profile, player: int) -> tuple[Fraction, Fraction]:
    other = 3 - player
    return g.payoff(player, p), g.payoff(other, p)


def _select(g: FiniteGame, pred: Callable[[Profile], bool]) -> frozenset[Profile]:
    return frozenset(p for p in g.profiles() if pred(p))


def _is_ne(g: FiniteGame, p: Profile) -> bool:
    for i in (1, 2):
        own, _ = _own_and_other(g, p, i)
        if any(u > own for u, _ in _deviations(g, p, i)):
            return False
    return True


def _is_sne(g: FiniteGame, p: Profile) -> bool:
    # per-player reading: every *other* strategy of player i is strictly worse
    for i in (1, 2):
        own, _ = _own_and_other(g, p, i)
        mine = p.row if i == 1 else p.col
        for k, (u, _) in enumerate(_deviations(g, p, i)):
            if k != mine and not u < own:
                return False
    return True


def _ties_keep(g: FiniteGame, p: Profile, relation) -> bool:
    # equal-payoff deviations of either player leave the co-player related as given
    for i in (1, 2):
        own, other = _own_and_other(g, p, i)
        for u, w in _deviations(g, p, i):
            if u == own and not relation(w, other):
                return False
    return True


def _is_cwi(g: FiniteGame, p: Profile) -> bool:
    for i in (1, 2):
        own, other = _own_and_other(g, p, i)
        for u, w in _deviations(g, p, i):
            if u >= own and w < other:
                return False
    return True


def nash_equilibria(g: FiniteGame) -> frozenset[Profile]:
    col_max = [max(g.payoff1[x][y] for x in range(g.rows)) for y in range(g.cols)]
    row_max = [max(g.payoff2[x]) for x in range(g.rows)]
    return _select(
        g, lambda p: g.payoff1[p.row][p.col] == col_max[p.col] and g.payoff2[p.row][p.col] == row_max[p.row]
    )


def strict_ne(g: FiniteGame) -> frozenset[Profile]:
    return _select(g, lambda p: _is_sne(g, p))


def semi_strict_ne(g: FiniteGame) -> frozenset[Profile]:
    return frozenset(p for p in nash_equilibria(g) if _ties_keep(g, p, lambda w, o: w == o))


def weakly_semi_strict_ne(g: FiniteGame) -> frozenset[Profile]:
    return frozenset(p for p in nash_equilibria(g) if _ties_keep(g, p, lambda w, o: w >= o))


def cwi_profiles(g: FiniteGame) -> frozenset[Profile]:
    """Profiles coupled in wealth improvement.  No equilibrium requirement."""
    return _select(g, lambda p: _is_cwi(g, p))


def _dominated_by(g: FiniteGame, strict_both: bool) -> Callable[[Profile], bool]:
    # For each profile we need the best P2 among profiles with P1 above (or at
    # least) the profile's P1.  Suffix maxima over P1-sorted cells give that in
    # O(k log k) instead of comparing all pairs.
    cells = sorted((g.payoff1[x][y], g.payoff2[x][y]) for x, y in g.profiles())
    keys = [c[0] for c in cells]
    suffix: list[Fraction | None] = [None] * (len(cells) + 1)
    for k in range(len(cells) - 1, -1, -1):
        v = cells[k][1]
        nxt = suffix[k + 1]
        suffix[k] = v if nxt is None or v > nxt else nxt

    def dominated(p: Profile) -> bool:
        a1, a2 = g.payoff1[p.row][p.col], g.payoff2[p.row][p.col]
        above = suffix[bisect_right(keys, a1)]  # best P2 with P1 > a1
        if strict_both:
            return above is not None and above > a2
        at_least = suffix[bisect_left(keys, a1)]  # best P2 with P1 >= a1
        return (above is not None and above >= a2) or (at_least is not None and at_least > a2)

    return dominated


def pareto_optima(g: FiniteGame) -> frozenset[Profile]:
    dominated = _dominated_by(g, strict_both=True)
    return _select(g, lambda p: not dominated(p))


def strong_pareto_optima(g: FiniteGame) -> frozenset[Profile]:
    dominated = _dominated_by(g, strict_both=False)
    return _select(g, lambda p: not dominated(p))


def security_levels(g: FiniteGame) -> tuple[list[Fraction], list[Fraction]]:
    """Worst-case payoff of each row strategy (player 1) and each column
    strategy (player 2)."""
    rows = [min(g.payoff1[x]) for x in range(g.rows)]
    cols = [min(g.payoff2[x][y] for x in range(g.rows)) for y in range(g.cols)]
    return rows, cols


def maxmin_values(g: FiniteGame) -> tuple[Fraction, Fraction]:
    rows, cols = security_levels(g)
    return max(rows), max(cols)


def wald_solutions(g: FiniteGame) -> frozenset[Profile]:
    rows, cols = security_levels(g)
    best_rows = [x for x, v in enumerate(rows) if v == max(rows)]
    best_cols = [y for y, v in enumerate(cols) if v == max(cols)]
    return frozenset(Profile(x, y) for x in best_rows for y in best_cols)


def is_maximin(g: FiniteGame, p) -> bool:
    """Wald solution at which both payoffs equal the max-min values."""
    p = g.check_profile(p)
    v1, v2 = maxmin_values(g)
    return p in wald_solutions(g) and g.payoff1[p.row][p.col] == v1 and g.payoff2[p.row][p.col] == v2


@dataclass(frozen=True)
class ClassificationReport:
    title: str
    game: FiniteGame
    flags: dict[Profile, frozenset[str]]

    @property
    def profiles(self) -> list[Profile]:
        return sorted(self.flags)

    def members(self, flag: str) -> frozenset[Profile]:
        return frozenset(p for p, f in self.flags.items() if flag in f)


def classify(g: FiniteGame) -> ClassificationReport:
    from .flatten import m_equilibria

    v1, v2 = maxmin_values(g)
    sets = {
        "PO": pareto_optima(g),
        "SPO": strong_pareto_optima(g),
        "WALD": wald_solutions(g),
        "NE": nash_equilibria(g),
        "SNE": strict_ne(g),
        "SSNE": semi_strict_ne(g),
        "WSSNE": weakly_semi_strict_ne(g),
        "CWI": cwi_profiles(g),
        "ME": m_equilibria(g),
    }
    sets["MAXIMIN"] = frozenset(
        p for p in sets["WALD"] if g.payoff1[p.row][p.col] == v1 and g.payoff2[p.row][p.col] == v2
    )
    flags = {p: frozenset(f for f in FLAGS if p in sets[f]) for p in g.profiles()}
    return ClassificationReport(g.title, g, flags)
