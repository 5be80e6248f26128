"""Not-worse responses, lower payoffs, flat games and m-equilibria.

The lower payoff of player ``i`` at a profile is the worst payoff ``i`` can
get when the co-player switches to any strategy that is not worse *for the
co-player*.  The flat game replaces both payoffs by their lower payoffs; its
Nash equilibria are the m-equilibria of the original game.

The whole construction uses only comparisons and minima of each player's own
payoffs, so it is computed on integer ranks (see
:func:`~flatgame.game.rank_matrix`) and mapped back to the exact values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .equilibrium import maxmin_values, nash_equilibria
from .errors import PreconditionFailed
from .game import FiniteGame, Profile, is_strictly_competitive, rank_matrix


def not_worse_responses(g: FiniteGame, player: int, p) -> frozenset[int]:
    """Strategies of ``player`` doing at least as well as the status quo
    against the co-player's strategy in ``p``."""
    x, y = g.check_profile(p)
    if player == 1:
        here = g.payoff1[x][y]
        return frozenset(xx for xx in range(g.rows) if g.payoff1[xx][y] >= here)
    if player == 2:
        here = g.payoff2[x][y]
        return frozenset(yy for yy in range(g.cols) if g.payoff2[x][yy] >= here)
    raise ValueError(f"player must be 1 or 2, got {player!r}")


def lower_payoff(g: FiniteGame, player: int, p) -> Fraction:
    x, y = g.check_profile(p)
    if player == 1:
        return min(g.payoff1[x][yy] for yy in not_worse_responses(g, 2, p))
    if player == 2:
        return min(g.payoff2[xx][y] for xx in not_worse_responses(g, 1, p))
    raise ValueError(f"player must be 1 or 2, got {player!r}")


def _row_player_flat(own: np.ndarray, other: np.ndarray) -> np.ndarray:
    """Lower payoff of the row player on rank matrices.

    Cell (x, y): minimum of ``own[x, y']`` over ``y'`` with
    ``other[x, y'] >= other[x, y]``.
    """
    m, n = own.shape
    out = np.empty_like(own)
    big = own.max() + 1
    for x in range(m):
        allowed = other[x][None, :] >= other[x][:, None]
        out[x] = np.where(allowed, own[x][None, :], big).min(axis=1)
    return out


def flat_payoffs(g: FiniteGame) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    r1, vals1 = rank_matrix(g.payoff1)
    r2, vals2 = rank_matrix(g.payoff2)
    f1 = _row_player_flat(r1, r2)
    # the column player is the row player of the transposed game
    f2 = _row_player_flat(r2.T, r1.T).T
    p1 = [[vals1[k] for k in row] for row in f1.tolist()]
    p2 = [[vals2[k] for k in row] for row in f2.tolist()]
    return p1, p2


@dataclass(frozen=True)
class FlatGameResult:
    flat: FiniteGame
    source: FiniteGame
    iteration: int = 1

    @property
    def is_fixed_point(self) -> bool:
        return self.flat.same_payoffs(self.source)

    @cached_property
    def responses(self) -> dict[Profile, tuple[frozenset[int], frozenset[int]]]:
        """Not-worse-response sets of (player 1, player 2) in the source game."""
        return {
            p: (not_worse_responses(self.source, 1, p), not_worse_responses(self.source, 2, p))
            for p in self.source.profiles()
        }


def flat_game(g: FiniteGame, iteration: int = 1) -> FlatGameResult:
    p1, p2 = flat_payoffs(g)
    return FlatGameResult(g.with_payoffs(p1, p2, title=f"{g.title} flat".strip()), g, iteration)


def m_equilibria(g: FiniteGame) -> frozenset[Profile]:
    return nash_equilibria(flat_game(g).flat)


def iterate_flatten(g: FiniteGame, k: int) -> list[FlatGameResult]:
    """Flatten ``k`` times; stops early once the flat equals its source."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out: list[FlatGameResult] = []
    current = g
    for it in range(1, k + 1):
        res = flat_game(current, it)
        out.append(res)
        if res.is_fixed_point:
            break
        current = res.flat
    return out


class LowerValue(NamedTuple):
    original: Fraction
    flat: Fraction


def lower_values(g: FiniteGame) -> tuple[LowerValue, LowerValue]:
    """Max-min value of each player in the game and in its flat."""
    a1, a2 = maxmin_values(g)
    b1, b2 = maxmin_values(flat_game(g).flat)
    return LowerValue(a1, b1), LowerValue(a2, b2)


def competitive_flat_check(g: FiniteGame) -> bool:
    """In a strictly competitive game each lower payoff should be the
    worst case of the player's own strategy; check it cellwise."""
    if not is_strictly_competitive(g):
        raise PreconditionFailed(f"{g.title or 'game'} is not strictly competitive")
    flat = flat_game(g).flat
    row_min = [min(g.payoff1[x]) for x in range(g.rows)]
    col_min = [min(g.payoff2[x][y] for x in range(g.rows)) for y in range(g.cols)]
    return all(
        flat.payoff1[x][y] == row_min[x] and flat.payoff2[x][y] == col_min[y]
        for x, y in g.profiles()
    )
