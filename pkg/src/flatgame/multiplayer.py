"""Lower payoffs and m-equilibria for small N-player games.

With N players the lower payoff of player ``i`` at ``p`` is the worst
payoff of ``i`` over profiles reachable by a *virtual coalition* ``J`` of
other players, each member of which weakly gains by the joint switch.

A profile ``s`` that agrees with ``p`` on player ``i`` is reachable iff
every player whose strategy differs in ``s`` weakly gains: take ``J`` to be
exactly the set of movers (larger coalitions only add constraints).  The
code enumerates profiles with that test.

By default ``i`` is never a coalition member; ``include_self=True`` lets
``i`` move too.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, ShapeMismatch
from .game import FiniteGame, as_rational

MAX_PLAYERS = 4
MAX_PROFILES = 10**5


@dataclass(frozen=True)
class TensorGame:
    """``payoffs[i]`` holds player ``i``'s payoffs flattened row-major over
    ``shape`` (player 0's strategy varies slowest).  Players are 0-based."""

    shape: tuple[int, ...]
    payoffs: tuple[tuple[Fraction, ...], ...]
    title: str = ""

    def __post_init__(self):
        if len(self.shape) < 2:
            raise ShapeMismatch("a tensor game needs at least two players")
        if any(k < 1 for k in self.shape):
            raise ShapeMismatch("every player needs a strategy")
        if len(self.payoffs) != len(self.shape):
            raise ShapeMismatch("one payoff tensor per player is required")
        size = math.prod(self.shape)
        if any(len(t) != size for t in self.payoffs):
            raise ShapeMismatch(f"each payoff tensor needs {size} cells")

    @property
    def players(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def profiles(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(k) for k in self.shape))

    def index(self, profile: Sequence[int]) -> int:
        if len(profile) != self.players or any(not 0 <= s < k for s, k in zip(profile, self.shape)):
            raise IndexError(f"profile {tuple(profile)} outside shape {self.shape}")
        return int(np.ravel_multi_index(tuple(profile), self.shape))

    def payoff(self, player: int, profile: Sequence[int]) -> Fraction:
        return self.payoffs[player][self.index(profile)]

    def array(self, player: int) -> np.ndarray:
        return np.array(self.payoffs[player], dtype=object).reshape(self.shape)


def tensor_game(shape: Sequence[int], fn: Callable[[int, tuple[int, ...]], object], title: str = "") -> TensorGame:
    """Build a game from ``fn(player, profile) -> payoff``."""
    shape = tuple(shape)
    profiles = list(itertools.product(*(range(k) for k in shape)))
    payoffs = tuple(tuple(as_rational(fn(i, s)) for s in profiles) for i in range(len(shape)))
    return TensorGame(shape, payoffs, title)


def from_bimatrix(g: FiniteGame) -> TensorGame:
    return TensorGame(
        g.shape,
        (tuple(v for row in g.payoff1 for v in row), tuple(v for row in g.payoff2 for v in row)),
        g.title,
    )


def to_bimatrix(t: TensorGame) -> FiniteGame:
    from .game import make_game

    if t.players != 2:
        raise ShapeMismatch("only two-player tensor games convert to bimatrices")
    m, n = t.shape
    p1 = [list(t.payoffs[0][r * n:(r + 1) * n]) for r in range(m)]
    p2 = [list(t.payoffs[1][r * n:(r + 1) * n]) for r in range(m)]
    return make_game(p1, p2, t.title)


def _check_budget(g: TensorGame) -> None:
    if g.players > MAX_PLAYERS:
        raise BudgetExceeded(f"{g.players} players exceed the limit of {MAX_PLAYERS}")
    if g.size > MAX_PROFILES:
        raise BudgetExceeded(f"{g.size} profiles exceed the limit of {MAX_PROFILES}")


def _ranks(g: TensorGame) -> tuple[list[np.ndarray], list[list[Fraction]]]:
    arrays, values = [], []
    for t in g.payoffs:
        vals = sorted(set(t))
        index = {v: k for k, v in enumerate(vals)}
        arrays.append(np.array([index[v] for v in t], dtype=np.int64).reshape(g.shape))
        values.append(vals)
    return arrays, values


def _lower_rank(ranks: list[np.ndarray], grids: np.ndarray, player: int, profile: tuple[int, ...],
                include_self: bool, max_coalition: int | None) -> int:
    n = len(ranks)
    reachable = np.ones(ranks[0].shape, dtype=bool)
    movers = np.zeros(ranks[0].shape, dtype=np.int64)
    for j in range(n):
        moved = grids[j] != profile[j]
        if j == player and not include_self:
            reachable &= ~moved
            continue
        movers += moved
        reachable &= ~moved | (ranks[j] >= ranks[j][profile])
    if max_coalition is not None:
        reachable &= movers <= max_coalition
    return int(ranks[player][reachable].min())


def lower_payoff_n(g: TensorGame, player: int, profile: Sequence[int], *,
                   include_self: bool = False, max_coalition: int | None = None) -> Fraction:
    """Lower payoff of ``player`` (0-based) at ``profile``.

    ``max_coalition`` caps the coalition size; ``1`` allows single movers
    only.
    """
    _check_budget(g)
    profile = tuple(profile)
    g.index(profile)
    ranks, values = _ranks(g)
    grids = np.indices(g.shape)
    return values[player][_lower_rank(ranks, grids, player, profile, include_self, max_coalition)]


def _flat_ranks(g: TensorGame, include_self: bool, max_coalition: int | None):
    ranks, values = _ranks(g)
    grids = np.indices(g.shape)
    flat = [np.empty(g.shape, dtype=np.int64) for _ in range(g.players)]
    for profile in g.profiles():
        for i in range(g.players):
            flat[i][profile] = _lower_rank(ranks, grids, i, profile, include_self, max_coalition)
    return flat, values


def flat_tensor_game(g: TensorGame, *, include_self: bool = False,
                     max_coalition: int | None = None) -> TensorGame:
    _check_budget(g)
    flat, values = _flat_ranks(g, include_self, max_coalition)
    payoffs = tuple(tuple(values[i][k] for k in flat[i].ravel().tolist()) for i in range(g.players))
    return TensorGame(g.shape, payoffs, f"{g.title} flat".strip())


def _nash_mask(ranks: list[np.ndarray]) -> np.ndarray:
    ok = np.ones(ranks[0].shape, dtype=bool)
    for i, r in enumerate(ranks):
        ok &= r >= r.max(axis=i, keepdims=True)
    return ok


def nash_equilibria_n(g: TensorGame) -> frozenset[tuple[int, ...]]:
    _check_budget(g)
    ranks, _ = _ranks(g)
    return frozenset(tuple(int(v) for v in idx) for idx in np.argwhere(_nash_mask(ranks)))


def m_equilibria_n(g: TensorGame, *, include_self: bool = False) -> frozenset[tuple[int, ...]]:
    _check_budget(g)
    flat, _ = _flat_ranks(g, include_self, None)
    return frozenset(tuple(int(v) for v in idx) for idx in np.argwhere(_nash_mask(flat)))
