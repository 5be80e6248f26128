"""Finite two-player games over exact rationals.

Payoffs are :class:`fractions.Fraction` throughout.  Most solution concepts
here are defined through payoff *equality* (ties between a deviation and the
status quo), which floating point cannot decide reliably.
"""

from __future__ import annotations

import numbers
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadParams,
    EmptyGame,
    MissingValue,
    NotOrderPreserving,
    ShapeMismatch,
    UnknownBuiltin,
)

Matrix = tuple[tuple[Fraction, ...], ...]


def as_rational(value) -> Fraction:
    """Convert ``value`` to a reduced Fraction.

    Accepts integers, rationals and strings such as ``"-3/4"``.  Floats are
    refused: a payoff must be an exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


class Profile(NamedTuple):
    """A pure strategy profile, 0-based (row strategy, column strategy)."""

    row: int
    col: int


def _freeze(matrix) -> Matrix:
    return tuple(tuple(as_rational(v) for v in row) for row in matrix)


@dataclass(frozen=True)
class FiniteGame:
    """Bimatrix game.  ``payoff1[x][y]`` / ``payoff2[x][y]`` are the payoffs
    of the row / column player when row ``x`` meets column ``y``.

    ``labels1``/``labels2`` name the strategies for reporting; they default
    to ``"1".."m"`` as in the usual textbook numbering.
    """

    payoff1: Matrix
    payoff2: Matrix
    title: str = ""
    labels1: tuple[str, ...] = field(default=())
    labels2: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.payoff1 or not self.payoff1[0]:
            raise EmptyGame("a game needs at least one strategy per player")
        m, n = len(self.payoff1), len(self.payoff1[0])
        for mat in (self.payoff1, self.payoff2):
            if len(mat) != m or any(len(row) != n for row in mat):
                raise ShapeMismatch(
                    f"payoff matrices must both be {m}x{n} and rectangular"
                )
        if not self.labels1:
            object.__setattr__(self, "labels1", tuple(str(i + 1) for i in range(m)))
        if not self.labels2:
            object.__setattr__(self, "labels2", tuple(str(j + 1) for j in range(n)))
        if len(self.labels1) != m or len(self.labels2) != n:
            raise ShapeMismatch("one label per strategy is required")

    @property
    def rows(self) -> int:
        return len(self.payoff1)

    @property
    def cols(self) -> int:
        return len(self.payoff1[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def matrix(self, player: int) -> Matrix:
        if player == 1:
            return self.payoff1
        if player == 2:
            return self.payoff2
        raise ValueError(f"player must be 1 or 2, got {player!r}")

    def payoff(self, player: int, profile) -> Fraction:
        x, y = profile
        return self.matrix(player)[x][y]

    def profiles(self) -> Iterator[Profile]:
        """All pure profiles, row-major."""
        for x in range(self.rows):
            for y in range(self.cols):
                yield Profile(x, y)

    def check_profile(self, profile) -> Profile:
        x, y = profile
        if not (0 <= x < self.rows and 0 <= y < self.cols):
            raise IndexError(f"profile {tuple(profile)} outside a {self.rows}x{self.cols} game")
        return Profile(x, y)

    def label(self, profile) -> str:
        x, y = profile
        return f"({self.labels1[x]},{self.labels2[y]})"

    def same_payoffs(self, other: "FiniteGame") -> bool:
        return self.payoff1 == other.payoff1 and self.payoff2 == other.payoff2

    def with_payoffs(self, payoff1, payoff2, title=None) -> "FiniteGame":
        return FiniteGame(
            _freeze(payoff1),
            _freeze(payoff2),
            self.title if title is None else title,
            self.labels1,
            self.labels2,
        )

    def transposed(self) -> "FiniteGame":
        """Swap the roles of the players."""
        t1 = tuple(zip(*self.payoff2))
        t2 = tuple(zip(*self.payoff1))
        return FiniteGame(t1, t2, self.title, self.labels2, self.labels1)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "FiniteGame":
        """Relabel strategies: new row ``i`` is old row ``row_perm[i]``."""
        p1 = tuple(tuple(self.payoff1[r][c] for c in col_perm) for r in row_perm)
        p2 = tuple(tuple(self.payoff2[r][c] for c in col_perm) for r in row_perm)
        return FiniteGame(
            p1,
            p2,
            self.title,
            tuple(self.labels1[r] for r in row_perm),
            tuple(self.labels2[c] for c in col_perm),
        )


def make_game(payoff1, payoff2, title: str = "", labels1=None, labels2=None) -> FiniteGame:
    if len(payoff1) == 0 or len(payoff2) == 0 or len(payoff1[0]) == 0 or len(payoff2[0]) == 0:
        raise EmptyGame("a game needs at least one strategy per player")
    return FiniteGame(
        _freeze(payoff1),
        _freeze(payoff2),
        title,
        tuple(labels1 or ()),
        tuple(labels2 or ()),
    )


def from_bimatrix(cells, title: str = "", labels1=None, labels2=None) -> FiniteGame:
    """Build a game from ``cells[x][y] = (p1, p2)``, the printed bimatrix form."""
    p1 = [[c[0] for c in row] for row in cells]
    p2 = [[c[1] for c in row] for row in cells]
    return make_game(p1, p2, title, labels1, labels2)


def rank_matrix(matrix: Matrix) -> tuple[np.ndarray, list[Fraction]]:
    """Replace each payoff by the index of its value among the sorted distinct
    values.  Comparisons and minima commute with this map, so order-only
    computations can run on small integers and be mapped back exactly.
    """
    values = sorted({v for row in matrix for v in row})
    index = {v: k for k, v in enumerate(values)}
    ranks = np.array([[index[v] for v in row] for row in matrix], dtype=np.int64)
    return ranks, values


def is_strictly_competitive(g: FiniteGame) -> bool:
    """True iff ``P1(b) > P1(a) <=> P2(b) < P2(a)`` for all profile pairs.

    Applying the biconditional to both orderings of a pair shows it holds iff
    ``P2`` is a strictly decreasing function of ``P1`` on the occurring
    values, which is what is checked (sorting instead of all pairs).
    """
    image: dict[Fraction, Fraction] = {}
    for x, y in g.profiles():
        u, v = g.payoff1[x][y], g.payoff2[x][y]
        if image.setdefault(u, v) != v:
            return False
    seq = [image[u] for u in sorted(image)]
    return all(a > b for a, b in zip(seq, seq[1:]))


def is_zero_sum(g: FiniteGame) -> bool:
    return all(g.payoff1[x][y] + g.payoff2[x][y] == 0 for x, y in g.profiles())


def is_quantitatively_symmetric(g: FiniteGame) -> bool:
    if g.rows != g.cols:
        return False
    return all(g.payoff1[x][y] == g.payoff2[y][x] for x, y in g.profiles())


def _check_table(table: Mapping, used: set[Fraction], player: int) -> dict[Fraction, Fraction]:
    tab = {as_rational(k): as_rational(v) for k, v in table.items()}
    keys = sorted(tab)
    for a, b in zip(keys, keys[1:]):
        if not tab[a] < tab[b]:
            raise NotOrderPreserving(
                f"player {player} table maps {a} -> {tab[a]} and {b} -> {tab[b]}"
            )
    missing = used - tab.keys()
    if missing:
        raise MissingValue(f"player {player} table has no image for {sorted(missing)}")
    return tab


def apply_monotone_transform(g: FiniteGame, t1: Mapping, t2: Mapping) -> FiniteGame:
    """Return the game with payoffs ``t1(P1)``, ``t2(P2)``.

    The tables are finite lookup maps over the payoff values that actually
    occur; each must be strictly increasing on its own keys.
    """
    tab1 = _check_table(t1, {v for row in g.payoff1 for v in row}, 1)
    tab2 = _check_table(t2, {v for row in g.payoff2 for v in row}, 2)
    p1 = [[tab1[v] for v in row] for row in g.payoff1]
    p2 = [[tab2[v] for v in row] for row in g.payoff2]
    return g.with_payoffs(p1, p2)


def payoff_values(g: FiniteGame, player: int) -> list[Fraction]:
    return sorted({v for row in g.matrix(player) for v in row})


def constant_game(rows: int, cols: int, value=0, title: str = "constant") -> FiniteGame:
    cell = [[value] * cols for _ in range(rows)]
    return make_game(cell, cell, title)


# -- games printed in the literature -------------------------------------------------


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def traveler(lo: int = 2, hi: int = 100) -> FiniteGame:
    """Traveler's dilemma on claims ``lo..hi``: ``P1(x,y) = min(x,y) + 2 sign(y-x)``."""
    if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 2 or hi <= lo:
        raise BadParams(f"traveler needs integers 2 <= lo < hi, got ({lo}, {hi})")
    claims = range(lo, hi + 1)
    p1 = [[min(x, y) + 2 * _sign(y - x) for y in claims] for x in claims]
    p2 = [list(col) for col in zip(*p1)]
    labels = tuple(str(c) for c in claims)
    return make_game(p1, p2, f"traveler's dilemma {lo}..{hi}", labels, labels)


_BIMATRICES = {
    "coordination": (
        "coordination",
        [[(2, 2), (0, 0), (0, 0)],
         [(0, 0), (1, 1), (0, 0)],
         [(0, 0), (0, 0), (2, 2)]],
        None,
    ),
    "high-threat": (
        "high threat",
        [[(4, 4), (1, 4)],
         [(4, 1), (3, 3)]],
        None,
    ),
    "3-4-5": (
        "3-4-5 game",
        [[(3, 3), (0, 0), (0, 0), (0, 0)],
         [(0, 0), (4, 4), (0, 0), (4, 4)],
         [(0, 0), (0, 0), (3, 3), (5, 3)],
         [(0, 0), (4, 4), (3, 5), (5, 5)]],
        None,
    ),
    "me-vs-ne": (
        "m-equilibria vs Nash equilibria",
        [[(1, 4), (0, 0), (4, 4)],
         [(0, 0), (3, 3), (5, 3)],
         [(4, 4), (3, 5), (5, 3)]],
        None,
    ),
    "hide-a-coin": (
        "hide a coin",
        [[(-10, 10), (15, -15)],
         [(15, -15), (-20, 20)]],
        None,
    ),
    "matching-pennies": (
        "matching pennies",
        [[(1, -1), (-1, 1)],
         [(-1, 1), (1, -1)]],
        None,
    ),
    "extended-pennies": (
        "extended matching pennies",
        [[(-1, 1), (1, -1), (0, 0)],
         [(1, -1), (-1, 1), (0, 0)],
         [(0, 0), (0, 0), (0, 0)]],
        None,
    ),
    "battle-of-sexes": (
        "battle of the sexes",
        [[(3, 2), (0, 0)],
         [(0, 0), (2, 3)]],
        None,
    ),
    # T=5, R=3, P=1, S=0
    "prisoners-dilemma": (
        "prisoner's dilemma",
        [[(3, 3), (0, 5)],
         [(5, 0), (1, 1)]],
        ("cooperate", "defect"),
    ),
}

BUILTIN_NAMES = tuple(sorted([*_BIMATRICES, "traveler"]))


def builtin(name: str, params: tuple[int, int] | None = None) -> FiniteGame:
    if name == "traveler":
        lo, hi = params if params is not None else (2, 100)
        return traveler(lo, hi)
    if name not in _BIMATRICES:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    if params is not None:
        raise BadParams(f"builtin {name!r} takes no parameters")
    title, cells, labels = _BIMATRICES[name]
    return from_bimatrix(cells, title, labels, labels)


# -- random games for property suites ------------------------------------------------


@dataclass(frozen=True)
class RandomGameConfig:
    """Shape and value range of generated games.

    ``pool_size`` caps how many distinct values one matrix draws from; small
    pools make payoff ties (and hence the equality-based classes) common.
    """

    min_size: int = 2
    max_size: int = 5
    lo: int = -5
    hi: int = 5
    pool_size: int = 4


def random_game(rng: random.Random, config: RandomGameConfig = RandomGameConfig()) -> FiniteGame:
    m = rng.randint(config.min_size, config.max_size)
    n = rng.randint(config.min_size, config.max_size)
    mats = []
    for _ in range(2):
        k = rng.randint(1, config.pool_size)
        pool = rng.sample(range(config.lo, config.hi + 1), k)
        mats.append([[rng.choice(pool) for _ in range(n)] for _ in range(m)])
    return make_game(mats[0], mats[1], "random")


def random_strictly_competitive(rng: random.Random, config: RandomGameConfig = RandomGameConfig()) -> FiniteGame:
    """Random game whose column payoff is a strictly decreasing image of the
    row payoff, which is exactly the strictly competitive case."""
    base = random_game(rng, config)
    values = payoff_values(base, 1)
    image = sorted(rng.sample(range(-4 * len(values) - 4, 4 * len(values) + 5), len(values)), reverse=True)
    table = dict(zip(values, image))
    p2 = [[table[v] for v in row] for row in base.payoff1]
    return make_game(base.payoff1, p2, "random strictly competitive")


def random_increasing_table(rng: random.Random, values: Sequence[Fraction]) -> dict[Fraction, Fraction]:
    """A strictly increasing map on ``values`` with rational, non-affine steps."""
    out = {}
    level = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
    for v in sorted(values):
        out[v] = level
        level += Fraction(rng.randint(1, 9), rng.randint(1, 7))
    return out
