"""Mixed extension of a finite game, lotteries and equilibrium selection.

Expected payoffs are exact.  Equilibrium checks in the mixed extension only
test pure deviations: the expected payoff is bilinear, so a mixed deviation
can never beat the best pure one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .equilibrium import (
    nash_equilibria,
    semi_strict_ne,
    strict_ne,
    weakly_semi_strict_ne,
)
from .errors import BadParams, DimensionMismatch, EmptySet, GameTooLarge, NotEquilibrium
from .game import FiniteGame, Profile, as_rational
from .linalg import solve_unique


@dataclass(frozen=True, order=True)
class MixedStrategy:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(as_rational(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("empty mixed strategy")
        if any(v < 0 for v in w):
            raise ValueError(f"negative probability in {w}")
        if sum(w) != 1:
            raise ValueError(f"probabilities sum to {sum(w)}, not 1")

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, k: int) -> Fraction:
        return self.weights[k]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, v in enumerate(self.weights) if v > 0)

    @classmethod
    def dirac(cls, size: int, k: int) -> "MixedStrategy":
        return cls(tuple(Fraction(int(i == k)) for i in range(size)))

    @classmethod
    def uniform(cls, size: int, support: Iterable[int] | None = None) -> "MixedStrategy":
        sup = sorted(set(range(size) if support is None else support))
        return cls(tuple(Fraction(1, len(sup)) if i in sup else Fraction(0) for i in range(size)))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.weights) + ")"


class MixedProfile(NamedTuple):
    strat1: MixedStrategy
    strat2: MixedStrategy

    @classmethod
    def dirac(cls, g: FiniteGame, p) -> "MixedProfile":
        x, y = p
        return cls(MixedStrategy.dirac(g.rows, x), MixedStrategy.dirac(g.cols, y))

    def __str__(self) -> str:
        return f"({self.strat1}, {self.strat2})"


def mixed_profile(w1: Sequence, w2: Sequence) -> MixedProfile:
    return MixedProfile(MixedStrategy(tuple(w1)), MixedStrategy(tuple(w2)))


def _check_dims(g: FiniteGame, mp: MixedProfile) -> None:
    if len(mp.strat1) != g.rows or len(mp.strat2) != g.cols:
        raise DimensionMismatch(
            f"profile is {len(mp.strat1)}x{len(mp.strat2)}, game is {g.rows}x{g.cols}"
        )


def _row_values(g: FiniteGame, player: int, q: MixedStrategy) -> list[Fraction]:
    """Expected payoff of each pure row against column mixture ``q``."""
    mat = g.matrix(player)
    return [sum((mat[x][y] * q[y] for y in q.support), Fraction(0)) for x in range(g.rows)]


def _col_values(g: FiniteGame, player: int, p: MixedStrategy) -> list[Fraction]:
    mat = g.matrix(player)
    return [sum((p[x] * mat[x][y] for x in p.support), Fraction(0)) for y in range(g.cols)]


def expected_payoff(g: FiniteGame, mp: MixedProfile, player: int) -> Fraction:
    _check_dims(g, mp)
    rows = _row_values(g, player, mp.strat2)
    return sum((mp.strat1[x] * rows[x] for x in mp.strat1.support), Fraction(0))


def is_mixed_ne(g: FiniteGame, mp: MixedProfile) -> bool:
    _check_dims(g, mp)
    p, q = mp
    v1 = _row_values(g, 1, q)
    v2 = _col_values(g, 2, p)
    e1 = sum((p[x] * v1[x] for x in p.support), Fraction(0))
    e2 = sum((q[y] * v2[y] for y in q.support), Fraction(0))
    return max(v1) <= e1 and max(v2) <= e2


def equal_payoff_deviations(g: FiniteGame, p, player: int) -> frozenset[int]:
    """Pure strategies of ``player`` tying the equilibrium payoff at ``p``."""
    p = g.check_profile(p)
    if p not in nash_equilibria(g):
        raise NotEquilibrium(f"{g.label(p)} is not a Nash equilibrium")
    x, y = p
    if player == 1:
        return frozenset(xx for xx in range(g.rows) if g.payoff1[xx][y] == g.payoff1[x][y])
    if player == 2:
        return frozenset(yy for yy in range(g.cols) if g.payoff2[x][yy] == g.payoff2[x][y])
    raise ValueError(f"player must be 1 or 2, got {player!r}")


# -- support enumeration ------------------------------------------------------------


def _indifference_solutions(payoff: list[list[Fraction]]) -> list[list[Fraction]]:
    """Distributions ``z`` over the columns of ``payoff`` that make every row
    earn the same expected value.

    If the system has a unique solution that is returned.  Otherwise the
    vertices of the solution polytope are enumerated (each vertex is the
    unique solution on some sub-support) and their centroid is added, which
    represents the relative interior of a degenerate face.
    """
    k = len(payoff[0])
    vertices: list[tuple[Fraction, ...]] = []
    for size in range(1, k + 1):
        for sub in itertools.combinations(range(k), size):
            # unknowns: z on ``sub`` then the common value v
            a = [[row[j] for j in sub] + [Fraction(-1)] for row in payoff]
            a.append([Fraction(1)] * size + [Fraction(0)])
            b = [Fraction(0)] * len(payoff) + [Fraction(1)]
            sol = solve_unique(a, b)
            if sol is None or any(v < 0 for v in sol[:-1]):
                continue
            z = [Fraction(0)] * k
            for j, v in zip(sub, sol):
                z[j] = v
            if tuple(z) not in vertices:
                vertices.append(tuple(z))
    out = [list(v) for v in vertices]
    if len(vertices) > 1:
        out.append([sum(col, Fraction(0)) / len(vertices) for col in zip(*vertices)])
    return out


def _embed(values: Sequence[Fraction], support: Sequence[int], size: int) -> MixedStrategy:
    w = [Fraction(0)] * size
    for k, v in zip(support, values):
        w[k] = v
    return MixedStrategy(tuple(w))


def mixed_equilibrium_candidates(g: FiniteGame, max_support: int = 3) -> list[MixedProfile]:
    """Mixed equilibria found by enumerating support pairs.

    Every returned profile passes :func:`is_mixed_ne`.  For degenerate games
    the result is not guaranteed to be complete.
    """
    if g.rows > 4 or g.cols > 4:
        raise GameTooLarge(f"support enumeration is limited to 4x4 games, got {g.rows}x{g.cols}")
    if not 1 <= max_support <= 3:
        raise BadParams("max_support must be between 1 and 3")
    found: set[MixedProfile] = set()
    for k1 in range(1, min(max_support, g.rows) + 1):
        for k2 in range(1, min(max_support, g.cols) + 1):
            for rows in itertools.combinations(range(g.rows), k1):
                for cols in itertools.combinations(range(g.cols), k2):
                    # column mixture equalizes player 1 over ``rows``
                    qs = _indifference_solutions([[g.payoff1[x][y] for y in cols] for x in rows])
                    if not qs:
                        continue
                    # row mixture equalizes player 2 over ``cols``
                    ps = _indifference_solutions([[g.payoff2[x][y] for x in rows] for y in cols])
                    for pv in ps:
                        for qv in qs:
                            mp = MixedProfile(_embed(pv, rows, g.rows), _embed(qv, cols, g.cols))
                            if mp not in found and is_mixed_ne(g, mp):
                                found.add(mp)
    return sorted(found)


# -- lifting pure equilibria --------------------------------------------------------


@dataclass(frozen=True)
class LiftEntry:
    profile: Profile
    pure: frozenset[str]
    lifted: frozenset[str]

    @property
    def ok(self) -> bool:
        return self.pure <= self.lifted


def _lift_classes(g: FiniteGame, p: Profile) -> frozenset[str]:
    lifted = set()
    if is_mixed_ne(g, MixedProfile.dirac(g, p)):
        lifted.add("NE")
    else:
        return frozenset()
    ties = {1: equal_payoff_deviations(g, p, 1), 2: equal_payoff_deviations(g, p, 2)}
    own = {1: p.row, 2: p.col}
    # a mixed deviation keeps player i's payoff only if its support lies in
    # ties[i]; the co-player's payoff is then the average over that support
    if all(ties[i] == {own[i]} for i in (1, 2)):
        lifted.add("SNE")

    def co_payoffs(i: int) -> list[Fraction]:
        if i == 1:
            return [g.payoff2[x][p.col] for x in ties[1]]
        return [g.payoff1[p.row][y] for y in ties[2]]

    base = {1: g.payoff2[p.row][p.col], 2: g.payoff1[p.row][p.col]}
    if all(v >= base[i] for i in (1, 2) for v in co_payoffs(i)):
        lifted.add("WSSNE")
    if all(v == base[i] for i in (1, 2) for v in co_payoffs(i)):
        lifted.add("SSNE")
    return frozenset(lifted)


def pure_equilibrium_lifts(g: FiniteGame) -> list[LiftEntry]:
    """For each pure Nash equilibrium: its pure classes and the classes its
    Dirac lift is certified to have in the mixed extension."""
    classes = {
        "NE": nash_equilibria(g),
        "SNE": strict_ne(g),
        "SSNE": semi_strict_ne(g),
        "WSSNE": weakly_semi_strict_ne(g),
    }
    out = []
    for p in sorted(classes["NE"]):
        pure = frozenset(name for name, s in classes.items() if p in s)
        out.append(LiftEntry(p, pure, _lift_classes(g, p)))
    return out


# -- lotteries ----------------------------------------------------------------------


@dataclass(frozen=True)
class Lottery:
    """Finite lottery over payoff values, sorted by value, no zero-probability
    entries and no repeated values."""

    outcomes: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        merged: dict[Fraction, Fraction] = {}
        for value, prob in self.outcomes:
            value, prob = as_rational(value), as_rational(prob)
            if prob < 0:
                raise ValueError(f"negative probability {prob}")
            merged[value] = merged.get(value, Fraction(0)) + prob
        if sum(merged.values()) != 1:
            raise ValueError(f"probabilities sum to {sum(merged.values())}, not 1")
        out = tuple(sorted((v, p) for v, p in merged.items() if p > 0))
        object.__setattr__(self, "outcomes", out)

    @classmethod
    def of(cls, mapping: dict) -> "Lottery":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.outcomes)


def outcome_lottery(g: FiniteGame, mp: MixedProfile, player: int) -> Lottery:
    _check_dims(g, mp)
    mat = g.matrix(player)
    cells = [
        (mat[x][y], mp.strat1[x] * mp.strat2[y])
        for x in mp.strat1.support
        for y in mp.strat2.support
    ]
    return Lottery(tuple(cells))


def min_gain(lottery: Lottery) -> Fraction:
    return lottery.outcomes[0][0]


def expected_gain(lottery: Lottery) -> Fraction:
    return sum((v * p for v, p in lottery.outcomes), Fraction(0))


def loss_averse_key(lottery: Lottery) -> tuple[Fraction, Fraction]:
    return min_gain(lottery), expected_gain(lottery)


def compare_lotteries_loss_averse(a: Lottery, b: Lottery) -> int:
    """``1`` if ``a`` is preferred, ``-1`` if ``b`` is, ``0`` if indifferent.

    Minimal gain decides; expected gain breaks ties.
    """
    ka, kb = loss_averse_key(a), loss_averse_key(b)
    return (ka > kb) - (ka < kb)


# -- uniform equilibrium selection --------------------------------------------------

_MASK64 = (1 << 64) - 1


def splitmix64(seed: int) -> Iterator[int]:
    """SplitMix64 stream, kept local so the seed-to-choice mapping never
    depends on a library version."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def _uniform_index(stream: Iterator[int], n: int) -> int:
    # rejection sampling removes the modulo bias
    limit = (1 << 64) - ((1 << 64) % n)
    while True:
        r = next(stream)
        if r < limit:
            return r % n


def selection_stream(eqs: Iterable[Profile], seed: int) -> Iterator[Profile]:
    """Endless uniform draws from ``eqs`` (sorted first)."""
    items = sorted(eqs)
    if not items:
        raise EmptySet("cannot select from an empty set of equilibria")
    if seed < 0:
        raise BadParams("seed must be non-negative")
    stream = splitmix64(seed)
    while True:
        yield items[_uniform_index(stream, len(items))]


def select_equilibrium(eqs: Iterable[Profile], seed: int) -> Profile:
    return next(selection_stream(eqs, seed))
