from hypothesis import given

import oracles
from conftest import games
from flatgame.equilibrium import (
    FLAGS,
    classify,
    cwi_profiles,
    is_maximin,
    maxmin_values,
    nash_equilibria,
    pareto_optima,
    semi_strict_ne,
    strict_ne,
    strong_pareto_optima,
    wald_solutions,
    weakly_semi_strict_ne,
)
from flatgame.game import builtin, constant_game, make_game, random_game, random_strictly_competitive


def P(*pairs):
    """1-based pairs to a set of 0-based profiles."""
    return {(x - 1, y - 1) for x, y in pairs}


def test_nash_goldens():
    assert nash_equilibria(builtin("traveler")) == P((1, 1))
    assert nash_equilibria(builtin("hide-a-coin")) == set()
    assert nash_equilibria(builtin("coordination")) == P((1, 1), (2, 2), (3, 3))
    assert nash_equilibria(builtin("prisoners-dilemma")) == P((2, 2))


def test_three_four_five_refinements():
    g = builtin("3-4-5")
    ne, wssne, ssne, sne = (nash_equilibria(g), weakly_semi_strict_ne(g),
                            semi_strict_ne(g), strict_ne(g))
    assert (3, 3) in ne - wssne
    assert (2, 2) in wssne - ssne
    assert (1, 1) in ssne - sne
    assert (0, 0) in sne


def test_constant_game_is_all_weakly_semi_strict():
    g = constant_game(2, 3)
    assert weakly_semi_strict_ne(g) == set(g.profiles())
    assert strict_ne(g) == set()


def test_competitive_builtins_have_ne_equal_ssne():
    for name in ("hide-a-coin", "matching-pennies", "extended-pennies"):
        g = builtin(name)
        assert nash_equilibria(g) == semi_strict_ne(g)


def test_wald_and_maximin():
    g = builtin("hide-a-coin")
    assert maxmin_values(g) == (-10, -15)
    assert wald_solutions(g) == P((1, 1), (1, 2))
    assert not is_maximin(g, (0, 0))
    pd = builtin("prisoners-dilemma")
    assert wald_solutions(pd) == P((2, 2))
    assert is_maximin(pd, (1, 1))


def test_pareto_goldens():
    g = builtin("prisoners-dilemma")
    assert pareto_optima(g) == P((1, 1), (1, 2), (2, 1))
    g = make_game([[1, 1]], [[0, 1]])
    assert pareto_optima(g) == {(0, 0), (0, 1)}
    assert strong_pareto_optima(g) == {(0, 1)}


@given(games())
def test_sets_match_literal_definitions(g):
    assert nash_equilibria(g) == oracles.nash(g)
    assert strict_ne(g) == oracles.sne(g)
    assert semi_strict_ne(g) == oracles.ssne(g)
    assert weakly_semi_strict_ne(g) == oracles.wssne(g)
    assert cwi_profiles(g) == oracles.cwi(g)
    assert pareto_optima(g) == oracles.pareto(g)
    assert strong_pareto_optima(g) == oracles.strong_pareto(g)
    assert wald_solutions(g) == oracles.wald(g)


def test_inclusion_chain_on_random_games(rng):
    for _ in range(500):
        g = random_game(rng)
        sne, ssne, wssne, ne = strict_ne(g), semi_strict_ne(g), weakly_semi_strict_ne(g), nash_equilibria(g)
        assert sne <= ssne <= wssne <= ne
        assert wssne == ne & cwi_profiles(g)
        assert strong_pareto_optima(g) <= pareto_optima(g)


def test_strictly_competitive_ne_is_semi_strict(rng):
    for _ in range(200):
        g = random_strictly_competitive(rng)
        assert nash_equilibria(g) == semi_strict_ne(g)


def test_report_flags_and_order(rng):
    for _ in range(50):
        g = random_game(rng)
        rep = classify(g)
        assert rep.profiles == sorted(g.profiles())
        for flags in rep.flags.values():
            assert flags <= set(FLAGS)
            if "SNE" in flags:
                assert "SSNE" in flags
            if "SSNE" in flags:
                assert "WSSNE" in flags
            if "WSSNE" in flags:
                assert {"NE", "CWI"} <= flags
            if "SPO" in flags:
                assert "PO" in flags
            if "MAXIMIN" in flags:
                assert "WALD" in flags


def test_report_me_vs_ne():
    rep = classify(builtin("me-vs-ne"))
    assert (2, 1) in rep.members("NE")
    assert (2, 1) in rep.members("SPO")
    assert (2, 1) not in rep.members("ME")
    assert (2, 0) in rep.members("ME") - rep.members("NE")
