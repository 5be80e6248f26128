"""Lower payoffs, flat games and m-equilibria of normal-form games."""

from .equilibrium import (
    ClassificationReport,
    classify,
    cwi_profiles,
    is_maximin,
    nash_equilibria,
    pareto_optima,
    semi_strict_ne,
    strict_ne,
    strong_pareto_optima,
    wald_solutions,
    weakly_semi_strict_ne,
)
from .flatten import (
    FlatGameResult,
    competitive_flat_check,
    flat_game,
    iterate_flatten,
    lower_payoff,
    lower_values,
    m_equilibria,
    not_worse_responses,
)
from .game import (
    FiniteGame,
    Profile,
    apply_monotone_transform,
    builtin,
    is_quantitatively_symmetric,
    is_strictly_competitive,
    make_game,
)

__all__ = [
    "ClassificationReport",
    "FiniteGame",
    "FlatGameResult",
    "Profile",
    "apply_monotone_transform",
    "builtin",
    "classify",
    "competitive_flat_check",
    "cwi_profiles",
    "flat_game",
    "is_maximin",
    "is_quantitatively_symmetric",
    "is_strictly_competitive",
    "iterate_flatten",
    "lower_payoff",
    "lower_values",
    "m_equilibria",
    "make_game",
    "nash_equilibria",
    "not_worse_responses",
    "pareto_optima",
    "semi_strict_ne",
    "strict_ne",
    "strong_pareto_optima",
    "wald_solutions",
    "weakly_semi_strict_ne",
]
