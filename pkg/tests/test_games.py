from fractions import Fraction

import pytest

from eqcheck.basim import PROTOCOLS, build_preference_bayes_game
from eqcheck.catalog import (bargaining_game, matching_pennies,
                             prisoners_dilemma, zero_one_game)
from eqcheck.errors import InputError
from eqcheck.games import (BayesianGame, BayesianStrategyProfile,
                           MixedProfile, NormalFormGame,
                           bayes_expected_utility, best_response_value,
                           expected_utility, is_bayes_nash, is_nash)

F = Fraction


def coin_game():
    # one player, two actions worth 3 and 7
    return NormalFormGame(("solo",), (("a", "b"),), {(0,): (3,), (1,): (7,)})


def test_expected_utility_single_player_mix():
    game = coin_game()
    profile = MixedProfile(((F(1, 2), F(1, 2)),))
    assert expected_utility(game, profile) == (F(5),)


def test_mixed_profile_validation():
    game = coin_game()
    with pytest.raises(InputError):
        MixedProfile(((F(1, 2), F(1, 3)),))
    with pytest.raises(InputError):
        MixedProfile(((F(3, 2), F(-1, 2)),))
    with pytest.raises(InputError):
        MixedProfile.pure(game, ("a", "b"))
    with pytest.raises(InputError):
        expected_utility(game, MixedProfile(((F(1), F(0), F(0)),)))


def test_profile_constructors_agree():
    game = prisoners_dilemma()
    by_name = MixedProfile.pure(game, ("C", "D"))
    by_index = MixedProfile.pure(game, (0, 1))
    by_map = MixedProfile.from_mapping(
        game, {"p1": {"C": 1}, "p2": {"D": 1}})
    assert by_name.weights == by_index.weights == by_map.weights
    with pytest.raises(InputError):
        MixedProfile.from_mapping(game, {"p1": {"C": 1}})
    with pytest.raises(InputError):
        MixedProfile.pure(game, ("C", "X"))


def test_zero_one_all_zero_is_nash():
    game = zero_one_game(3)
    profile = MixedProfile.pure(game, ("0", "0", "0"))
    assert expected_utility(game, profile) == (1, 1, 1)
    assert is_nash(game, profile).holds


def test_prisoners_dilemma_verdicts():
    game = prisoners_dilemma()
    assert is_nash(game, MixedProfile.pure(game, ("D", "D"))).holds
    verdict = is_nash(game, MixedProfile.pure(game, ("C", "C")))
    assert not verdict.holds
    w = verdict.witness
    assert w.kind == "unilateral-deviation"
    assert w.data["player"] == "p1"
    assert w.data["action"] == "D"
    assert w.data["utility_before"] == 3
    assert w.data["utility_after"] == 5
    assert w.data["gain"] == 2


def test_epsilon_softens_the_dilemma():
    game = prisoners_dilemma()
    cc = MixedProfile.pure(game, ("C", "C"))
    assert is_nash(game, cc, epsilon=2).holds
    assert not is_nash(game, cc, epsilon=F(1)).holds
    assert not is_nash(game, cc, epsilon=F(199, 100)).holds
    with pytest.raises(InputError):
        is_nash(game, cc, epsilon=-1)


def test_matching_pennies_uniform():
    game = matching_pennies()
    uniform = MixedProfile.uniform(game)
    assert is_nash(game, uniform).holds
    assert best_response_value(game, "p1", uniform) == 0
    assert best_response_value(game, 1, uniform) == 0
    assert not is_nash(game, MixedProfile.pure(game, ("H", "H"))).holds
    with pytest.raises(InputError):
        best_response_value(game, "p9", uniform)


def test_bargaining_all_stay_is_nash():
    game = bargaining_game(5)
    profile = MixedProfile.pure(game, ("stay",) * 5)
    assert expected_utility(game, profile) == (2,) * 5
    assert is_nash(game, profile).holds


def two_type_game():
    """One informed player whose action is only right for one type."""
    prior = {(0,): F(1, 2), (1,): F(1, 2)}
    utilities = {
        ((0,), (0,)): (4,), ((0,), (1,)): (0,),
        ((1,), (0,)): (0,), ((1,), (1,)): (2,),
    }
    return BayesianGame(
        ("solo",), (("low", "high"),), (("x", "y"),), prior, utilities)


def test_bayes_expected_utility_mean():
    game = two_type_game()
    profile = BayesianStrategyProfile.pure(game, (("x", "y"),))
    assert bayes_expected_utility(game, profile) == (F(3),)
    assert is_bayes_nash(game, profile).holds


def test_bayes_nash_per_type_witness():
    game = two_type_game()
    wrong = BayesianStrategyProfile.pure(game, (("x", "x"),))
    verdict = is_bayes_nash(game, wrong)
    assert not verdict.holds
    w = verdict.witness
    assert w.kind == "type-deviation"
    assert w.data["type"] == "high"
    assert w.data["action"] == "y"
    assert w.data["gain"] == 1


def test_bayes_zero_probability_type_is_skipped():
    # the second type never occurs, so any behavior there is fine
    prior = {(0,): F(1)}
    utilities = {
        ((0,), (0,)): (1,), ((0,), (1,)): (0,),
        ((1,), (0,)): (0,), ((1,), (1,)): (10,),
    }
    game = BayesianGame(
        ("solo",), (("seen", "never"),), (("x", "y"),), prior, utilities)
    profile = BayesianStrategyProfile.pure(game, (("x", "x"),))
    assert is_bayes_nash(game, profile).holds


def test_bayesian_game_validation():
    with pytest.raises(InputError):
        BayesianGame(("solo",), (("t",),), (("x",),),
                     {(0,): F(1, 2)}, {((0,), (0,)): (1,)})
    with pytest.raises(InputError):
        BayesianGame(("solo",), (("t",),), (("x", "y"),),
                     {(0,): F(1)}, {((0,), (0,)): (1,)})
    with pytest.raises(InputError):
        BayesianStrategyProfile.pure(two_type_game(), (("x",),))


def test_follow_mediator_is_bayes_nash():
    """Following the relay protocol survives all library deviations when the
    general's preference is private."""
    game = build_preference_bayes_game(4, PROTOCOLS["mediator"])
    choices = tuple(
        tuple("follow" for _ in types) for types in game.types)
    profile = BayesianStrategyProfile.pure(game, choices)
    assert bayes_expected_utility(game, profile) == (1, 1, 1, 1)
    assert is_bayes_nash(game, profile).holds
