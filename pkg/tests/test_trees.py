import random
from fractions import Fraction

import pytest

from _gen import pure_combo_count, random_extensive_game
from eqcheck.errors import InputError, WorkBoundExceeded
from eqcheck.games import MixedProfile, is_nash
from eqcheck.trees import (NATURE, ExtensiveGame, expected_payoffs,
                           induced_normal_form, outcome_distribution,
                           pure_strategies)

F = Fraction


def entry_tree():
    """Entrant moves first; the incumbent reacts without seeing history."""
    moves = {(): ("out", "in"), ("in",): ("fight", "yield")}
    owner = {(): "E", ("in",): "I"}
    infosets = {(): "E0", ("in",): "I0"}
    payoffs = {
        ("out",): (0, 2),
        ("in", "fight"): (-1, -1),
        ("in", "yield"): (1, 1),
    }
    return ExtensiveGame(("E", "I"), moves, owner, infosets, payoffs)


def coin_tree():
    moves = {(): ("h", "t"), ("h",): ("l", "r")}
    owner = {(): NATURE, ("h",): "P1"}
    infosets = {("h",): "X"}
    payoffs = {("t",): (4,), ("h", "l"): (0,), ("h", "r"): (8,)}
    nature = {(): {"h": F(1, 2), "t": F(1, 2)}}
    return ExtensiveGame(("P1",), moves, owner, infosets, payoffs, nature)


def test_outcome_distribution_sums_to_one():
    game = entry_tree()
    strategy = {"E0": {"in": 1}, "I0": {"fight": F(1, 3), "yield": F(2, 3)}}
    dist = outcome_distribution(game, strategy)
    assert sum(dist.values()) == 1
    assert dist[("in", "fight")] == F(1, 3)
    assert ("out",) not in dist


def test_expected_payoffs_mixture():
    game = entry_tree()
    strategy = {"E0": {"in": 1}, "I0": {"fight": F(1, 3), "yield": F(2, 3)}}
    assert expected_payoffs(game, strategy) == (F(1, 3), F(1, 3))


def test_chance_is_averaged():
    game = coin_tree()
    assert expected_payoffs(game, {"X": {"r": 1}}) == (F(6),)
    assert expected_payoffs(game, {"X": {"l": 1}}) == (F(2),)


def test_pure_strategies_naming():
    game = entry_tree()
    assert pure_strategies(game, "E") == (
        ("E0:out", {"E0": "out"}), ("E0:in", {"E0": "in"}))
    solo = coin_tree()
    assert pure_strategies(solo, "P1") == (
        ("X:l", {"X": "l"}), ("X:r", {"X": "r"}))
    # a player with no decision node gets the single trivial strategy
    idle = ExtensiveGame(
        ("A", "B"), {(): ("x", "y")}, {(): "A"}, {(): "L"},
        {("x",): (1, 0), ("y",): (0, 1)})
    assert pure_strategies(idle, "B") == (("-", {}),)
    with pytest.raises(InputError):
        pure_strategies(idle, "C")


def test_induced_normal_form_payoffs():
    game = entry_tree()
    nf = induced_normal_form(game)
    assert nf.players == ("E", "I")
    assert nf.actions == (
        ("E0:out", "E0:in"), ("I0:fight", "I0:yield"))
    assert nf.payoffs[(0, 0)] == (0, 2)
    assert nf.payoffs[(1, 0)] == (-1, -1)
    assert nf.payoffs[(1, 1)] == (1, 1)
    # (in, yield) and (out, fight) are the two pure equilibria
    assert is_nash(nf, MixedProfile.pure(nf, ("E0:in", "I0:yield"))).holds
    assert is_nash(nf, MixedProfile.pure(nf, ("E0:out", "I0:fight"))).holds
    assert not is_nash(nf, MixedProfile.pure(nf, ("E0:in", "I0:fight"))).holds


def test_induced_normal_form_respects_entry_bound():
    with pytest.raises(WorkBoundExceeded):
        induced_normal_form(entry_tree(), entry_bound=3)


def test_strategy_validation():
    game = entry_tree()
    with pytest.raises(InputError):
        outcome_distribution(game, {"E0": {"in": 1}})
    with pytest.raises(InputError):
        outcome_distribution(
            game, {"E0": {"in": 1}, "I0": {"fight": F(1, 2)}})
    with pytest.raises(InputError):
        outcome_distribution(
            game, {"E0": {"in": 1}, "I0": {"run": 1}})
    with pytest.raises(InputError):
        outcome_distribution(
            game, {"E0": {"in": 1}, "I0": {"fight": 1}, "Z": {"a": 1}})


def test_tree_construction_errors():
    with pytest.raises(InputError):
        ExtensiveGame((), {}, {}, {}, {(): (1,)})
    with pytest.raises(InputError):
        ExtensiveGame(("A",), {(): ("x",)}, {(): "A"}, {(): "L"}, {})
    with pytest.raises(InputError):
        ExtensiveGame(
            ("A",), {(): ("x", "y")}, {(): "A"}, {(): "L"},
            {("x",): (1,)})
    with pytest.raises(InputError):
        ExtensiveGame(
            ("A",), {(): ("x",)}, {(): "B"}, {(): "L"}, {("x",): (1,)})
    with pytest.raises(InputError):
        ExtensiveGame(
            ("A",), {(): ("x",)}, {(): NATURE}, {}, {("x",): (1,)})
    # same label, different move lists
    with pytest.raises(InputError):
        ExtensiveGame(
            ("A", "B"),
            {(): ("x", "y"), ("x",): ("u",)},
            {(): "A", ("x",): "A"},
            {(): "L", ("x",): "L"},
            {("y",): (0, 0), ("x", "u"): (1, 1)})


def test_random_trees_are_consistent():
    rng = random.Random(11)
    for _ in range(40):
        game = random_extensive_game(rng)
        assert len(game.payoffs) <= 12
        total = pure_combo_count(game)
        assert total >= 1
        # a uniform behavioral strategy reaches a genuine distribution
        strategy = {
            label: {
                m: F(1, len(game.label_moves(label)))
                for m in game.label_moves(label)
            }
            for label in game.labels
        }
        dist = outcome_distribution(game, strategy)
        assert sum(dist.values()) == 1
        payoffs = expected_payoffs(game, strategy)
        assert len(payoffs) == len(game.players)
