import random
from fractions import Fraction

import pytest

from _gen import (generalized_profile_names, pure_nash_names,
                  random_small_game)
from eqcheck.awareness import (AugmentedGame, GameWithAwareness,
                               GeneralizedProfile, canonical_representation,
                               crossing_game, expected_utilities,
                               find_pure_generalized_nash,
                               is_generalized_nash, outcome_distribution)
from eqcheck.errors import InputError, WorkBoundExceeded
from eqcheck.trees import ExtensiveGame, induced_normal_form

F = Fraction

E1_ASSIGNMENTS = {
    ("B", "modeler"): {"B": "down_B"},
    ("A", "a_view"): {"A.1": "across_A"},
    ("A", "b_view"): {"A.3": "down_A"},
    ("B", "b_view"): {"B.3": "across_B"},
}

E2_ASSIGNMENTS = {
    ("B", "modeler"): {"B": "across_B"},
    ("A", "a_view"): {"A.1": "down_A"},
    ("A", "b_view"): {"A.3": "down_A"},
    ("B", "b_view"): {"B.3": "across_B"},
}


def crossing(p=F(3, 10)):
    return crossing_game(p)


def test_crossing_structure():
    gwa = crossing()
    assert tuple(ag.name for ag in gwa.games) == (
        "modeler", "a_view", "b_view")
    assert gwa.modeler == "modeler"
    assert gwa.active_pairs() == (
        ("B", "modeler"), ("A", "a_view"), ("A", "b_view"), ("B", "b_view"))
    assert gwa.active_labels("A", "a_view") == ("A.1",)
    assert gwa.active_labels("B", "modeler") == ("B",)
    assert gwa.validate().holds


def test_crossing_outcome_distributions():
    gwa = crossing()
    e1 = GeneralizedProfile.pure(E1_ASSIGNMENTS)
    assert outcome_distribution(gwa, "modeler", e1) == {
        ("across_A", "down_B"): F(1)}
    assert outcome_distribution(gwa, "a_view", e1) == {
        ("aware", "across_A", "down_B"): F(7, 10),
        ("unaware", "across_A", "across_B"): F(3, 10),
    }
    assert outcome_distribution(gwa, "b_view", e1) == {("down_A",): F(1)}
    for name in ("modeler", "a_view", "b_view"):
        assert sum(outcome_distribution(gwa, name, e1).values()) == 1


def test_crossing_expected_utilities():
    gwa = crossing()
    e1 = GeneralizedProfile.pure(E1_ASSIGNMENTS)
    assert expected_utilities(gwa, "modeler", e1) == (2, 3)
    assert expected_utilities(gwa, "a_view", e1) == (F(7, 5), F(27, 10))
    assert expected_utilities(gwa, "b_view", e1) == (1, 1)


def test_crossing_equilibria_at_low_unawareness():
    gwa = crossing()
    e1 = GeneralizedProfile.pure(E1_ASSIGNMENTS)
    e2 = GeneralizedProfile.pure(E2_ASSIGNMENTS)
    assert is_generalized_nash(gwa, e1).holds
    assert is_generalized_nash(gwa, e2).holds
    found = find_pure_generalized_nash(gwa)
    assert [p.strategies for p in found] == [e1.strategies, e2.strategies]


def test_crossing_fails_at_high_unawareness():
    gwa = crossing(F(7, 10))
    verdict = is_generalized_nash(
        gwa, GeneralizedProfile.pure(E1_ASSIGNMENTS))
    assert not verdict.holds
    w = verdict.witness
    assert w.kind == "subjective-deviation"
    assert w.data["player"] == "A"
    assert w.data["game"] == "a_view"
    assert w.data["strategy"] == {"A.1": "down_A"}
    assert w.data["utility_before"] == F(3, 5)
    assert w.data["utility_after"] == 1
    assert w.data["gain"] == F(2, 5)


def test_epsilon_absorbs_small_subjective_gains():
    gwa = crossing(F(7, 10))
    e1 = GeneralizedProfile.pure(E1_ASSIGNMENTS)
    assert is_generalized_nash(gwa, e1, epsilon=F(2, 5)).holds
    assert not is_generalized_nash(gwa, e1, epsilon=F(39, 100)).holds


def test_find_respects_work_bound():
    with pytest.raises(WorkBoundExceeded):
        find_pure_generalized_nash(crossing(), work_bound=3)


def _mutated(gwa, replacements):
    views = dict(gwa.views)
    views.update(replacements)
    return GameWithAwareness(
        gwa.games, gwa.modeler, views, underlying=gwa.underlying)


def test_validate_missing_view():
    gwa = crossing()
    views = dict(gwa.views)
    del views[("b_view", ("across_A",))]
    broken = GameWithAwareness(
        gwa.games, gwa.modeler, views, underlying=gwa.underlying)
    verdict = broken.validate()
    assert not verdict.holds
    assert verdict.witness.data["condition"] == "missing-view"
    assert verdict.witness.data["game"] == "b_view"


def test_validate_unknown_target():
    broken = _mutated(crossing(), {("modeler", ()): ("a_view", "NOPE")})
    verdict = broken.validate()
    assert verdict.witness.data["condition"] == "unknown-target"


def test_validate_wrong_player():
    broken = _mutated(
        crossing(), {("modeler", ("across_A",)): ("a_view", "A.1")})
    verdict = broken.validate()
    assert not verdict.holds
    assert verdict.witness.data["condition"] == "wrong-player"
    assert verdict.witness.data["game"] == "modeler"
    assert verdict.witness.data["node"] == ("across_A",)


def test_validate_move_embedding():
    broken = _mutated(
        crossing(), {("modeler", ("across_A",)): ("b_view", "B.3")})
    verdict = broken.validate()
    assert verdict.witness.data["condition"] == "move-embedding"
    assert "down_B" in verdict.witness.data["detail"]


def test_validate_introspection():
    broken = _mutated(
        crossing(), {("a_view", ("unaware",)): ("b_view", "A.3")})
    verdict = broken.validate()
    assert verdict.witness.data["condition"] == "introspection"


def test_validate_awareness_level():
    gwa = crossing()
    a_view = gwa.game("a_view")
    hacked = dict(a_view.awareness)
    hacked[("aware",)] = frozenset({("no_such_move",)})
    games = (gwa.game("modeler"),
             AugmentedGame("a_view", a_view.tree, hacked),
             gwa.game("b_view"))
    broken = GameWithAwareness(
        games, "modeler", gwa.views, underlying=gwa.underlying)
    verdict = broken.validate()
    assert verdict.witness.data["condition"] == "awareness-level"


def test_virtual_move_flags_do_not_change_play():
    gwa = crossing()
    a_view = gwa.game("a_view")
    flagged = AugmentedGame(
        "a_view", a_view.tree, a_view.awareness,
        virtual_moves=((("unaware",), "across_A"),))
    alt = GameWithAwareness(
        (gwa.game("modeler"), flagged, gwa.game("b_view")),
        "modeler", gwa.views, underlying=gwa.underlying)
    assert alt.validate().holds
    found = find_pure_generalized_nash(alt)
    reference = find_pure_generalized_nash(gwa)
    assert [p.strategies for p in found] == [
        p.strategies for p in reference]
    with pytest.raises(InputError):
        AugmentedGame("a_view", a_view.tree, a_view.awareness,
                      virtual_moves=((("nowhere",), "x"),))


def test_profile_validation():
    gwa = crossing()
    with pytest.raises(InputError):
        GeneralizedProfile({("A",): {"A.1": {"across_A": 1}}})
    with pytest.raises(InputError):
        GeneralizedProfile({("A", "a_view"): {"A.1": {"across_A": -1}}})
    incomplete = GeneralizedProfile.pure(
        {k: v for k, v in E1_ASSIGNMENTS.items() if k != ("B", "b_view")})
    with pytest.raises(InputError):
        is_generalized_nash(gwa, incomplete)
    bad_sum = GeneralizedProfile(
        {**GeneralizedProfile.pure(E1_ASSIGNMENTS).strategies,
         ("B", "modeler"): {"B": {"down_B": F(1, 2)}}})
    with pytest.raises(InputError):
        is_generalized_nash(gwa, bad_sum)
    unknown_move = GeneralizedProfile(
        {**GeneralizedProfile.pure(E1_ASSIGNMENTS).strategies,
         ("B", "modeler"): {"B": {"sideways": F(1)}}})
    with pytest.raises(InputError):
        is_generalized_nash(gwa, unknown_move)


def _two_view_structure():
    """The first game's node borrows a strategy from a larger believed
    information set, so a believed move can be unplayable in place."""
    t1 = ExtensiveGame(("A",), {(): ("x",)}, {(): "A"}, {(): "L1"},
                       {("x",): (0,)})
    t2 = ExtensiveGame(("A",), {(): ("x", "y")}, {(): "A"}, {(): "L2"},
                       {("x",): (1,), ("y",): (2,)})
    every = frozenset({(), ("x",), ("y",)})
    g1 = AugmentedGame("g1", t1, {(): every})
    g2 = AugmentedGame("g2", t2, {(): every})
    views = {("g1", ()): ("g2", "L2"), ("g2", ()): ("g2", "L2")}
    return GameWithAwareness((g1, g2), "g2", views, underlying=t2)


def test_believed_move_unavailable_in_place():
    gwa = _two_view_structure()
    assert gwa.validate().holds
    profile = GeneralizedProfile.pure({("A", "g2"): {"L2": "y"}})
    assert is_generalized_nash(gwa, profile).holds
    with pytest.raises(InputError):
        outcome_distribution(gwa, "g1", profile)
    assert outcome_distribution(gwa, "g2", profile) == {("y",): F(1)}


def test_canonical_representation_is_single_view():
    tree = ExtensiveGame(
        ("A", "B"),
        {(): ("l", "r"), ("l",): ("u", "d")},
        {(): "A", ("l",): "B"},
        {(): "A0", ("l",): "B0"},
        {("r",): (0, 0), ("l", "u"): (2, 1), ("l", "d"): (-1, 3)})
    canon = canonical_representation(tree)
    assert canon.validate().holds
    assert canon.modeler == "modeler"
    assert canon.active_pairs() == (("A", "modeler"), ("B", "modeler"))
    nf = induced_normal_form(tree)
    found = find_pure_generalized_nash(canon)
    assert generalized_profile_names(tree, found) == pure_nash_names(nf)


def test_canonical_equivalence_on_random_trees():
    rng = random.Random(424242)
    for _ in range(25):
        tree = random_small_game(rng)
        canon = canonical_representation(tree)
        assert canon.validate().holds
        nf = induced_normal_form(tree)
        found = find_pure_generalized_nash(canon)
        assert generalized_profile_names(tree, found) == pure_nash_names(nf)
