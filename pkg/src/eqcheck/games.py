"""Finite normal-form and Bayesian games with exact equilibrium checks.

Payoffs and probabilities are fractions.Fraction values throughout, so
expected utilities are exact and equilibrium verdicts reduce to exact
strict-inequality comparisons.  An epsilon argument widens every check to
epsilon-equilibrium; epsilon must be a nonnegative rational.

Deviation checks only ever range over pure deviations: against a fixed
opponent profile a player's utility is linear in their own mixture, so no
mixed deviation can beat the best pure one.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, WorkBoundExceeded
from .rationals import as_fraction
from .verdicts import Verdict, Witness

# dense tables above this many entries are refused (desk scale)
DEFAULT_ENTRY_BOUND = 10_000_000

ZERO = Fraction(0)


def _check_names(names, what):
    if not isinstance(names, (list, tuple)) or not names:
        raise InputError(f"{what}: expected a nonempty sequence")
    for name in names:
        if not isinstance(name, str) or not name:
            raise InputError(f"{what}: names must be nonempty strings, got {name!r}")
    if len(set(names)) != len(names):
        raise InputError(f"{what}: names must be unique")


def _product(sizes):
    total = 1
    for s in sizes:
        total *= s
    return total


class NormalFormGame:
    """A finite strategic-form game with a total, exact payoff table.

    payoffs maps every pure action-index profile (tuple of ints, one per
    player) to a payoff vector (tuple of Fractions, one per player).
    """

    def __init__(self, players, actions, payoffs, entry_bound=DEFAULT_ENTRY_BOUND):
        _check_names(players, "players")
        self.players = tuple(players)
        n = len(self.players)
        if not isinstance(actions, (list, tuple)) or len(actions) != n:
            raise InputError("actions: expected one action list per player")
        fixed_actions = []
        for i, acts in enumerate(actions):
            _check_names(acts, f"actions of player {self.players[i]}")
            fixed_actions.append(tuple(acts))
        self.actions = tuple(fixed_actions)

        entries = _product(len(a) for a in self.actions)
        if entries > entry_bound:
            raise WorkBoundExceeded(
                f"payoff table needs {entries} entries, bound is {entry_bound}",
                required=entries, bound=entry_bound)
        if not isinstance(payoffs, Mapping):
            raise InputError("payoffs: expected a mapping from action profiles")
        if len(payoffs) != entries:
            raise InputError(
                f"payoffs: table has {len(payoffs)} entries, needs exactly {entries}")
        table = {}
        for key, vec in payoffs.items():
            if (not isinstance(key, tuple) or len(key) != n
                    or any(not isinstance(a, int) or isinstance(a, bool)
                           or a < 0 or a >= len(self.actions[i])
                           for i, a in enumerate(key))):
                raise InputError(f"payoffs: bad action profile key {key!r}")
            if not isinstance(vec, (list, tuple)) or len(vec) != n:
                raise InputError(
                    f"payoffs[{key}]: expected {n} payoffs, got {vec!r}")
            table[key] = tuple(
                as_fraction(v, f"payoffs[{key}][{self.players[i]}]")
                for i, v in enumerate(vec))
        self.payoffs = table

    @property
    def n_players(self):
        return len(self.players)

    def player_index(self, player):
        try:
            return self.players.index(player)
        except ValueError:
            raise InputError(f"unknown player id {player!r}") from None

    def action_index(self, player_index, action):
        try:
            return self.actions[player_index].index(action)
        except ValueError:
            raise InputError(
                f"player {self.players[player_index]}: unknown action {action!r}"
            ) from None

    def pure_profiles(self):
        """All pure action-index profiles in lexicographic order."""
        return itertools.product(*(range(len(a)) for a in self.actions))

    def profile_names(self, profile):
        return tuple(self.actions[i][a] for i, a in enumerate(profile))


class MixedProfile:
    """One mixed strategy per player, aligned with the game's action lists.

    weights[i][a] is the probability player i puts on their a-th action.
    """

    def __init__(self, weights):
        fixed = []
        for i, row in enumerate(weights):
            row = tuple(as_fraction(w, f"profile weight [{i}]") for w in row)
            if any(w < 0 for w in row):
                raise InputError(f"profile: negative weight for player index {i}")
            if sum(row) != 1:
                raise InputError(f"profile: weights of player index {i} do not sum to 1")
            fixed.append(row)
        self.weights = tuple(fixed)

    @classmethod
    def pure(cls, game: NormalFormGame, actions):
        """Degenerate profile from one action per player (names or indices)."""
        if len(actions) != game.n_players:
            raise InputError("pure profile: expected one action per player")
        rows = []
        for i, act in enumerate(actions):
            ai = act if isinstance(act, int) else game.action_index(i, act)
            row = [ZERO] * len(game.actions[i])
            if ai < 0 or ai >= len(row):
                raise InputError(
                    f"player {game.players[i]}: action index {ai} out of range")
            row[ai] = Fraction(1)
            rows.append(tuple(row))
        return cls(rows)

    @classmethod
    def from_mapping(cls, game: NormalFormGame, mapping):
        """Profile from {player: {action: weight}}; omitted actions get 0."""
        rows = []
        for i, player in enumerate(game.players):
            if player not in mapping:
                raise InputError(f"profile: missing player {player!r}")
            dist = mapping[player]
            row = [ZERO] * len(game.actions[i])
            for action, w in dist.items():
                row[game.action_index(i, action)] = as_fraction(
                    w, f"profile[{player}][{action}]")
            rows.append(tuple(row))
        return cls(rows)

    @classmethod
    def uniform(cls, game: NormalFormGame):
        return cls(tuple(
            tuple(Fraction(1, len(acts)) for _ in acts) for acts in game.actions))


def _check_profile_shape(game: NormalFormGame, profile: MixedProfile):
    if len(profile.weights) != game.n_players:
        raise InputError(
            f"profile has {len(profile.weights)} players, game has {game.n_players}")
    for i, row in enumerate(profile.weights):
        if len(row) != len(game.actions[i]):
            raise InputError(
                f"player {game.players[i]}: profile has {len(row)} weights "
                f"for {len(game.actions[i])} actions")


def _support(profile: MixedProfile):
    return [
        [(a, w) for a, w in enumerate(row) if w != 0] for row in profile.weights
    ]


def expected_utility(game: NormalFormGame, profile: MixedProfile):
    """Exact expected payoff vector of a mixed profile."""
    _check_profile_shape(game, profile)
    totals = [ZERO] * game.n_players
    for combo in itertools.product(*_support(profile)):
        prob = Fraction(1)
        for _, w in combo:
            prob *= w
        vec = game.payoffs[tuple(a for a, _ in combo)]
        for i in range(game.n_players):
            totals[i] += prob * vec[i]
    return tuple(totals)


def _utility_of_pure_against(game, profile, player_index, action_index):
    """Player's exact utility when they play a pure action against the rest."""
    support = _support(profile)
    support[player_index] = [(action_index, Fraction(1))]
    total = ZERO
    for combo in itertools.product(*support):
        prob = Fraction(1)
        for _, w in combo:
            prob *= w
        total += prob * game.payoffs[tuple(a for a, _ in combo)][player_index]
    return total


def best_response_value(game: NormalFormGame, player, profile: MixedProfile):
    """Best utility the player can get by any response to profile.

    The maximum over mixed responses is attained at a pure action, so this
    is computed by enumerating the player's actions.
    """
    _check_profile_shape(game, profile)
    i = game.player_index(player) if isinstance(player, str) else player
    if not isinstance(i, int) or i < 0 or i >= game.n_players:
        raise InputError(f"unknown player id {player!r}")
    return max(
        _utility_of_pure_against(game, profile, i, a)
        for a in range(len(game.actions[i])))


def _check_epsilon(epsilon):
    eps = as_fraction(epsilon, "epsilon")
    if eps < 0:
        raise InputError("epsilon must be nonnegative")
    return eps


def is_nash(game: NormalFormGame, profile: MixedProfile, epsilon=0) -> Verdict:
    """Check that no player gains more than epsilon by a unilateral deviation.

    On failure the witness is the first improving (player, action) pair in
    declaration order.
    """
    eps = _check_epsilon(epsilon)
    _check_profile_shape(game, profile)
    base = expected_utility(game, profile)
    for i in range(game.n_players):
        for a in range(len(game.actions[i])):
            value = _utility_of_pure_against(game, profile, i, a)
            if value > base[i] + eps:
                player = game.players[i]
                action = game.actions[i][a]
                return Verdict(False, Witness(
                    kind="unilateral-deviation",
                    description=(
                        f"player {player} gains by switching to {action}"),
                    data={
                        "player": player,
                        "action": action,
                        "utility_before": base[i],
                        "utility_after": value,
                        "gain": value - base[i],
                    }))
    return Verdict(True)


class BayesianGame:
    """A finite Bayesian game with a common prior over type profiles.

    prior may omit zero-probability type profiles; utilities must be total
    over (type profile, action profile) pairs.
    """

    def __init__(self, players, types, actions, prior, utilities,
                 entry_bound=DEFAULT_ENTRY_BOUND):
        _check_names(players, "players")
        self.players = tuple(players)
        n = len(self.players)
        for seq, what in ((types, "types"), (actions, "actions")):
            if not isinstance(seq, (list, tuple)) or len(seq) != n:
                raise InputError(f"{what}: expected one list per player")
        self.types = tuple(tuple(t) for t in types)
        self.actions = tuple(tuple(a) for a in actions)
        for i in range(n):
            _check_names(self.types[i], f"types of player {self.players[i]}")
            _check_names(self.actions[i], f"actions of player {self.players[i]}")

        type_count = _product(len(t) for t in self.types)
        act_count = _product(len(a) for a in self.actions)
        if type_count * act_count > entry_bound:
            raise WorkBoundExceeded(
                f"utility table needs {type_count * act_count} entries, "
                f"bound is {entry_bound}",
                required=type_count * act_count, bound=entry_bound)

        fixed_prior = {}
        total = ZERO
        for key, q in prior.items():
            if (not isinstance(key, tuple) or len(key) != n
                    or any(not isinstance(t, int) or t < 0 or t >= len(self.types[i])
                           for i, t in enumerate(key))):
                raise InputError(f"prior: bad type profile key {key!r}")
            q = as_fraction(q, f"prior[{key}]")
            if q < 0:
                raise InputError(f"prior[{key}]: negative probability")
            total += q
            if q != 0:
                fixed_prior[key] = q
        if total != 1:
            raise InputError(f"prior: probabilities sum to {total}, not 1")
        self.prior = fixed_prior

        if len(utilities) != type_count * act_count:
            raise InputError(
                f"utilities: table has {len(utilities)} entries, needs "
                f"{type_count * act_count}")
        fixed_util = {}
        for key, vec in utilities.items():
            if (not isinstance(key, tuple) or len(key) != 2):
                raise InputError(f"utilities: bad key {key!r}")
            tkey, akey = key
            if (not isinstance(tkey, tuple) or len(tkey) != n
                    or not isinstance(akey, tuple) or len(akey) != n):
                raise InputError(f"utilities: bad key {key!r}")
            if any(t < 0 or t >= len(self.types[i]) for i, t in enumerate(tkey)):
                raise InputError(f"utilities: bad type profile in key {key!r}")
            if any(a < 0 or a >= len(self.actions[i]) for i, a in enumerate(akey)):
                raise InputError(f"utilities: bad action profile in key {key!r}")
            if not isinstance(vec, (list, tuple)) or len(vec) != n:
                raise InputError(f"utilities[{key}]: expected {n} payoffs")
            fixed_util[(tkey, akey)] = tuple(
                as_fraction(v, f"utilities[{key}]") for v in vec)
        self.utilities = fixed_util

    @property
    def n_players(self):
        return len(self.players)

    def player_index(self, player):
        try:
            return self.players.index(player)
        except ValueError:
            raise InputError(f"unknown player id {player!r}") from None


class BayesianStrategyProfile:
    """weights[i][t][a]: probability that player i of type t plays action a."""

    def __init__(self, weights):
        fixed = []
        for i, per_type in enumerate(weights):
            rows = []
            for t, row in enumerate(per_type):
                row = tuple(
                    as_fraction(w, f"strategy[{i}][{t}]") for w in row)
                if any(w < 0 for w in row):
                    raise InputError(
                        f"strategy of player index {i}, type index {t}: "
                        f"negative weight")
                if sum(row) != 1:
                    raise InputError(
                        f"strategy of player index {i}, type index {t}: "
                        f"weights do not sum to 1")
                rows.append(row)
            fixed.append(tuple(rows))
        self.weights = tuple(fixed)

    @classmethod
    def pure(cls, game: BayesianGame, choices):
        """choices[i] maps every type of player i to one action (names ok)."""
        if len(choices) != game.n_players:
            raise InputError("pure strategy profile: one choice map per player")
        weights = []
        for i, per_type in enumerate(choices):
            if len(per_type) != len(game.types[i]):
                raise InputError(
                    f"player {game.players[i]}: expected a choice for each "
                    f"of {len(game.types[i])} types")
            rows = []
            for t, act in enumerate(per_type):
                ai = act if isinstance(act, int) else None
                if ai is None:
                    try:
                        ai = game.actions[i].index(act)
                    except ValueError:
                        raise InputError(
                            f"player {game.players[i]}: unknown action {act!r}"
                        ) from None
                row = [ZERO] * len(game.actions[i])
                row[ai] = Fraction(1)
                rows.append(tuple(row))
            weights.append(tuple(rows))
        return cls(weights)


def _check_bayes_shape(game: BayesianGame, profile: BayesianStrategyProfile):
    if len(profile.weights) != game.n_players:
        raise InputError(
            f"profile has {len(profile.weights)} players, game has "
            f"{game.n_players}")
    for i, per_type in enumerate(profile.weights):
        if len(per_type) != len(game.types[i]):
            raise InputError(
                f"player {game.players[i]}: profile covers {len(per_type)} "
                f"types, game has {len(game.types[i])}")
        for t, row in enumerate(per_type):
            if len(row) != len(game.actions[i]):
                raise InputError(
                    f"player {game.players[i]}, type "
                    f"{game.types[i][t]}: profile has {len(row)} weights for "
                    f"{len(game.actions[i])} actions")


def _action_support(game, profile, tprofile):
    return [
        [(a, w) for a, w in enumerate(profile.weights[i][tprofile[i]]) if w != 0]
        for i in range(game.n_players)
    ]


def bayes_expected_utility(game: BayesianGame, profile: BayesianStrategyProfile):
    """Exact ex-ante expected utility vector."""
    _check_bayes_shape(game, profile)
    totals = [ZERO] * game.n_players
    for tprofile, p in game.prior.items():
        for combo in itertools.product(*_action_support(game, profile, tprofile)):
            prob = p
            for _, w in combo:
                prob *= w
            vec = game.utilities[(tprofile, tuple(a for a, _ in combo))]
            for i in range(game.n_players):
                totals[i] += prob * vec[i]
    return tuple(totals)


def is_bayes_nash(game: BayesianGame, profile: BayesianStrategyProfile,
                  epsilon=0) -> Verdict:
    """Bayes-Nash check by per-type pure deviations.

    Checking one type at a time is sufficient: a whole-map deviation's gain
    is the sum of its per-type gains, so some type gains strictly whenever
    the map does.  Types outside the prior's support cannot produce an
    ex-ante gain and are skipped.
    """
    eps = _check_epsilon(epsilon)
    _check_bayes_shape(game, profile)
    for i in range(game.n_players):
        for t in range(len(game.types[i])):
            relevant = [
                (tprofile, p) for tprofile, p in game.prior.items()
                if tprofile[i] == t
            ]
            if not relevant:
                continue
            gains = [ZERO] * len(game.actions[i])
            current = ZERO
            for tprofile, p in relevant:
                support = _action_support(game, profile, tprofile)
                others = support[:i] + support[i + 1:]
                for combo in itertools.product(*others):
                    prob = p
                    for _, w in combo:
                        prob *= w
                    rest = [a for a, _ in combo]
                    for a in range(len(game.actions[i])):
                        akey = tuple(rest[:i] + [a] + rest[i:])
                        gains[a] += prob * game.utilities[(tprofile, akey)][i]
                    for a, w in support[i]:
                        akey = tuple(rest[:i] + [a] + rest[i:])
                        current += prob * w * game.utilities[(tprofile, akey)][i]
            for a in range(len(game.actions[i])):
                if gains[a] > current + eps:
                    player = game.players[i]
                    return Verdict(False, Witness(
                        kind="type-deviation",
                        description=(
                            f"player {player} of type {game.types[i][t]} gains "
                            f"by playing {game.actions[i][a]}"),
                        data={
                            "player": player,
                            "type": game.types[i][t],
                            "action": game.actions[i][a],
                            "utility_before": current,
                            "utility_after": gains[a],
                            "gain": gains[a] - current,
                        }))
    return Verdict(True)
