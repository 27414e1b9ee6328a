"""Coalition resilience, immunity to faulty players, and combined robustness.

A profile is k-resilient when no coalition of at most k players has a joint
(correlated) deviation its members profit from, and t-immune when no group
of at most t players can hurt any outsider by deviating arbitrarily.  The
(k, t) = (1, 0) case coincides with the Nash check.

Coalition deviations are enumerated as joint pure action tuples: members
may correlate, and because each member's utility is linear in any mixture
over joint deviations, a mixed deviation can never beat the best pure one
(for resilience) or undercut the worst pure one (for immunity).
"""

from __future__ import annotations

import itertools
import math
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import InputError, WorkBoundExceeded
from .games import (DEFAULT_ENTRY_BOUND, MixedProfile, NormalFormGame,
                    _check_epsilon, _check_profile_shape, expected_utility,
                    is_nash)
from .rationals import as_fraction
from .verdicts import Verdict, Witness

DEFAULT_WORK_BOUND = 10_000_000


class ResilienceSemantics(Enum):
    # STRONG: the coalition deviates if SOME member strictly gains.
    # WEAK: it deviates only if ALL members strictly gain.
    STRONG = "strong"
    WEAK = "weak"


class RobustnessQuery:
    """Parameters of a combined (k, t)-robustness check."""

    def __init__(self, k, t, epsilon=0, semantics=ResilienceSemantics.STRONG):
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise InputError("k must be a nonnegative integer")
        if not isinstance(t, int) or isinstance(t, bool) or t < 0:
            raise InputError("t must be a nonnegative integer")
        if not isinstance(semantics, ResilienceSemantics):
            raise InputError("semantics must be a ResilienceSemantics value")
        self.k = k
        self.t = t
        self.epsilon = _check_epsilon(epsilon)
        self.semantics = semantics


def utilities_under_joint_deviation(game, profile, deviators, joint):
    """Utility vector when `deviators` jointly play the pure tuple `joint`
    and everyone else keeps their profile strategy."""
    weights = [list(row) for row in profile.weights]
    for i, a in zip(deviators, joint):
        row = [Fraction(0)] * len(game.actions[i])
        row[a] = Fraction(1)
        weights[i] = row
    return expected_utility(game, MixedProfile(weights))


def _guard_enumeration(game, max_size, work_bound):
    """Refuse coalition enumerations that cannot finish at desk scale.

    Upper bound: sum over sizes s of C(n, s) * (largest action count)^s.
    """
    n = game.n_players
    biggest = max(len(a) for a in game.actions)
    total = 0
    for s in range(1, max_size + 1):
        total += math.comb(n, s) * biggest ** s
        if total > work_bound:
            raise WorkBoundExceeded(
                f"deviation enumeration needs up to {total} evaluations, "
                f"bound is {work_bound}",
                required=total, bound=work_bound)


def check_resilience(game: NormalFormGame, profile: MixedProfile, k,
                     semantics=ResilienceSemantics.STRONG, epsilon=0,
                     work_bound=DEFAULT_WORK_BOUND) -> Verdict:
    """No coalition of size <= k profits from a joint deviation.

    Coalitions and joint deviations are scanned in lexicographic order
    (coalition size, member indices, action indices), so the witness is the
    first counterexample in that order.
    """
    eps = _check_epsilon(epsilon)
    _check_profile_shape(game, profile)
    n = game.n_players
    if not isinstance(k, int) or isinstance(k, bool) or k < 1 or k > n:
        raise InputError(f"k out of range: need 1 <= k <= {n}, got {k!r}")
    if not isinstance(semantics, ResilienceSemantics):
        raise InputError("semantics must be a ResilienceSemantics value")
    _guard_enumeration(game, k, work_bound)

    base = expected_utility(game, profile)
    for size in range(1, k + 1):
        for coalition in itertools.combinations(range(n), size):
            ranges = [range(len(game.actions[i])) for i in coalition]
            for joint in itertools.product(*ranges):
                after = utilities_under_joint_deviation(
                    game, profile, coalition, joint)
                improved = [after[i] > base[i] + eps for i in coalition]
                failed = any(improved) if semantics is ResilienceSemantics.STRONG \
                    else all(improved)
                if failed:
                    members = tuple(game.players[i] for i in coalition)
                    deviation = {
                        game.players[i]: game.actions[i][a]
                        for i, a in zip(coalition, joint)
                    }
                    gains = {
                        game.players[i]: {
                            "utility_before": base[i],
                            "utility_after": after[i],
                        }
                        for i in coalition
                    }
                    return Verdict(False, Witness(
                        kind="coalition-deviation",
                        description=(
                            f"coalition {{{', '.join(members)}}} profits from "
                            f"a joint deviation"),
                        data={
                            "coalition": members,
                            "deviation": deviation,
                            "members": gains,
                            "semantics": semantics.value,
                        }))
    return Verdict(True)


def check_immunity(game: NormalFormGame, profile: MixedProfile, t,
                   epsilon=0, work_bound=DEFAULT_WORK_BOUND) -> Verdict:
    """No group of <= t deviators can push any outsider below their
    profile utility (minus epsilon)."""
    eps = _check_epsilon(epsilon)
    _check_profile_shape(game, profile)
    n = game.n_players
    if not isinstance(t, int) or isinstance(t, bool) or t < 0 or t >= n:
        raise InputError(f"t out of range: need 0 <= t < {n}, got {t!r}")
    if t == 0:
        return Verdict(True)
    _guard_enumeration(game, t, work_bound)

    base = expected_utility(game, profile)
    for size in range(1, t + 1):
        for deviators in itertools.combinations(range(n), size):
            outsiders = [i for i in range(n) if i not in deviators]
            ranges = [range(len(game.actions[i])) for i in deviators]
            for joint in itertools.product(*ranges):
                after = utilities_under_joint_deviation(
                    game, profile, deviators, joint)
                for victim in outsiders:
                    if after[victim] < base[victim] - eps:
                        names = tuple(game.players[i] for i in deviators)
                        deviation = {
                            game.players[i]: game.actions[i][a]
                            for i, a in zip(deviators, joint)
                        }
                        harmed = game.players[victim]
                        return Verdict(False, Witness(
                            kind="harmed-by-deviators",
                            description=(
                                f"player {harmed} is harmed when "
                                f"{{{', '.join(names)}}} deviate"),
                            data={
                                "deviators": names,
                                "deviation": deviation,
                                "harmed": harmed,
                                "utility_before": base[victim],
                                "utility_after": after[victim],
                            }))
    return Verdict(True)


def check_robust(game: NormalFormGame, profile: MixedProfile,
                 query: RobustnessQuery,
                 work_bound=DEFAULT_WORK_BOUND) -> Verdict:
    """(k, t)-robustness: k-resilience and t-immunity together.

    k = 0 makes the resilience half vacuous.  The verdict carries both
    sub-verdicts; its witness is the first failing sub-check's witness.
    """
    n = game.n_players
    if query.k > n:
        raise InputError(f"k out of range: need k <= {n}, got {query.k}")
    if query.k == 0:
        resilience = Verdict(True)
    else:
        resilience = check_resilience(
            game, profile, query.k, query.semantics, query.epsilon, work_bound)
    immunity = check_immunity(game, profile, query.t, query.epsilon, work_bound)
    witness = None
    if not resilience.holds:
        witness = resilience.witness
    elif not immunity.holds:
        witness = immunity.witness
    return Verdict(
        resilience.holds and immunity.holds,
        witness=witness,
        sub_verdicts={"resilience": resilience, "immunity": immunity})


def enumerate_pure_robust(game: NormalFormGame, query: RobustnessQuery,
                          work_bound=DEFAULT_WORK_BOUND):
    """All pure profiles passing check_robust, in lexicographic action order.

    Returns a list of action-name tuples."""
    total = 1
    for acts in game.actions:
        total *= len(acts)
    if total > work_bound:
        raise WorkBoundExceeded(
            f"{total} pure profiles exceed the bound {work_bound}",
            required=total, bound=work_bound)
    found = []
    for pure in game.pure_profiles():
        profile = MixedProfile.pure(game, pure)
        if check_robust(game, profile, query, work_bound).holds:
            found.append(game.profile_names(pure))
    return found


def best_member_utilities(game, profile, coalition):
    """For each coalition member, the best utility over all joint pure
    deviations of the coalition.  Test-facing extremum helper."""
    indices = tuple(sorted(game.player_index(p) if isinstance(p, str) else p
                           for p in coalition))
    ranges = [range(len(game.actions[i])) for i in indices]
    best = {}
    for joint in itertools.product(*ranges):
        after = utilities_under_joint_deviation(game, profile, indices, joint)
        for i in indices:
            if i not in best or after[i] > best[i]:
                best[i] = after[i]
    return {game.players[i]: v for i, v in best.items()}


def worst_outsider_utilities(game, profile, deviators):
    """For each outsider, the worst utility over all joint pure deviations
    of the deviator set.  Test-facing extremum helper."""
    indices = tuple(sorted(game.player_index(p) if isinstance(p, str) else p
                           for p in deviators))
    outsiders = [i for i in range(game.n_players) if i not in indices]
    ranges = [range(len(game.actions[i])) for i in indices]
    worst = {}
    for joint in itertools.product(*ranges):
        after = utilities_under_joint_deviation(game, profile, indices, joint)
        for i in outsiders:
            if i not in worst or after[i] < worst[i]:
                worst[i] = after[i]
    return {game.players[i]: v for i, v in worst.items()}
