"""Games where players choose machines and complexity enters the utility.

Two modes share one checking interface:

* one-shot: each player picks a machine that maps their type to an action
  distribution and carries a declared complexity per type; utility is the
  underlying Bayesian payoff minus the player's own complexity charge.
* repeated: each player picks a finite automaton for a discounted repeated
  stage game; utility is the exact discounted payoff minus memory_cost
  times the automaton's state count (for players that are charged).

Complexity is always declared data, never measured.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .errors import InputError, WorkBoundExceeded
from .games import DEFAULT_ENTRY_BOUND, BayesianGame, NormalFormGame
from .rationals import as_fraction
from .repeated import (DEFAULT_SPACE, RepeatedGameAutomaton, RepeatedGameSpec,
                       default_stage_game, library_space, run_automata)
from .verdicts import Verdict, Witness

DEFAULT_WORK_BOUND = 10_000_000

ZERO = Fraction(0)


class OneShotMachine:
    """A declared strategy: type -> action distribution, plus a complexity
    charge per type.

    kind is "deterministic" or "randomized"; deterministic machines must
    put probability 1 on a single action for every type.
    """

    def __init__(self, machine_id, kind, act, complexity):
        if not isinstance(machine_id, str) or not machine_id:
            raise InputError("machine id must be a nonempty string")
        if kind not in ("deterministic", "randomized"):
            raise InputError(
                f"machine {machine_id}: kind must be deterministic or randomized")
        self.id = machine_id
        self.kind = kind
        fixed_act = {}
        for t, dist in act.items():
            fixed = {
                a: as_fraction(q, f"machine {machine_id}, type {t}, action {a}")
                for a, q in dist.items()
            }
            if any(q < 0 for q in fixed.values()) or sum(fixed.values()) != 1:
                raise InputError(
                    f"machine {machine_id}: action weights for type {t!r} "
                    f"must be nonnegative and sum to 1")
            if kind == "deterministic" and any(
                    q not in (0, 1) for q in fixed.values()):
                raise InputError(
                    f"machine {machine_id}: deterministic machines need a "
                    f"degenerate distribution for type {t!r}")
            fixed_act[t] = fixed
        self.act = fixed_act
        fixed_cost = {}
        for t, c in complexity.items():
            c = as_fraction(c, f"machine {machine_id}, complexity of type {t}")
            if c < 0:
                raise InputError(
                    f"machine {machine_id}: negative complexity for type {t!r}")
            fixed_cost[t] = c
        self.complexity = fixed_cost
        if set(self.act) != set(self.complexity):
            raise InputError(
                f"machine {machine_id}: act and complexity must cover the "
                f"same types")


def machine_action(machine: OneShotMachine, input_type):
    """The machine's action distribution on one input type."""
    if input_type not in machine.act:
        raise InputError(
            f"machine {machine.id}: no action declared for input {input_type!r}")
    return dict(machine.act[input_type])


class ComputationalGame:
    """A machine-choice game in one of the two supported modes."""

    def __init__(self, mode, spaces, underlying=None, repeated_spec=None,
                 charged=None):
        if mode not in ("one-shot", "repeated"):
            raise InputError("mode must be one-shot or repeated")
        self.mode = mode
        self.spaces = tuple(tuple(space) for space in spaces)
        for i, space in enumerate(self.spaces):
            if not space:
                raise InputError(f"player index {i}: empty machine space")
            ids = [m.id for m in space]
            if len(set(ids)) != len(ids):
                raise InputError(
                    f"player index {i}: duplicate machine ids in space")
        if mode == "one-shot":
            if not isinstance(underlying, BayesianGame):
                raise InputError("one-shot mode needs an underlying BayesianGame")
            if len(self.spaces) != underlying.n_players:
                raise InputError("one machine space per player required")
            for i, space in enumerate(self.spaces):
                for machine in space:
                    if not isinstance(machine, OneShotMachine):
                        raise InputError(
                            "one-shot spaces must contain OneShotMachine values")
                    missing = [
                        t for t in underlying.types[i] if t not in machine.act
                    ]
                    if missing:
                        raise InputError(
                            f"machine {machine.id}: no action for type "
                            f"{missing[0]!r} of player {underlying.players[i]}")
                    for t in underlying.types[i]:
                        for a in machine.act[t]:
                            if a not in underlying.actions[i]:
                                raise InputError(
                                    f"machine {machine.id}: action {a!r} not "
                                    f"in the underlying game")
            self.underlying = underlying
            self.repeated_spec = None
            self.charged = tuple(True for _ in self.spaces)
        else:
            if not isinstance(repeated_spec, RepeatedGameSpec):
                raise InputError("repeated mode needs a RepeatedGameSpec")
            if len(self.spaces) != 2:
                raise InputError("repeated mode is 2-player")
            for space in self.spaces:
                for machine in space:
                    if not isinstance(machine, RepeatedGameAutomaton):
                        raise InputError(
                            "repeated spaces must contain automata")
            self.underlying = None
            self.repeated_spec = repeated_spec
            if charged is None:
                charged = (True, True)
            if len(charged) != 2 or any(not isinstance(c, bool) for c in charged):
                raise InputError("charged must be a pair of booleans")
            self.charged = tuple(charged)

    @property
    def n_players(self):
        return len(self.spaces)

    @property
    def players(self):
        if self.mode == "one-shot":
            return self.underlying.players
        return self.repeated_spec.stage.players

    def machine(self, player_index, machine_id):
        for m in self.spaces[player_index]:
            if m.id == machine_id:
                return m
        raise InputError(
            f"player {self.players[player_index]}: no machine {machine_id!r} "
            f"in the declared space")

    def profile(self, machine_ids: Sequence[str]):
        if len(machine_ids) != self.n_players:
            raise InputError("expected one machine id per player")
        return tuple(
            self.machine(i, mid) for i, mid in enumerate(machine_ids))


def comp_expected_utility(game: ComputationalGame, machine_ids):
    """Exact expected utility vector of a machine profile."""
    machines = game.profile(machine_ids)
    if game.mode == "repeated":
        spec = game.repeated_spec
        payoff = run_automata(spec, machines[0], machines[1])
        return tuple(
            payoff[i] - (spec.memory_cost * machines[i].n_states
                         if game.charged[i] else ZERO)
            for i in range(2))

    under = game.underlying
    n = under.n_players
    totals = [ZERO] * n
    for tprofile, p in under.prior.items():
        supports = []
        for i, machine in enumerate(machines):
            dist = machine.act[under.types[i][tprofile[i]]]
            supports.append([
                (under.actions[i].index(a), q) for a, q in dist.items() if q != 0
            ])
        costs = [
            machines[i].complexity[under.types[i][tprofile[i]]] for i in range(n)
        ]
        for combo in itertools.product(*supports):
            prob = p
            for _, q in combo:
                prob *= q
            vec = under.utilities[(tprofile, tuple(a for a, _ in combo))]
            for i in range(n):
                totals[i] += prob * (vec[i] - costs[i])
    return tuple(totals)


def is_machine_nash(game: ComputationalGame, machine_ids, epsilon=0) -> Verdict:
    """No player gains more than epsilon by switching to another machine in
    their declared space."""
    eps = as_fraction(epsilon, "epsilon")
    if eps < 0:
        raise InputError("epsilon must be nonnegative")
    ids = tuple(machine_ids)
    base = comp_expected_utility(game, ids)
    for i in range(game.n_players):
        for machine in game.spaces[i]:
            if machine.id == ids[i]:
                continue
            trial = ids[:i] + (machine.id,) + ids[i + 1:]
            value = comp_expected_utility(game, trial)[i]
            if value > base[i] + eps:
                player = game.players[i]
                return Verdict(False, Witness(
                    kind="machine-deviation",
                    description=(
                        f"player {player} gains by switching from "
                        f"{ids[i]} to {machine.id}"),
                    data={
                        "player": player,
                        "machine": ids[i],
                        "better_machine": machine.id,
                        "utility_before": base[i],
                        "utility_after": value,
                        "gain": value - base[i],
                    }))
    return Verdict(True)


def exhaustive_machine_equilibria(game: ComputationalGame, epsilon=0,
                                  work_bound=DEFAULT_WORK_BOUND):
    """All machine profiles passing is_machine_nash, in space order."""
    total = 1
    for space in game.spaces:
        total *= len(space)
    if total > work_bound:
        raise WorkBoundExceeded(
            f"{total} machine profiles exceed the bound {work_bound}",
            required=total, bound=work_bound)
    found = []
    for combo in itertools.product(*game.spaces):
        ids = tuple(m.id for m in combo)
        if is_machine_nash(game, ids, epsilon).holds:
            found.append(ids)
    return found


def induced_machine_game(game: ComputationalGame,
                         work_bound=DEFAULT_WORK_BOUND) -> NormalFormGame:
    """The strategic form over machine choices; payoffs are the exact
    machine-profile utilities (complexity charges included)."""
    total = 1
    for space in game.spaces:
        total *= len(space)
    if total > work_bound:
        raise WorkBoundExceeded(
            f"{total} machine profiles exceed the bound {work_bound}",
            required=total, bound=work_bound)
    actions = tuple(tuple(m.id for m in space) for space in game.spaces)
    payoffs = {}
    for key in itertools.product(*(range(len(a)) for a in actions)):
        ids = tuple(actions[i][a] for i, a in enumerate(key))
        payoffs[key] = comp_expected_utility(game, ids)
    return NormalFormGame(game.players, actions, payoffs)


def zeroed_complexity(game: ComputationalGame) -> ComputationalGame:
    """The same game with every complexity charge removed."""
    if game.mode == "repeated":
        spec = game.repeated_spec
        free = RepeatedGameSpec(spec.stage, spec.rounds, spec.discount, 0)
        return ComputationalGame(
            "repeated", game.spaces, repeated_spec=free, charged=game.charged)
    spaces = []
    for space in game.spaces:
        spaces.append(tuple(
            OneShotMachine(m.id, m.kind, m.act, {t: ZERO for t in m.complexity})
            for m in space))
    return ComputationalGame("one-shot", spaces, underlying=game.underlying)


# --- bundled one-shot machine games ---------------------------------------

def _roshambo_payoff(i, j):
    # +1 to the first player when i beats j under i == j + 1 (mod 3)
    if i == (j + 1) % 3:
        return 1
    if j == (i + 1) % 3:
        return -1
    return 0


def build_roshambo_game(deterministic_cost=1, randomized_cost=2):
    """Zero-sum cyclic guessing game where machine utility is the stage
    payoff minus the player's own machine cost.

    Space per player: three constant deterministic machines and the uniform
    randomized machine.  With costs (1, 2) no profile is an equilibrium:
    whoever runs the randomized machine can drop to a constant one and save
    the cost difference, and against a constant machine the winning
    constant reply gains outright.
    """
    det_cost = as_fraction(deterministic_cost, "deterministic_cost")
    rand_cost = as_fraction(randomized_cost, "randomized_cost")
    if det_cost < 0 or rand_cost < 0:
        raise InputError("machine costs must be nonnegative")
    players = ("p1", "p2")
    acts = ("0", "1", "2")
    utilities = {}
    for i in range(3):
        for j in range(3):
            v = _roshambo_payoff(i, j)
            utilities[((0, 0), (i, j))] = (Fraction(v), Fraction(-v))
    under = BayesianGame(
        players,
        types=(("-",), ("-",)),
        actions=(acts, acts),
        prior={(0, 0): Fraction(1)},
        utilities=utilities)
    space = []
    for value in range(3):
        space.append(OneShotMachine(
            f"const{value}", "deterministic",
            {"-": {str(value): Fraction(1)}}, {"-": det_cost}))
    space.append(OneShotMachine(
        "uniform", "randomized",
        {"-": {a: Fraction(1, 3) for a in acts}}, {"-": rand_cost}))
    space = tuple(space)
    return ComputationalGame("one-shot", (space, space), underlying=under)


def _is_prime(n):
    """Deterministic primality for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # exact witness set for the 64-bit range
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def build_primality_game(bit_length, cost_per_bit,
                         entry_bound=DEFAULT_ENTRY_BOUND):
    """One player is shown an integer with exactly bit_length bits (uniform
    prior) and may call it prime, call it composite, or play safe.

    A correct call pays 10, a wrong one -10, safe pays 1.  The space holds
    a perfect tester charged cost_per_bit * bit_length and a free machine
    that always plays safe.  Testing is the unique equilibrium while its
    cost stays below 9; above 9 playing safe is.
    """
    if not isinstance(bit_length, int) or bit_length < 1:
        raise InputError("bit_length must be a positive integer")
    if bit_length > 64:
        raise InputError("bit_length above 64 is unsupported")
    cost = as_fraction(cost_per_bit, "cost_per_bit") * bit_length
    if cost < 0:
        raise InputError("cost_per_bit must be nonnegative")
    lo = 1 if bit_length == 1 else 1 << (bit_length - 1)
    hi = 1 << bit_length
    count = hi - lo
    if count * 3 > entry_bound:
        raise WorkBoundExceeded(
            f"{count} types need {count * 3} utility entries, bound is "
            f"{entry_bound}",
            required=count * 3, bound=entry_bound)

    types = tuple(str(x) for x in range(lo, hi))
    actions = ("guess-prime", "guess-composite", "safe")
    prior = {(t,): Fraction(1, count) for t in range(count)}
    utilities = {}
    prime_flags = []
    for t, x in enumerate(range(lo, hi)):
        prime = _is_prime(x)
        prime_flags.append(prime)
        utilities[((t,), (0,))] = (Fraction(10) if prime else Fraction(-10),)
        utilities[((t,), (1,))] = (Fraction(-10) if prime else Fraction(10),)
        utilities[((t,), (2,))] = (Fraction(1),)
    under = BayesianGame(
        ("guesser",), (types,), (actions,), prior, utilities,
        entry_bound=entry_bound)

    tester = OneShotMachine(
        "test_and_guess", "deterministic",
        {
            types[t]: {("guess-prime" if prime_flags[t] else "guess-composite"):
                       Fraction(1)}
            for t in range(count)
        },
        {types[t]: cost for t in range(count)})
    safe = OneShotMachine(
        "always_safe", "deterministic",
        {types[t]: {"safe": Fraction(1)} for t in range(count)},
        {types[t]: ZERO for t in range(count)})
    return ComputationalGame(
        "one-shot", ((tester, safe),), underlying=under)


# --- repeated dilemma with memory charges ----------------------------------

def build_repeated_dilemma_game(rounds, discount, memory_cost,
                                space_names=DEFAULT_SPACE,
                                charged=(True, True), stage=None):
    """The discounted repeated dilemma as a machine-choice game over the
    named library automata (round-counting machines sized to `rounds`)."""
    if stage is None:
        stage = default_stage_game()
    spec = RepeatedGameSpec(stage, rounds, discount, memory_cost)
    space = library_space(space_names, rounds)
    return ComputationalGame(
        "repeated", (space, space), repeated_spec=spec, charged=tuple(charged))


class ThresholdReport:
    """Result of the round-count scan for the repeated dilemma.

    symmetric: least N in 1..n_max where (tit_for_tat, tit_for_tat) is an
    equilibrium with both players charged, or None.
    asymmetric: least N where (tit_for_tat, retaliating_defect_last) is an
    equilibrium when only the first player is charged for memory, or None.
    """

    def __init__(self, symmetric, asymmetric, n_max, discount, memory_cost):
        self.symmetric = symmetric
        self.asymmetric = asymmetric
        self.n_max = n_max
        self.discount = discount
        self.memory_cost = memory_cost


def tit_for_tat_threshold(discount, memory_cost, n_max,
                          space_names=DEFAULT_SPACE, stage=None,
                          epsilon=0) -> ThresholdReport:
    """Linear scan for the least round count at which mutual tit_for_tat
    survives its machine deviations.

    The last-round defection gain shrinks like 2 * discount^N while the
    round counter's memory surcharge grows linearly, so once the profile
    holds it holds for every longer game (given a positive memory cost).
    The asymmetric scan charges only the first player and pairs tit_for_tat
    with the retaliating last-round defector.
    """
    delta = as_fraction(discount, "discount")
    if not (Fraction(1, 2) < delta < 1):
        raise InputError("discount must lie strictly between 1/2 and 1")
    cost = as_fraction(memory_cost, "memory_cost")
    if cost < 0:
        raise InputError("memory_cost must be nonnegative")
    if not isinstance(n_max, int) or n_max < 1:
        raise InputError("n_max must be a positive integer")
    if "tit_for_tat" not in space_names:
        raise InputError("the machine space must include tit_for_tat")
    if stage is None:
        stage = default_stage_game()

    symmetric = None
    for rounds in range(1, n_max + 1):
        game = build_repeated_dilemma_game(
            rounds, delta, cost, space_names, (True, True), stage)
        if is_machine_nash(game, ("tit_for_tat", "tit_for_tat"), epsilon).holds:
            symmetric = rounds
            break

    asym_names = tuple(space_names)
    if "retaliating_defect_last" not in asym_names:
        asym_names += ("retaliating_defect_last",)
    asymmetric = None
    for rounds in range(1, n_max + 1):
        game = build_repeated_dilemma_game(
            rounds, delta, cost, asym_names, (True, False), stage)
        profile = ("tit_for_tat", "retaliating_defect_last")
        if is_machine_nash(game, profile, epsilon).holds:
            asymmetric = rounds
            break

    return ThresholdReport(symmetric, asymmetric, n_max, delta, cost)
