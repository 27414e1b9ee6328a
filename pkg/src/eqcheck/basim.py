"""Synchronous round-based agreement simulator with a trusted relay node.

n players p0..p{n-1} must settle on the general's 0/1 preference: after the
run, every nonfaulty player must have decided the same value, and when the
general is nonfaulty that value must be its preference.  A message sent in
round r is delivered at the start of round r+1, to exactly its addressee,
with no loss and no reordering; each sender sends at most one payload per
recipient per round.

Faulty players are modeled as corrupted protocol followers: the honest
protocol computes their outbox and a named adversary strategy transforms
it.  A faulty node whose honest outbox is empty therefore stays silent;
the library does not inject arbitrary traffic.

Everything is deterministic: identical scenarios yield identical
transcripts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .games import BayesianGame, NormalFormGame
from .verdicts import Verdict, Witness

MEDIATOR_ID = "mediator"

ZERO = Fraction(0)
ONE = Fraction(1)


class AdversaryStrategy:
    """A named outbox transform applied to a faulty player each round."""

    def __init__(self, name, transform):
        if not isinstance(name, str) or not name:
            raise InputError("adversary strategy: name must be a nonempty string")
        self.name = name
        self._transform = transform

    def corrupt(self, outbox, round_no, node, scenario):
        return self._transform(outbox, round_no, node, scenario)


def crash_adversary(crash_round=2):
    """Honest before the crash round, silent from it on."""
    if not isinstance(crash_round, int) or crash_round < 1:
        raise InputError("crash round must be a positive integer")

    def transform(outbox, round_no, node, scenario):
        return dict(outbox) if round_no < crash_round else {}

    return AdversaryStrategy("crash", transform)


def flip_adversary():
    """Negates every 0/1 payload it would honestly send."""

    def transform(outbox, round_no, node, scenario):
        return {
            rcpt: (1 - v if v in (0, 1) else v) for rcpt, v in outbox.items()
        }

    return AdversaryStrategy("flip", transform)


def equivocate_adversary():
    """Splits a uniform broadcast: the first half of the recipients (sorted
    by id, rounded down) keeps the payload, the rest get its negation.

    Outboxes that are not a two-plus-recipient uniform 0/1 broadcast are
    left unchanged, so a single message to the relay degenerates to honest
    behavior.
    """

    def transform(outbox, round_no, node, scenario):
        if len(outbox) < 2:
            return dict(outbox)
        values = set(outbox.values())
        if len(values) != 1:
            return dict(outbox)
        v = values.pop()
        if v not in (0, 1):
            return dict(outbox)
        recipients = sorted(outbox)
        keep = len(recipients) // 2
        return {
            rcpt: (v if i < keep else 1 - v)
            for i, rcpt in enumerate(recipients)
        }

    return AdversaryStrategy("equivocate", transform)


def silent_adversary():
    """Never sends anything."""

    def transform(outbox, round_no, node, scenario):
        return {}

    return AdversaryStrategy("silent", transform)


ADVERSARY_LIBRARY = {
    "crash": crash_adversary,
    "flip": flip_adversary,
    "equivocate": equivocate_adversary,
    "silent": silent_adversary,
}

DEFAULT_ADVERSARIES = ("crash", "flip", "equivocate", "silent")


class Scenario:
    """One run setup: player count, general, preference, and who is faulty.

    faults maps player ids to adversary strategies (library names or
    AdversaryStrategy values).  The trusted relay node is never faulty.
    """

    def __init__(self, n, preference, general=None, mediator_present=True,
                 faults=None):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError("n must be a positive integer")
        if preference not in (0, 1):
            raise InputError("preference must be 0 or 1")
        self.n = n
        self.players = tuple(f"p{i}" for i in range(n))
        self.preference = preference
        if general is None:
            general = self.players[0]
        if general not in self.players:
            raise InputError(f"unknown general {general!r}")
        self.general = general
        if not isinstance(mediator_present, bool):
            raise InputError("mediator_present must be a boolean")
        self.mediator_present = mediator_present
        fixed = {}
        for player, strategy in (faults or {}).items():
            if player not in self.players:
                raise InputError(f"faults: unknown player {player!r}")
            if isinstance(strategy, str):
                if strategy not in ADVERSARY_LIBRARY:
                    raise InputError(
                        f"faults[{player}]: unknown adversary {strategy!r}")
                strategy = ADVERSARY_LIBRARY[strategy]()
            if not isinstance(strategy, AdversaryStrategy):
                raise InputError(
                    f"faults[{player}]: expected a strategy name or "
                    f"AdversaryStrategy")
            fixed[player] = strategy
        self.faults = fixed

    @property
    def nonfaulty(self):
        return tuple(p for p in self.players if p not in self.faults)

    def fault_names(self):
        return {p: s.name for p, s in self.faults.items()}


class Transcript:
    """Replayable record of one run.

    rounds[r-1] holds the messages sent in round r as sorted
    (sender, recipient, payload) triples; decisions maps every player to
    its decided value or None; decided_round records when each decision
    landed (the round whose step emitted it).
    """

    def __init__(self, scenario, protocol_name, rounds, decisions,
                 decided_round, timed_out):
        self.scenario = scenario
        self.protocol_name = protocol_name
        self.rounds = rounds
        self.decisions = decisions
        self.decided_round = decided_round
        self.timed_out = timed_out
        self.utilities = {}


class MediatorRelayProtocol:
    """The general tells the trusted relay its preference in round 1; the
    relay forwards one value to every soldier in round 2 (default 0 when it
    heard nothing); soldiers decide on the forwarded value.

    The general decides its own preference at its first step.
    """

    name = "mediator"
    requires_mediator = True

    def initial_state(self, node, scenario):
        return None

    def step(self, node, round_no, state, inbox, scenario):
        if node == MEDIATOR_ID:
            if round_no == 2:
                heard = inbox.get(scenario.general)
                value = heard if heard in (0, 1) else 0
                soldiers = [
                    p for p in scenario.players if p != scenario.general
                ]
                return {p: value for p in soldiers}, state, None
            return {}, state, None
        if node == scenario.general:
            if round_no == 1:
                outbox = {MEDIATOR_ID: scenario.preference}
                return outbox, state, scenario.preference
            return {}, state, None
        relay = inbox.get(MEDIATOR_ID)
        if relay is not None:
            return {}, state, relay
        return {}, state, None


class EchoFirstProtocol:
    """Strawman with no relay: the general broadcasts its preference, and
    every other player adopts the first value it hears (lowest sender id
    first), echoes it to everyone once, and decides it.

    Sound against crashes and silence, but a general sending different
    values to different players splits the decisions.
    """

    name = "echo-first"
    requires_mediator = False

    def initial_state(self, node, scenario):
        return None

    def step(self, node, round_no, state, inbox, scenario):
        if node == scenario.general:
            if round_no == 1:
                others = [p for p in scenario.players if p != node]
                outbox = {p: scenario.preference for p in others}
                return outbox, scenario.preference, scenario.preference
            return {}, state, None
        if state is None and inbox:
            value = inbox[sorted(inbox)[0]]
            others = [p for p in scenario.players if p != node]
            return {p: value for p in others}, value, value
        return {}, state, None


PROTOCOLS = {
    MediatorRelayProtocol.name: MediatorRelayProtocol(),
    EchoFirstProtocol.name: EchoFirstProtocol(),
}


def indicator_utilities(transcript: Transcript):
    """1 for every player when agreement and validity hold among the
    nonfaulty players, else 0 for every player."""
    value = ONE if check_ba(transcript).holds else ZERO
    return {p: value for p in transcript.scenario.players}


def run(scenario: Scenario, protocol, round_cap=None,
        utility_rule=None) -> Transcript:
    """Simulate synchronous rounds until every nonfaulty player has decided
    or the round cap hits (reported as a timeout, not an error)."""
    if protocol.requires_mediator and not scenario.mediator_present:
        raise InputError(
            f"protocol {protocol.name} needs the trusted relay node")
    if round_cap is None:
        round_cap = 2 * scenario.n
    if not isinstance(round_cap, int) or round_cap < 1:
        raise InputError("round_cap must be a positive integer")

    nodes = list(scenario.players)
    if scenario.mediator_present:
        nodes.append(MEDIATOR_ID)
    states = {node: protocol.initial_state(node, scenario) for node in nodes}
    decisions = {p: None for p in scenario.players}
    decided_round = {}
    pending = {node: {} for node in nodes}
    log = []
    timed_out = False
    round_no = 0
    while True:
        if all(decisions[p] is not None for p in scenario.nonfaulty):
            break
        if round_no >= round_cap:
            timed_out = True
            break
        round_no += 1
        inboxes = pending
        pending = {node: {} for node in nodes}
        sent = []
        for node in nodes:
            outbox, states[node], decision = protocol.step(
                node, round_no, states[node], inboxes[node], scenario)
            outbox = dict(outbox)
            if node in scenario.faults:
                outbox = scenario.faults[node].corrupt(
                    outbox, round_no, node, scenario)
            for recipient in sorted(outbox):
                if recipient not in pending:
                    raise InputError(
                        f"protocol {protocol.name}: message to unknown node "
                        f"{recipient!r}")
                pending[recipient][node] = outbox[recipient]
                sent.append((node, recipient, outbox[recipient]))
            if (decision is not None and node in decisions
                    and decisions[node] is None):
                decisions[node] = decision
                decided_round[node] = round_no
        sent.sort()
        log.append(tuple(sent))

    transcript = Transcript(scenario, protocol.name, tuple(log), decisions,
                            decided_round, timed_out)
    rule = utility_rule or indicator_utilities
    transcript.utilities = dict(rule(transcript))
    return transcript


def check_ba(transcript: Transcript, scenario: Optional[Scenario] = None) -> Verdict:
    """Agreement and validity among the nonfaulty players.

    Fails as incomplete when some nonfaulty player never decided; fails
    with a disagreement witness when two nonfaulty decisions differ; fails
    validity when a nonfaulty general's preference was not adopted.
    """
    if scenario is None:
        scenario = transcript.scenario
    nonfaulty = [p for p in scenario.players if p not in scenario.faults]
    if not nonfaulty:
        # both conditions quantify over nonfaulty players only
        return Verdict(True)
    undecided = [p for p in nonfaulty if transcript.decisions.get(p) is None]
    if undecided:
        return Verdict(False, Witness(
            kind="undecided",
            description=f"nonfaulty players never decided: "
                        f"{', '.join(undecided)}",
            data={"players": undecided, "timed_out": transcript.timed_out},
        ), incomplete=True)
    first = nonfaulty[0]
    for p in nonfaulty[1:]:
        if transcript.decisions[p] != transcript.decisions[first]:
            return Verdict(False, Witness(
                kind="disagreement",
                description=(
                    f"{first} decided {transcript.decisions[first]} but "
                    f"{p} decided {transcript.decisions[p]}"),
                data={
                    "player_a": first,
                    "value_a": transcript.decisions[first],
                    "player_b": p,
                    "value_b": transcript.decisions[p],
                }))
    if scenario.general not in scenario.faults:
        agreed = transcript.decisions[first]
        if agreed != scenario.preference:
            return Verdict(False, Witness(
                kind="invalid-decision",
                description=(
                    f"the general is nonfaulty with preference "
                    f"{scenario.preference} but the decision is {agreed}"),
                data={
                    "general": scenario.general,
                    "preference": scenario.preference,
                    "decision": agreed,
                }))
    return Verdict(True)


def _fault_assignments(players, t, adversaries):
    yield {}
    for size in range(1, t + 1):
        for members in itertools.combinations(players, size):
            for names in itertools.product(adversaries, repeat=size):
                yield dict(zip(members, names))


class SweepReport:
    """Every scenario of a sweep with its transcript and verdict."""

    def __init__(self, entries):
        self.entries = tuple(entries)

    @property
    def total(self):
        return len(self.entries)

    def failures(self):
        return [e for e in self.entries if not e[2].holds]

    @property
    def all_hold(self):
        return all(verdict.holds for _, _, verdict in self.entries)


def sweep(n, t, protocol, adversaries=DEFAULT_ADVERSARIES,
          preferences=(0, 1), round_cap=None,
          utility_rule=None) -> SweepReport:
    """Run every (preference, fault set of size <= t, adversary assignment)
    combination, fault-free first within each preference."""
    if not isinstance(t, int) or isinstance(t, bool) or t < 0:
        raise InputError("t must be a nonnegative integer")
    if not isinstance(n, int) or isinstance(n, bool) or t >= n:
        raise InputError("need n > t (some player must stay honest)")
    for name in adversaries:
        if name not in ADVERSARY_LIBRARY:
            raise InputError(f"unknown adversary {name!r}")
    players = tuple(f"p{i}" for i in range(n))
    entries = []
    for preference in preferences:
        for faults in _fault_assignments(players, t, adversaries):
            scenario = Scenario(
                n, preference, faults=faults,
                mediator_present=protocol.requires_mediator)
            transcript = run(scenario, protocol, round_cap, utility_rule)
            entries.append((scenario, transcript, check_ba(transcript)))
    return SweepReport(entries)


def empirical_immunity(n, t, protocol, adversaries=DEFAULT_ADVERSARIES,
                       preferences=(0, 1), round_cap=None,
                       utility_rule=None) -> Verdict:
    """No nonfaulty player's utility drops below its fault-free baseline
    anywhere in the sweep.

    This is the simulation analogue of tolerating t arbitrary deviators,
    restricted to the named adversary library.
    """
    baselines = {}
    for preference in preferences:
        scenario = Scenario(n, preference, faults={},
                            mediator_present=protocol.requires_mediator)
        transcript = run(scenario, protocol, round_cap, utility_rule)
        baselines[preference] = transcript.utilities
    report = sweep(n, t, protocol, adversaries, preferences, round_cap,
                   utility_rule)
    for scenario, transcript, _ in report.entries:
        if not scenario.faults:
            continue
        base = baselines[scenario.preference]
        for player in scenario.nonfaulty:
            if transcript.utilities[player] < base[player]:
                names = scenario.fault_names()
                described = ", ".join(
                    f"{p} playing {s}" for p, s in sorted(names.items()))
                return Verdict(False, Witness(
                    kind="harmed-player",
                    description=(
                        f"player {player} drops from {base[player]} to "
                        f"{transcript.utilities[player]} under {described} "
                        f"(preference {scenario.preference})"),
                    data={
                        "player": player,
                        "utility_before": base[player],
                        "utility_after": transcript.utilities[player],
                        "preference": scenario.preference,
                        "faults": names,
                        "decisions": dict(transcript.decisions),
                        "timed_out": transcript.timed_out,
                    }))
    return Verdict(True)


def build_adversary_game(n, protocol, adversaries=DEFAULT_ADVERSARIES,
                         preference=0, round_cap=None,
                         utility_rule=None) -> NormalFormGame:
    """The one-shot game where each player either follows the protocol or
    plays a library adversary; payoffs come from simulating each profile.

    Immunity checks on this game agree with empirical_immunity restricted
    to the same library (the cross-check used at small n).
    """
    players = tuple(f"p{i}" for i in range(n))
    actions = tuple(("follow",) + tuple(adversaries) for _ in players)
    payoffs = {}
    for key in itertools.product(range(1 + len(adversaries)), repeat=n):
        faults = {
            players[i]: adversaries[a - 1] for i, a in enumerate(key) if a > 0
        }
        scenario = Scenario(n, preference, faults=faults,
                            mediator_present=protocol.requires_mediator)
        transcript = run(scenario, protocol, round_cap, utility_rule)
        payoffs[key] = tuple(transcript.utilities[p] for p in players)
    return NormalFormGame(players, actions, payoffs)


def build_preference_bayes_game(n, protocol,
                                adversaries=DEFAULT_ADVERSARIES,
                                round_cap=None,
                                utility_rule=None) -> BayesianGame:
    """The Bayesian version: the general's type is its preference (uniform
    over 0/1), every other player has one type, and actions are follow or
    a library adversary."""
    players = tuple(f"p{i}" for i in range(n))
    types = tuple(("0", "1") if p == players[0] else ("-",) for p in players)
    actions = tuple(("follow",) + tuple(adversaries) for _ in players)
    prior = {(t,) + (0,) * (n - 1): Fraction(1, 2) for t in range(2)}
    utilities = {}
    for tkey in prior:
        preference = int(types[0][tkey[0]])
        for akey in itertools.product(range(1 + len(adversaries)), repeat=n):
            faults = {
                players[i]: adversaries[a - 1]
                for i, a in enumerate(akey) if a > 0
            }
            scenario = Scenario(n, preference, faults=faults,
                                mediator_present=protocol.requires_mediator)
            transcript = run(scenario, protocol, round_cap, utility_rule)
            utilities[(tkey, akey)] = tuple(
                transcript.utilities[p] for p in players)
    return BayesianGame(players, types, actions, prior, utilities)
