"""Restaurant-reservation dialog simulation with answer-set annotation.

A dialog is a sequence of lines: utterance turns (user utterance + the set
of valid next system utterances, gold first) and KB-result fact lines.
``valid_actions`` enumerates exactly the system moves the simulator could
make from a given state; the recorded answer set of every system turn
equals that enumeration at the prefix state before the turn.

In ``original`` mode the system asks for missing slots in the fixed order
cuisine -> location -> people -> price and every answer set is a singleton.
In ``permuted`` mode the question order is free and restaurants may share a
rating, so several system utterances can be valid at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ContractError, GenerationError
from .kb import KB, KBFact, Restaurant
from .patterns import SLOTS, Patterns

MODES = ("original", "permuted")


@dataclass(frozen=True)
class Goal:
    cuisine: str
    location: str
    people: int
    price: str
    initially_given: frozenset[str] = frozenset()
    update: tuple[str, object] | None = None

    def value(self, slot: str):
        return getattr(self, slot)

    def validate(self, kb: KB) -> None:
        if self.cuisine not in kb.cuisines:
            raise GenerationError(f"unknown cuisine {self.cuisine!r}")
        if self.location not in kb.locations:
            raise GenerationError(f"unknown location {self.location!r}")
        if self.price not in kb.prices:
            raise GenerationError(f"unknown price {self.price!r}")
        if self.people not in kb.party_sizes:
            raise GenerationError(f"unknown party size {self.people!r}")
        if not self.initially_given <= set(SLOTS):
            raise GenerationError(f"bad initially_given {sorted(self.initially_given)}")
        if self.update is not None:
            slot, value = self.update
            if slot not in SLOTS:
                raise GenerationError(f"bad update slot {slot!r}")
            if value == self.value(slot):
                raise GenerationError("update must change the slot value")


@dataclass(frozen=True)
class Turn:
    """One utterance line: user side plus all valid system utterances, gold first."""

    index: int
    user: str
    alternatives: tuple[str, ...]

    def __post_init__(self):
        if not self.alternatives:
            raise ContractError("turn needs at least one system utterance")
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ContractError("answer set contains duplicates")

    @property
    def gold(self) -> str:
        return self.alternatives[0]

    @property
    def answer_set(self) -> frozenset[str]:
        return frozenset(self.alternatives)


@dataclass(frozen=True)
class FactLine:
    """One KB-result line injected into the dialog after an api_call."""

    index: int
    fact: KBFact


@dataclass(frozen=True)
class AnnotatedDialog:
    lines: tuple[object, ...]
    mode: str | None = field(default=None, compare=False)

    @property
    def turns(self) -> tuple[Turn, ...]:
        return tuple(l for l in self.lines if isinstance(l, Turn))

    @property
    def kb_results(self) -> tuple[KBFact, ...]:
        return tuple(l.fact for l in self.lines if isinstance(l, FactLine))


# ---------------------------------------------------------------------------
# State machine


@dataclass(frozen=True)
class Action:
    kind: str
    utterance: str
    slot: str | None = None
    restaurant: str | None = None


_STAGES = (
    "greet", "acknowledge", "collect", "api_call", "update_ack",
    "propose", "next_option", "reserve", "give_phone", "give_address",
    "anything_else", "closing", "done",
)


@dataclass(frozen=True)
class DialogState:
    mode: str
    stage: str
    missing: tuple[str, ...] = ()
    values: dict = field(default_factory=dict)
    results: tuple[Restaurant, ...] = ()
    proposed: tuple[str, ...] = ()
    accepted: str | None = None

    @classmethod
    def initial(cls, goal: Goal, mode: str) -> "DialogState":
        if mode not in MODES:
            raise GenerationError(f"unknown mode {mode!r}")
        missing = tuple(s for s in SLOTS if s not in goal.initially_given)
        values = {s: goal.value(s) for s in SLOTS}
        return cls(mode=mode, stage="greet", missing=missing, values=values)


def valid_actions(state: DialogState, kb: KB, patterns: Patterns) -> tuple[Action, ...]:
    """All system moves the simulator could make next, in a stable order."""
    stage = state.stage
    if stage == "greet":
        return (Action("greet", patterns.system["greet"]),)
    if stage == "acknowledge":
        return (Action("acknowledge", patterns.system["acknowledge"]),)
    if stage == "collect":
        if state.missing:
            slots = state.missing if state.mode == "permuted" else state.missing[:1]
            return tuple(Action("ask", patterns.ask(s), slot=s) for s in slots)
        return (Action("search", patterns.system["search"]),)
    if stage == "api_call":
        return (Action("api_call", patterns.api_call(state.values)),)
    if stage == "update_ack":
        return (Action("ask_updates", patterns.system["ask_updates"]),)
    if stage in ("propose", "next_option"):
        if stage == "next_option":
            return (Action("next_option", patterns.system["next_option"]),)
        remaining = [r for r in state.results if r.name not in state.proposed]
        if not remaining:
            raise ContractError("proposal stage with no remaining restaurants")
        top = max(r.rating for r in remaining)
        return tuple(
            Action("propose", patterns.propose(r.name), restaurant=r.name)
            for r in remaining
            if r.rating == top
        )
    if stage == "reserve":
        return (Action("reserve", patterns.system["reserve"]),)
    if stage in ("give_phone", "give_address"):
        info = stage.removeprefix("give_")
        match = [r for r in state.results if r.name == state.accepted]
        if not match:
            raise ContractError("info request before acceptance")
        return (Action(stage, patterns.give(info, getattr(match[0], info))),)
    if stage == "anything_else":
        return (Action("anything_else", patterns.system["anything_else"]),)
    if stage == "closing":
        return (Action("closing", patterns.system["closing"]),)
    raise ContractError(f"no valid system move from stage {stage!r}")


def enumerate_valid_next(state: DialogState, kb: KB, patterns: Patterns) -> frozenset[str]:
    """The exact set of system utterances valid as the next turn."""
    return frozenset(a.utterance for a in valid_actions(state, kb, patterns))


# ---------------------------------------------------------------------------
# Goal sampling and dialog simulation


def sample_goal(kb: KB, rng: np.random.Generator, update_probability: float = 0.5) -> Goal:
    """Uniform goal over KB vocabularies with 0..4 initially given slots."""
    if not kb.restaurants:
        raise GenerationError("empty KB")
    values = {
        "cuisine": str(rng.choice(kb.cuisines)),
        "location": str(rng.choice(kb.locations)),
        "people": int(rng.choice(np.asarray(kb.party_sizes))),
        "price": str(rng.choice(kb.prices)),
    }
    n_given = int(rng.integers(0, 5))
    given = frozenset(
        str(s) for s in rng.choice(np.asarray(SLOTS), size=n_given, replace=False)
    )
    update = None
    if rng.random() < update_probability:
        slot = str(rng.choice(np.asarray(SLOTS)))
        pool = {
            "cuisine": kb.cuisines,
            "location": kb.locations,
            "people": kb.party_sizes,
            "price": kb.prices,
        }[slot]
        options = [v for v in pool if v != values[slot]]
        if options:
            chosen = options[int(rng.integers(len(options)))]
            update = (slot, int(chosen) if slot == "people" else str(chosen))
    return Goal(
        cuisine=values["cuisine"],
        location=values["location"],
        people=values["people"],
        price=values["price"],
        initially_given=given,
        update=update,
    )


def _pick_gold(actions: tuple[Action, ...], rng: np.random.Generator) -> Action:
    return actions[int(rng.integers(len(actions)))]


def _ordered_alternatives(actions: tuple[Action, ...], gold: Action) -> tuple[str, ...]:
    rest = sorted({a.utterance for a in actions} - {gold.utterance})
    return (gold.utterance, *rest)


def simulate_dialog(
    goal: Goal,
    kb: KB,
    mode: str,
    rng: np.random.Generator,
    patterns: Patterns | None = None,
) -> AnnotatedDialog:
    """Run one full reservation dialog, annotating every system turn."""
    patterns = patterns or Patterns.load()
    goal.validate(kb)
    state = DialogState.initial(goal, mode)
    lines: list[object] = []

    def system_turn(user_text: str) -> Action:
        actions = valid_actions(state, kb, patterns)
        gold = _pick_gold(actions, rng)
        lines.append(Turn(len(lines) + 1, user_text, _ordered_alternatives(actions, gold)))
        return gold

    def advance(**changes) -> None:
        nonlocal state
        state = replace(state, **changes)

    # Greeting.
    system_turn(patterns.pick(rng, "greeting"))
    advance(stage="acknowledge")

    # Request with the initially given slots.
    given = {s: goal.value(s) for s in goal.initially_given}
    system_turn(patterns.request(rng, given))
    advance(stage="collect")

    # Slot collection; the first system move after the acknowledgement is
    # prompted by user silence.
    user_text = patterns.silence
    while state.missing:
        gold = system_turn(user_text)
        asked = gold.slot
        user_text = patterns.slot_answer(rng, asked, goal.value(asked))
        advance(missing=tuple(s for s in state.missing if s != asked))
    gold = system_turn(user_text)  # "search"
    advance(stage="api_call")
    system_turn(patterns.silence)

    # Optional revision of one slot, followed by an updated api_call.
    if goal.update is not None:
        slot, new_value = goal.update
        advance(stage="update_ack")
        system_turn(patterns.update(rng, slot, new_value))
        new_values = dict(state.values)
        new_values[slot] = new_value
        advance(stage="collect", values=new_values)
        system_turn(patterns.pick(rng, "no_more_updates"))
        advance(stage="api_call")
        system_turn(patterns.silence)

    # KB results for the final api_call.
    results = kb.lookup(state.values["cuisine"], state.values["location"], state.values["price"])
    if not results:
        raise GenerationError(
            f"no restaurants for cell {state.values['cuisine']}/"
            f"{state.values['location']}/{state.values['price']}"
        )
    for restaurant in results:
        for fact in restaurant.facts():
            lines.append(FactLine(len(lines) + 1, fact))
    advance(stage="propose", results=results)

    # Proposals in non-increasing rating order until acceptance.
    n_rejections = int(rng.integers(0, min(2, len(results) - 1) + 1))
    user_text = patterns.silence
    for _ in range(n_rejections):
        gold = system_turn(user_text)
        advance(stage="next_option", proposed=state.proposed + (gold.restaurant,))
        system_turn(patterns.pick(rng, "reject"))
        advance(stage="propose")
        user_text = patterns.silence
    gold = system_turn(user_text)
    advance(
        stage="reserve",
        proposed=state.proposed + (gold.restaurant,),
        accepted=gold.restaurant,
    )
    system_turn(patterns.pick(rng, "accept"))

    # Optional phone/address requests.
    wanted = [info for info in ("phone", "address") if rng.random() < 0.5]
    for info in wanted:
        advance(stage=f"give_{info}")
        system_turn(patterns.pick(rng, f"ask_{info}"))

    advance(stage="anything_else")
    system_turn(patterns.pick(rng, "thanks"))
    advance(stage="closing")
    system_turn(patterns.pick(rng, "bye"))
    advance(stage="done")

    return AnnotatedDialog(lines=tuple(lines), mode=mode)
