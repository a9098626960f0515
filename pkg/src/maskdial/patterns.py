"""Fixed utterance pattern set.

Patterns live in a JSON data file so they can be swapped without touching
simulator logic.  User-side intents carry several surface variants picked
at random; system-side intents carry exactly one pattern each so that the
system's next utterance is fully determined by the dialog state (branching
comes only from slot-question order and rating ties, never from phrasing).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ConfigError
from .kb import number_word

SLOTS = ("cuisine", "location", "people", "price")


def _slot_values(slot: str, value) -> dict[str, str]:
    return {slot: number_word(value) if slot == "people" else str(value)}


@dataclass(frozen=True)
class Patterns:
    user: dict
    system: dict
    silence: str

    @classmethod
    def load(cls, path=None) -> "Patterns":
        if path is None:
            text = resources.files("maskdial.data").joinpath("patterns.json").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        raw = json.loads(text)
        pats = cls(user=raw["user"], system=raw["system"], silence=raw["silence"])
        pats._check()
        return pats

    def _check(self) -> None:
        required_system = {
            "greet", "acknowledge", "search", "api_call", "ask_updates", "propose",
            "next_option", "reserve", "give_phone", "give_address", "anything_else",
            "closing",
        } | {f"ask_{slot}" for slot in SLOTS}
        missing = required_system - set(self.system)
        if missing:
            raise ConfigError(f"pattern file lacks system intents: {sorted(missing)}")

    # -- system side (deterministic) --------------------------------------

    def ask(self, slot: str) -> str:
        return self.system[f"ask_{slot}"]

    def api_call(self, values: dict) -> str:
        return self.system["api_call"].format(
            cuisine=values["cuisine"],
            location=values["location"],
            people=number_word(values["people"]),
            price=values["price"],
        )

    def propose(self, restaurant: str) -> str:
        return self.system["propose"].format(restaurant=restaurant)

    def give(self, info: str, value: str) -> str:
        return self.system[f"give_{info}"].format(**{info: value})

    # -- user side (random surface variant) --------------------------------

    def pick(self, rng: np.random.Generator, intent: str, slot: str | None = None, **values) -> str:
        options = self.user[intent]
        if slot is not None:
            options = options[slot]
        template = options[int(rng.integers(len(options)))]
        return template.format(**values)

    def request(self, rng: np.random.Generator, given: dict) -> str:
        """Initial request mentioning the given slot values in canonical order."""
        parts = [self.pick(rng, "request_prefix")]
        for slot in SLOTS:
            if slot in given:
                parts.append(self.pick(rng, "request_slot", slot, **_slot_values(slot, given[slot])))
        return " ".join(parts)

    def slot_answer(self, rng: np.random.Generator, slot: str, value) -> str:
        return self.pick(rng, "slot_answer", slot, **_slot_values(slot, value))

    def update(self, rng: np.random.Generator, slot: str, value) -> str:
        return self.pick(rng, "update", slot, **_slot_values(slot, value))
