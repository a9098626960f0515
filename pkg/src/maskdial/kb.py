"""Knowledge base of restaurants and their properties.

Restaurants live in (cuisine, location, price) cells; each cell holds a
configurable number of restaurants occupying rating slots.  Names
deterministically encode the cell and rating.  An out-of-vocabulary twin
KB can be generated from held-out cuisine and location pools so that its
entity values (names, phones, addresses, cuisines, locations) are disjoint
from the base KB.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, FormatError
from .rng import stream

RELATIONS = ("cuisine", "location", "price", "rating", "phone", "address", "number")

# First half of each pool backs the standard KB, second half the OOV KB.
CUISINE_POOL = (
    "british", "cantonese", "french", "indian", "italian",
    "japanese", "korean", "spanish", "thai", "vietnamese",
    "chinese", "mexican", "greek", "turkish", "lebanese",
    "german", "russian", "moroccan", "ethiopian", "brazilian",
)
LOCATION_POOL = (
    "bombay", "beijing", "hanoi", "london", "madrid",
    "paris", "rome", "seoul", "tokyo", "bangkok",
    "berlin", "moscow", "dublin", "lisbon", "vienna",
    "athens", "cairo", "oslo", "prague", "warsaw",
)

_NUMBER_WORDS = {
    1: "one", 2: "two", 3: "three", 4: "four", 5: "five",
    6: "six", 7: "seven", 8: "eight", 9: "nine", 10: "ten",
}


def number_word(n: int) -> str:
    """Spell a party size the way it appears in utterances and KB facts."""
    try:
        return _NUMBER_WORDS[n]
    except KeyError:
        raise ConfigError(f"party size {n} has no word form (supported: 1..10)") from None


@dataclass(frozen=True)
class KBConfig:
    n_cuisines: int = 10
    n_locations: int = 10
    price_ranges: tuple[str, ...] = ("cheap", "moderate", "expensive")
    rating_min: int = 1
    rating_max: int = 8
    party_sizes: tuple[int, ...] = (2, 4, 6, 8)
    restaurants_per_cell: int = 3
    allow_rating_ties: bool = False
    tie_probability: float = 0.5
    oov_mode: bool = False
    seed: int = 0

    def validate(self) -> None:
        if self.n_cuisines < 1 or self.n_locations < 1:
            raise ConfigError("need at least one cuisine and one location")
        if not self.price_ranges:
            raise ConfigError("price_ranges must be nonempty")
        if self.rating_min > self.rating_max:
            raise ConfigError("empty rating interval")
        if not self.party_sizes or any(n < 1 for n in self.party_sizes):
            raise ConfigError("party sizes must be positive")
        if self.restaurants_per_cell < 1:
            raise ConfigError("restaurants_per_cell must be >= 1")
        n_ratings = self.rating_max - self.rating_min + 1
        if not self.allow_rating_ties and self.restaurants_per_cell > n_ratings:
            raise ConfigError(
                "more restaurants per cell than distinct ratings; "
                "enable allow_rating_ties or widen the rating interval"
            )
        if self.allow_rating_ties and self.restaurants_per_cell < 2:
            raise ConfigError("rating ties need at least 2 restaurants per cell")
        if not 0.0 <= self.tie_probability <= 1.0:
            raise ConfigError("tie_probability must lie in [0, 1]")
        for n in self.party_sizes:
            number_word(n)

    def cuisines(self) -> tuple[str, ...]:
        return _values(CUISINE_POOL, "cuisine", self.n_cuisines, self.oov_mode)

    def locations(self) -> tuple[str, ...]:
        return _values(LOCATION_POOL, "location", self.n_locations, self.oov_mode)


def _values(pool: tuple[str, ...], kind: str, n: int, oov: bool) -> tuple[str, ...]:
    half = len(pool) // 2
    base = pool[half:] if oov else pool[:half]
    if n <= len(base):
        return base[:n]
    # Overflow past the named pool: synthesize distinct tokens.
    suffix = "_oov" if oov else ""
    extra = tuple(f"{kind}_{i}{suffix}" for i in range(len(base), n))
    return base + extra


@dataclass(frozen=True)
class KBFact:
    entity: str
    relation: str
    value: str


@dataclass(frozen=True)
class Restaurant:
    name: str
    cuisine: str
    location: str
    price: str
    rating: int
    phone: str
    address: str
    number: str

    def facts(self) -> tuple[KBFact, ...]:
        return tuple(
            KBFact(self.name, rel, str(getattr(self, rel))) for rel in RELATIONS
        )


@dataclass
class KB:
    config: KBConfig
    restaurants: tuple[Restaurant, ...]
    _by_cell: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        for r in self.restaurants:
            self._by_cell.setdefault((r.cuisine, r.location, r.price), []).append(r)

    @property
    def cuisines(self) -> tuple[str, ...]:
        return self.config.cuisines()

    @property
    def locations(self) -> tuple[str, ...]:
        return self.config.locations()

    @property
    def prices(self) -> tuple[str, ...]:
        return tuple(self.config.price_ranges)

    @property
    def party_sizes(self) -> tuple[int, ...]:
        return tuple(self.config.party_sizes)

    def facts(self) -> tuple[KBFact, ...]:
        return tuple(f for r in self.restaurants for f in r.facts())

    def lookup(self, cuisine: str, location: str, price: str) -> tuple[Restaurant, ...]:
        """Restaurants in the (cuisine, location, price) cell, KB order."""
        return tuple(self._by_cell.get((cuisine, location, price), ()))


def generate_kb(config: KBConfig, seed: int | None = None) -> KB:
    """Build the restaurant KB deterministically from (config, seed)."""
    config.validate()
    rng = stream(config.seed if seed is None else seed, "kb", "oov" if config.oov_mode else "base")
    ratings_all = np.arange(config.rating_min, config.rating_max + 1)
    k = config.restaurants_per_cell
    restaurants: list[Restaurant] = []
    cells = itertools.product(config.cuisines(), config.locations(), config.price_ranges)
    for cuisine, location, price in cells:
        if config.allow_rating_ties:
            ratings = rng.choice(ratings_all, size=k, replace=True)
            ratings = np.sort(ratings)[::-1]
            if len(np.unique(ratings)) == k:
                # Guarantee a shared rating somewhere in the cell; copying an
                # adjacent value keeps the descending order intact.
                idx = int(rng.integers(1, k))
                ratings[idx] = ratings[idx - 1]
            if rng.random() < config.tie_probability:
                ratings[1] = ratings[0]
        else:
            ratings = rng.choice(ratings_all, size=k, replace=False)
            ratings = np.sort(ratings)[::-1]
        used: dict[str, int] = {}
        for rating in ratings.tolist():
            base = f"resto_{location}_{price}_{cuisine}_{rating}stars"
            used[base] = used.get(base, 0) + 1
            name = base if used[base] == 1 else f"{base}_{used[base]}"
            size = int(rng.choice(np.asarray(config.party_sizes)))
            restaurants.append(
                Restaurant(
                    name=name,
                    cuisine=cuisine,
                    location=location,
                    price=price,
                    rating=int(rating),
                    phone=f"{name}_phone",
                    address=f"{name}_address",
                    number=number_word(size),
                )
            )
    return KB(config=config, restaurants=tuple(restaurants))


def oov_config(config: KBConfig) -> KBConfig:
    """Twin configuration drawing values from the held-out pools."""
    return replace(config, oov_mode=True)


def emit_kb_file(kbs: list[KB] | tuple[KB, ...], path) -> None:
    """Write KB facts, one ``<entity> r_<relation> <value>`` triple per line."""
    lines = []
    for kb in kbs:
        for fact in kb.facts():
            lines.append(f"{fact.entity} r_{fact.relation} {fact.value}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_kb_file(path) -> tuple[KBFact, ...]:
    facts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) != 3 or not parts[1].startswith("r_"):
                raise FormatError("expected '<entity> r_<relation> <value>'", str(path), lineno)
            relation = parts[1][2:]
            if relation not in RELATIONS:
                raise FormatError(f"unknown relation {parts[1]!r}", str(path), lineno)
            facts.append(KBFact(parts[0], relation, parts[2]))
    return tuple(facts)
