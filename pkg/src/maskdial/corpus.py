"""Corpus generation, the dialog text format, and split handling.

File format (UTF-8): one line per turn,
``<index> <user utterance>\\t<system alt 1>|<system alt 2>|...`` with the
gold utterance first; KB-result lines ``<index> <entity> r_<relation>
<value>`` carry no tab; a blank line terminates each dialog; indices
restart at 1 per dialog.  ``parse_corpus(emit_corpus(x)) == x`` and
re-emission is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dialogs import AnnotatedDialog, FactLine, Turn, sample_goal, simulate_dialog
from .errors import ConfigError, FormatError
from .kb import KB, KBConfig, KBFact, RELATIONS, generate_kb, oov_config
from .patterns import Patterns
from .rng import stream

SPLITS = ("train", "val", "test", "test_oov")


@dataclass(frozen=True)
class CorpusSpec:
    kb: KBConfig = KBConfig()
    mode: str = "permuted"
    sizes: dict | None = None  # split -> dialog count; defaults to 11000 each
    seed: int = 0
    update_probability: float = 0.5

    def split_sizes(self) -> dict[str, int]:
        sizes = dict(self.sizes or {})
        out = {}
        for split in SPLITS:
            out[split] = int(sizes.pop(split, 11000))
            if out[split] < 1:
                raise ConfigError(f"split size for {split} must be >= 1")
        if sizes:
            raise ConfigError(f"unknown split names: {sorted(sizes)}")
        return out


@dataclass(frozen=True)
class CorpusBundle:
    spec: CorpusSpec
    splits: dict  # split name -> list[AnnotatedDialog]
    kb: KB
    kb_oov: KB


def generate_corpus(spec: CorpusSpec, patterns: Patterns | None = None) -> CorpusBundle:
    """Generate all four splits; a pure function of (spec, patterns)."""
    patterns = patterns or Patterns.load()
    if spec.mode not in ("original", "permuted"):
        raise ConfigError(f"unknown mode {spec.mode!r}")
    base_cfg = replace(spec.kb, allow_rating_ties=(spec.mode == "permuted"), oov_mode=False)
    kb = generate_kb(base_cfg, spec.seed)
    kb_oov = generate_kb(oov_config(base_cfg), spec.seed)
    sizes = spec.split_sizes()
    splits = {}
    for split, n in sizes.items():
        source = kb_oov if split == "test_oov" else kb
        dialogs = []
        for i in range(n):
            rng = stream(spec.seed, "dialog", split, i)
            goal = sample_goal(source, rng, spec.update_probability)
            dialogs.append(simulate_dialog(goal, source, spec.mode, rng, patterns))
        splits[split] = dialogs
    return CorpusBundle(spec=spec, splits=splits, kb=kb, kb_oov=kb_oov)


def sample_subset(dialogs: list, n: int = 1000, seed: int = 599) -> list:
    """Uniform, order-stable sample without replacement (deterministic)."""
    if n > len(dialogs):
        raise ConfigError(f"subset size {n} exceeds corpus size {len(dialogs)}")
    rng = stream(seed, "subsample")
    picked = sorted(rng.choice(len(dialogs), size=n, replace=False).tolist())
    return [dialogs[i] for i in picked]


# ---------------------------------------------------------------------------
# Text format


def emit_corpus(dialogs: list[AnnotatedDialog]) -> str:
    chunks = []
    for dialog in dialogs:
        for line in dialog.lines:
            if isinstance(line, Turn):
                chunks.append(f"{line.index} {line.user}\t" + "|".join(line.alternatives))
            else:
                fact = line.fact
                chunks.append(f"{line.index} {fact.entity} r_{fact.relation} {fact.value}")
        chunks.append("")
    return "\n".join(chunks) + "\n" if chunks else ""


def emit_corpus_file(dialogs: list[AnnotatedDialog], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_corpus(dialogs))


def parse_corpus(text: str, path: str | None = None) -> list[AnnotatedDialog]:
    dialogs: list[AnnotatedDialog] = []
    lines: list[object] = []

    def flush():
        nonlocal lines
        if lines:
            dialogs.append(AnnotatedDialog(lines=tuple(lines)))
            lines = []

    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw == "":
            flush()
            continue
        head, _, rest = raw.partition(" ")
        try:
            index = int(head)
        except ValueError:
            raise FormatError("line must start with a turn index", path, lineno) from None
        if index != len(lines) + 1:
            raise FormatError(
                f"turn index {index} out of order (expected {len(lines) + 1})", path, lineno
            )
        if "\t" in rest:
            user, _, system = rest.partition("\t")
            alternatives = tuple(system.split("|"))
            if any(not alt for alt in alternatives):
                raise FormatError("empty system alternative", path, lineno)
            lines.append(Turn(index, user, alternatives))
        else:
            parts = rest.split(" ")
            if len(parts) != 3 or not parts[1].startswith("r_"):
                raise FormatError(
                    "KB-result line must be '<entity> r_<relation> <value>'", path, lineno
                )
            relation = parts[1][2:]
            if relation not in RELATIONS:
                raise FormatError(f"unknown relation {parts[1]!r}", path, lineno)
            lines.append(FactLine(index, KBFact(parts[0], relation, parts[2])))
    flush()
    return dialogs


def parse_dialog_file(path) -> list[AnnotatedDialog]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read(), str(path))


def collect_candidates(corpora: list[list[AnnotatedDialog]]) -> list[str]:
    """Every system utterance (all alternatives) across the given corpora, sorted."""
    seen = set()
    for dialogs in corpora:
        for dialog in dialogs:
            for turn in dialog.turns:
                seen.update(turn.alternatives)
    return sorted(seen)


def write_candidates(utterances: list[str], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(utterances) + "\n")


def read_candidates(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        out = [line.rstrip("\n") for line in fh]
    return [u for u in out if u]
