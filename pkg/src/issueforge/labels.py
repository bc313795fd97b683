"""Issue-label normalization and intent assignment.

Raw label strings are reduced to a canonical lowercase stemmed surface form
("Type: Enhancement" -> "type enhanc"), then mapped to intent classes through
a curated lexicon. Negated phrases collapse to a single "not" token so that
variants like "can't reproduce" and "could not reproduce" unify.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .ingestion import Corpus
from .stemmer import stem
from .textprep import WordLists


class IntentClass(str, Enum):
    BUG_REPORT = "bug"
    FEATURE_REQUEST = "feature"
    OTHER = "other"


class LexiconKeyNotNormalized(Exception):
    pass


@dataclass(frozen=True)
class NormalizedLabel:
    surface: str
    originals: frozenset[str]
    frequency: int


@dataclass(frozen=True)
class IntentLexicon:
    entries: dict[str, IntentClass]
    provenance: str


_NON_LETTER = re.compile(r"[^a-z ]+")
_APOSTROPHES = re.compile(r"['’]")


def normalize_label(raw: str, lists: WordLists) -> str:
    """Normalize one raw label to its surface form; may return "" (caller discards)."""
    text = raw.lower()
    text = _APOSTROPHES.sub("", text)
    text = text.encode("ascii", errors="ignore").decode("ascii")
    text = _NON_LETTER.sub(" ", text)
    tokens = [tok for tok in text.split() if len(tok) > 1]
    tokens = [stem(tok) for tok in tokens]
    tokens = ["not" if tok in lists.negative_modifiers else tok for tok in tokens]
    tokens = _collapse_negations(tokens, lists.negative_modifiers)
    return " ".join(tokens)


def _collapse_negations(tokens: list[str], modifiers: frozenset[str]) -> list[str]:
    """Fold "<aux> not" pairs whose contracted form is a known modifier
    (could+not ~ couldnt), and runs of "not", into a single "not"."""
    out: list[str] = []
    for tok in tokens:
        if tok == "not" and out:
            prev = out[-1]
            if prev == "not":
                continue
            if prev + "n" in modifiers or prev + "nt" in modifiers or prev + "not" in modifiers:
                out[-1] = "not"
                continue
        out.append(tok)
    return out


def build_label_table(corpus: Corpus, lists: WordLists) -> list[NormalizedLabel]:
    """Group label originals by surface form; frequency counts distinct issues."""
    originals: dict[str, set[str]] = {}
    issue_sets: dict[str, set[str]] = {}
    for issue in corpus.issues:
        for raw in issue.label_names:
            surface = normalize_label(raw, lists)
            if not surface:
                continue
            originals.setdefault(surface, set()).add(raw)
            issue_sets.setdefault(surface, set()).add(issue.issue_id)
    table = [
        NormalizedLabel(surface=surface, originals=frozenset(originals[surface]), frequency=len(ids))
        for surface, ids in issue_sets.items()
    ]
    table.sort(key=lambda entry: (-entry.frequency, entry.surface))
    return table


def load_lexicon(path: Path | str, lists: WordLists) -> IntentLexicon:
    """Read a "surface<TAB>class" lexicon file and validate every key's form."""
    entries: dict[str, IntentClass] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, _, class_name = line.partition("\t")
        surface = surface.strip()
        try:
            intent = IntentClass(class_name.strip())
        except ValueError:
            raise ValueError(f"{path}:{lineno}: unknown intent class {class_name.strip()!r}")
        if surface in entries and entries[surface] is not intent:
            raise ValueError(f"{path}:{lineno}: surface {surface!r} mapped to more than one class")
        entries[surface] = intent
    lexicon = IntentLexicon(entries=entries, provenance=str(path))
    validate_lexicon(lexicon, lists)
    return lexicon


def validate_lexicon(lexicon: IntentLexicon, lists: WordLists) -> None:
    for surface in lexicon.entries:
        if normalize_label(surface, lists) != surface:
            raise LexiconKeyNotNormalized(
                f"lexicon key {surface!r} is not in normalized surface form "
                f"(normalizes to {normalize_label(surface, lists)!r})"
            )


def assign_intents(
    corpus: Corpus,
    lexicon: IntentLexicon,
    lists: WordLists,
    min_label_frequency: int = 11,
) -> dict[str, frozenset[IntentClass]]:
    """Map issue_id -> intent classes. Issues matching no lexicon entry (or only
    entries rarer than ``min_label_frequency``) are unrelated and omitted."""
    validate_lexicon(lexicon, lists)
    frequency = {entry.surface: entry.frequency for entry in build_label_table(corpus, lists)}
    assigned: dict[str, frozenset[IntentClass]] = {}
    for issue in corpus.issues:
        intents = set()
        for raw in issue.label_names:
            surface = normalize_label(raw, lists)
            if not surface or surface not in lexicon.entries:
                continue
            if frequency.get(surface, 0) < min_label_frequency:
                continue
            intents.add(lexicon.entries[surface])
        if intents:
            assigned[issue.issue_id] = frozenset(intents)
    return assigned
