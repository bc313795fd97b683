"""Noise filtering, tokenization, and normalization of issue/review text.

The pipeline turns raw text into lowercase lemma tokens: noise constructs are
stripped (issue text only), negative modifiers collapse to "not", stopwords are
dropped except the intent-bearing modals, and remaining tokens are lemmatized
against a bundled lookup table with a stemmer fallback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .stemmer import stem


class Source(str, Enum):
    REVIEW = "review"
    ISSUE_TITLE = "issue_title"
    ISSUE_BODY = "issue_body"


@dataclass(frozen=True)
class ProcessedDocument:
    """A single unit of training data: one preprocessed text plus its labels."""

    doc_id: str
    source: Source
    tokens: tuple[str, ...]
    intents: frozenset = frozenset()
    app_id: str | None = None


# Modals kept despite being (near-)stopwords: they signal request/report intent.
RETAINED_MODALS = frozenset({"could", "would", "should"})
FUSED_HAVE_TO = "have-to"

MIN_DOC_TOKENS = 3


@dataclass(frozen=True)
class WordLists:
    negative_modifiers: frozenset[str]
    special_phrases: tuple[str, ...]
    stopwords: frozenset[str]
    lemmas: dict[str, str]


def _read_lines(path: Path) -> list[str]:
    return [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def default_data_dir() -> Path:
    return Path(str(resources.files("issueforge").joinpath("data")))


def load_wordlists(directory: Path | str | None = None) -> WordLists:
    """Load the bundled word lists, or the same-named files from a directory."""
    base = Path(directory) if directory is not None else default_data_dir()
    modifiers = _read_lines(base / "negative_modifiers.txt")
    if len(modifiers) != 44:
        raise ValueError(f"negative modifier list must have 44 entries, found {len(modifiers)}")
    phrases = tuple(_read_lines(base / "special_phrases.txt"))
    stop = set()
    for word in _read_lines(base / "stopwords.txt"):
        stop.add(word)
        stop.add(word.replace("'", ""))
    lemmas = _load_lemmas(base / "lemmas.txt")
    return WordLists(
        negative_modifiers=frozenset(modifiers),
        special_phrases=phrases,
        stopwords=frozenset(stop),
        lemmas=lemmas,
    )


def _load_lemmas(path: Path) -> dict[str, str]:
    raw: dict[str, str] = {}
    for line in _read_lines(path):
        form, _, lemma = line.partition("\t")
        raw[form.strip()] = lemma.strip()
    resolved: dict[str, str] = {}
    for form, lemma in raw.items():
        seen = {form}
        while lemma in raw and raw[lemma] != lemma and lemma not in seen:
            seen.add(lemma)
            lemma = raw[lemma]
        resolved[form] = lemma
    # identity rows for lemma values keep re-application stable
    for lemma in list(resolved.values()):
        resolved.setdefault(lemma, lemma)
    return resolved


# --- noise filtering (issue text only) -------------------------------------

_FENCED_CODE = re.compile(r"```.*?(?:```|\Z)", re.DOTALL)
_INLINE_CODE = re.compile(r"`[^`\n]*`")
_HTML_TAG = re.compile(r"<[^>\n]+>")
_CHECKLIST_LINE = re.compile(r"^[ \t]*[-*+][ \t]+\[[ xX]\][^\n]*\n?", re.MULTILINE)
# Two line-level heuristics for stack traces / error dumps; override via the
# ``line_filters`` argument when a corpus needs different ones.
STACK_FRAME_LINE = re.compile(r"^[ \t]*at[ \t]+[\w$.<>/]+\([^)\n]*\)[^\n]*\n?", re.MULTILINE)
ERROR_MESSAGE_LINE = re.compile(r"^[ \t]*[\w.$]*(?:Exception|Error)\b[^\n]*\n?", re.MULTILINE)
_UNDERSCORE_PHRASE = re.compile(r"(?<!\w)_[^_\n]+_(?!\w)")
_URL = re.compile(r"https?://[^\s)\]>]+|\bwww\.[^\s)\]>]+")
_MENTION = re.compile(r"(?<![\w@])@[A-Za-z0-9][A-Za-z0-9-]*")
_ISSUE_REF = re.compile(r"(?<![\w&])#\d+\b")


def strip_noise(
    text: str,
    lists: WordLists,
    line_filters: tuple[re.Pattern, ...] = (STACK_FRAME_LINE, ERROR_MESSAGE_LINE),
) -> str:
    """Remove the enumerated noise constructs, leaving all other text intact."""
    text = _FENCED_CODE.sub("", text)
    text = _INLINE_CODE.sub("", text)
    text = _HTML_TAG.sub("", text)
    text = _CHECKLIST_LINE.sub("", text)
    for pattern in line_filters:
        text = pattern.sub("", text)
    text = _UNDERSCORE_PHRASE.sub("", text)
    text = _URL.sub("", text)
    text = _MENTION.sub("", text)
    text = _ISSUE_REF.sub("", text)
    for phrase in lists.special_phrases:
        text = re.sub(r"\b" + re.escape(phrase) + r"\b", "", text, flags=re.IGNORECASE)
    return text


# --- tokenization and normalization -----------------------------------------

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")
_DIGITS = re.compile(r"[0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs; apostrophes fuse ("don't" -> "dont")."""
    text = text.lower().replace("'", "").replace("’", "")
    return [t for t in _TOKEN_SPLIT.split(text) if t]


def _fuse_have_to(tokens: list[str]) -> list[str]:
    fused: list[str] = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "have" and i + 1 < len(tokens) and tokens[i + 1] == "to":
            fused.append(FUSED_HAVE_TO)
            i += 2
        else:
            fused.append(tokens[i])
            i += 1
    return fused


def lemmatize(token: str, lists: WordLists) -> str:
    if token in lists.lemmas:
        return lists.lemmas[token]
    return stem(token)


def preprocess(text: str, lists: WordLists, *, filter_noise: bool = True) -> list[str]:
    """Run the full token pipeline. Reviews skip the noise filter (``filter_noise=False``)."""
    if filter_noise:
        text = strip_noise(text, lists)
    tokens = _fuse_have_to(tokenize(text))
    out: list[str] = []
    for tok in tokens:
        if tok == FUSED_HAVE_TO:
            out.append(tok)
            continue
        tok = _DIGITS.sub("", tok)
        if not tok:
            continue
        if tok in lists.negative_modifiers:
            out.append("not")
            continue
        if tok in RETAINED_MODALS:
            out.append(tok)
            continue
        if tok in lists.stopwords:
            continue
        lemma = lemmatize(tok, lists)
        if lemma in lists.stopwords and lemma != "not":
            continue
        out.append(lemma)
    return out


# camelCase hump, snake_case, or dotted path — all markers of code identifiers
_IDENTIFIER_TOKEN = re.compile(
    r"[A-Za-z0-9_]*[a-z][A-Z][A-Za-z0-9_]*"
    r"|\w+_\w+"
    r"|[A-Za-z_]\w*(?:\.[A-Za-z_]\w*)+"
)


def has_identifier_token(text: str) -> bool:
    return bool(_IDENTIFIER_TOKEN.search(text))


def admit(tokens: list[str] | tuple[str, ...], source: Source, title_raw: str | None = None) -> bool:
    """Admission rule for a processed document: enough tokens, and titles free of code identifiers."""
    if len(tokens) < MIN_DOC_TOKENS:
        return False
    if source is Source.ISSUE_TITLE and title_raw is not None and has_identifier_token(title_raw):
        return False
    return True
