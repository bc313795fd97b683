"""Locate the review-like target section of an issue body.

Bodies are split into titled sections (markdown headings, bold-line titles,
or form-style field labels); titles are normalized (lowercase, stopwords
removed except what/about/should, stemmed) and matched against an ordered set
of 19 regex patterns. The first section whose title matches any pattern is
the target. Unstructured bodies contribute only if they are one paragraph.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .ingestion import RawIssue, TemplateFile, TemplateFormat
from .labels import IntentClass
from .stemmer import stem
from .textprep import WordLists, strip_noise, tokenize


class TemplateGroup(str, Enum):
    BUG = "bug"
    FEATURE = "feature"
    OTHER = "other"
    ISSUE = "issue"
    DELETED = "deleted"


class TemplateParseError(Exception):
    pass


class MissingGold(Exception):
    pass


class ExtractionMode(str, Enum):
    SECTION_MATCH = "section_match"
    SINGLE_PARAGRAPH = "single_paragraph"


@dataclass(frozen=True)
class BodySection:
    raw_title: str
    normalized_title: str
    content: str
    order: int


@dataclass(frozen=True)
class TitlePattern:
    name: str
    regex: re.Pattern
    intents: frozenset[IntentClass]


@dataclass(frozen=True)
class PatternSet:
    patterns: tuple[TitlePattern, ...]

    def __iter__(self):
        return iter(self.patterns)


@dataclass(frozen=True)
class ExtractedSection:
    issue_id: str
    text: str
    mode: ExtractionMode
    matched_pattern: str | None = None


# Words whose presence flips a title's meaning; kept during normalization.
TITLE_RETAINED_STOPWORDS = frozenset({"what", "about", "should"})

_FLAG_TO_INTENT = {
    "B": IntentClass.BUG_REPORT,
    "F": IntentClass.FEATURE_REQUEST,
    "O": IntentClass.OTHER,
}


def load_patterns(path: Path | str | None = None) -> PatternSet:
    """Load "name<TAB>regex<TAB>flags" pattern lines (bundled set by default)."""
    if path is None:
        text = resources.files("issueforge").joinpath("data/patterns.tsv").read_text(encoding="utf-8")
        origin = "<bundled>"
    else:
        text = Path(path).read_text(encoding="utf-8")
        origin = str(path)
    patterns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{origin}:{lineno}: expected name<TAB>regex<TAB>flags")
        name, regex, flags = parts
        intents = frozenset(_FLAG_TO_INTENT[flag] for flag in flags.strip())
        patterns.append(TitlePattern(name=name.strip(), regex=re.compile(regex), intents=intents))
    return PatternSet(patterns=tuple(patterns))


def normalize_title(raw: str, lists: WordLists) -> str:
    """Lowercase, drop stopwords (keeping what/about/should), and stem a title."""
    tokens = []
    for tok in tokenize(raw):
        tok = re.sub(r"[0-9]+", "", tok)
        if not tok:
            continue
        if tok in lists.stopwords and tok not in TITLE_RETAINED_STOPWORDS:
            continue
        tokens.append(stem(tok))
    return " ".join(tokens)


# --- template grouping -------------------------------------------------------

_GROUP_KEYWORDS = [
    (TemplateGroup.BUG, ("bug", "crash", "defect")),
    (TemplateGroup.FEATURE, ("feature", "enhancement", "request")),
    (TemplateGroup.OTHER, ("question", "support", "faq")),
    (TemplateGroup.ISSUE, ("issue",)),
]

_FRONT_MATTER = re.compile(r"\A---\s*\n(.*?)\n---\s*(?:\n|\Z)", re.DOTALL)
_META_LINE = re.compile(r"^(name|about|description|title)\s*:\s*(.+)$")


def _template_metadata(tf: TemplateFile) -> str:
    """Pull name/description text out of a template's structured header."""
    meta: list[str] = []
    if tf.format is TemplateFormat.YAML:
        source = tf.raw_text
        if _looks_binary(source):
            raise TemplateParseError(f"{tf.path}: not parseable as a structured template")
        for line in source.splitlines():
            match = _META_LINE.match(line.strip())
            if match:
                meta.append(match.group(2))
    else:
        front = _FRONT_MATTER.match(tf.raw_text)
        if front:
            for line in front.group(1).splitlines():
                match = _META_LINE.match(line.strip())
                if match:
                    meta.append(match.group(2))
    return " ".join(meta)


def _looks_binary(text: str) -> bool:
    return "\x00" in text


def group_template(tf: TemplateFile) -> TemplateGroup:
    """Classify a template by filename plus declared name/description keywords."""
    haystack = (Path(tf.path).name + " " + _template_metadata(tf)).lower()
    for group, keywords in _GROUP_KEYWORDS:
        if any(keyword in haystack for keyword in keywords):
            return group
    return TemplateGroup.DELETED


# --- section splitting --------------------------------------------------------

_ATX_HEADING = re.compile(r"^(#{1,6})\s+(.*?)\s*#*\s*$")
_BOLD_LINE = re.compile(r"^\s*(?:\*\*(.+?)\*\*|__(.+?)__)\s*:?\s*$")
_FIELD_LABEL = re.compile(r"^\s*([^:\n]{1,60}):\s*$")
_LIST_OR_QUOTE = re.compile(r"^\s*(?:[-*+>]|\d+[.)])\s")
_FENCE = re.compile(r"^\s*(```|~~~)")


def _title_of_line(line: str) -> str | None:
    match = _ATX_HEADING.match(line)
    if match and match.group(2).strip():
        return match.group(2).strip()
    match = _BOLD_LINE.match(line)
    if match:
        title = (match.group(1) or match.group(2)).strip()
        if title:
            return title
    if _LIST_OR_QUOTE.match(line):
        return None
    match = _FIELD_LABEL.match(line)
    if match:
        title = match.group(1).strip()
        # short label lines only: a sentence ending in ":" is not a field label
        if title and len(title.split()) <= 8 and re.search(r"[A-Za-z]", title):
            return title
    return None


def split_with_preamble(body: str, lists: WordLists) -> tuple[str, list[BodySection]]:
    """Split a body into (preamble, titled sections); fence interiors are opaque."""
    lines = body.splitlines()
    in_fence = False
    titles: list[tuple[int, str]] = []
    for idx, line in enumerate(lines):
        if _FENCE.match(line):
            in_fence = not in_fence
            continue
        if in_fence:
            continue
        title = _title_of_line(line)
        if title is not None:
            titles.append((idx, title))
    if not titles:
        return body, []
    preamble = "\n".join(lines[: titles[0][0]])
    sections: list[BodySection] = []
    for order, (start, raw_title) in enumerate(titles):
        end = titles[order + 1][0] if order + 1 < len(titles) else len(lines)
        content = "\n".join(lines[start + 1 : end]).strip("\n")
        sections.append(
            BodySection(
                raw_title=raw_title,
                normalized_title=normalize_title(raw_title, lists),
                content=content,
                order=order,
            )
        )
    return preamble, sections


def split_sections(body: str, lists: WordLists) -> list[BodySection]:
    return split_with_preamble(body, lists)[1]


# --- target matching ------------------------------------------------------------

def match_target(
    sections: list[BodySection], patterns: PatternSet
) -> tuple[BodySection, str] | None:
    """First section (in body order) whose normalized title matches any pattern."""
    for section in sections:
        for pattern in patterns:
            if pattern.regex.search(section.normalized_title):
                return section, pattern.name
    return None


def _paragraphs(text: str) -> list[str]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return ["\n".join(block) for block in blocks]


def extract(issue: RawIssue, patterns: PatternSet, lists: WordLists) -> ExtractedSection | None:
    """Target text for one issue: matched section content, or the whole body
    when it is an unstructured single paragraph. None when nothing qualifies."""
    sections = split_sections(issue.body, lists)
    if sections:
        matched = match_target(sections, patterns)
        if matched is None:
            return None
        section, name = matched
        text = section.content.strip()
        if not text:
            return None
        return ExtractedSection(
            issue_id=issue.issue_id,
            text=text,
            mode=ExtractionMode.SECTION_MATCH,
            matched_pattern=name,
        )
    stripped = strip_noise(issue.body, lists)
    paragraphs = _paragraphs(stripped)
    if len(paragraphs) != 1:
        return None
    text = paragraphs[0].strip()
    if not text:
        return None
    return ExtractedSection(issue_id=issue.issue_id, text=text, mode=ExtractionMode.SINGLE_PARAGRAPH)


# --- fixture verification -------------------------------------------------------

@dataclass(frozen=True)
class GoldIssue:
    issue: RawIssue
    gold_text: str | None


@dataclass
class ExtractionReport:
    total: int = 0
    correct: int = 0
    wrong_section: int = 0
    missed: int = 0
    spurious: int = 0
    per_pattern: dict[str, int] = field(default_factory=dict)

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "wrong_section": self.wrong_section,
            "missed": self.missed,
            "spurious": self.spurious,
            "accuracy": self.accuracy,
            "per_pattern": dict(sorted(self.per_pattern.items())),
        }


def load_gold_fixture(path: Path | str | None = None) -> list[GoldIssue]:
    if path is None:
        text = resources.files("issueforge").joinpath("data/extraction_gold.jsonl").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    items: list[GoldIssue] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = json.loads(line)
        if "gold_text" not in row:
            raise MissingGold(f"line {lineno}: fixture row lacks gold_text")
        items.append(
            GoldIssue(
                issue=RawIssue(
                    issue_id=row["issue_id"],
                    repo_id=row.get("repo_id", "fixture"),
                    title=row.get("title", ""),
                    body=row["body"],
                    label_names=tuple(row.get("labels", [])),
                    created_at=row.get("created_at", "2023-01-01T00:00:00Z"),
                ),
                gold_text=row["gold_text"],
            )
        )
    if not items:
        raise MissingGold("fixture is empty")
    return items


def verify_patterns(
    gold: list[GoldIssue], patterns: PatternSet, lists: WordLists
) -> ExtractionReport:
    """Score extraction against gold annotations, reporting empty-output and
    wrong-section errors separately plus per-pattern hit counts."""
    report = ExtractionReport(total=len(gold))
    for item in gold:
        result = extract(item.issue, patterns, lists)
        if result is not None and result.matched_pattern:
            report.per_pattern[result.matched_pattern] = report.per_pattern.get(result.matched_pattern, 0) + 1
        if result is None and item.gold_text is None:
            report.correct += 1
        elif result is None:
            report.missed += 1
        elif item.gold_text is None:
            report.spurious += 1
        elif result.text == item.gold_text:
            report.correct += 1
        else:
            report.wrong_section += 1
    return report
