"""Corpus model and on-disk interchange for repositories, issues, and templates.

A corpus directory holds three JSON-lines files (``repos.jsonl``,
``issues.jsonl``, optional ``templates.jsonl``). Every pipeline stage works
from this layout so the whole system is testable offline.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

logger = logging.getLogger(__name__)


class CorpusError(Exception):
    pass


class MissingFile(CorpusError):
    pass


class SchemaViolation(CorpusError):
    def __init__(self, filename: str, line_number: int, field_name: str, message: str):
        self.filename = filename
        self.line_number = line_number
        self.field = field_name
        super().__init__(f"{filename}:{line_number}: field {field_name!r}: {message}")


class DanglingRepoRef(CorpusError):
    pass


class TemplateFormat(str, Enum):
    MARKDOWN = "markdown"
    YAML = "yaml"


@dataclass(frozen=True)
class RepoRecord:
    repo_id: str
    full_name: str
    contributors: int
    stars: int
    labeled_issue_count: int = 0
    readme_text: str | None = None
    about_text: str | None = None


@dataclass(frozen=True)
class RawIssue:
    issue_id: str
    repo_id: str
    title: str
    body: str
    label_names: tuple[str, ...]
    created_at: str


@dataclass(frozen=True)
class TemplateFile:
    repo_id: str
    path: str
    raw_text: str

    @property
    def format(self) -> TemplateFormat:
        if self.path.endswith((".yaml", ".yml")):
            return TemplateFormat.YAML
        return TemplateFormat.MARKDOWN


@dataclass
class Corpus:
    repos: dict[str, RepoRecord] = field(default_factory=dict)
    issues: list[RawIssue] = field(default_factory=list)
    templates: list[TemplateFile] = field(default_factory=list)

    def issues_for(self, repo_id: str) -> list[RawIssue]:
        return [issue for issue in self.issues if issue.repo_id == repo_id]


_REPO_FIELDS = {
    "repo_id": str,
    "full_name": str,
    "contributors": int,
    "stars": int,
}
_ISSUE_FIELDS = {
    "issue_id": str,
    "repo_id": str,
    "title": str,
    "body": str,
    "labels": list,
    "created_at": str,
}
_TEMPLATE_FIELDS = {
    "repo_id": str,
    "path": str,
    "raw_text": str,
}


def _parse_jsonl(path: Path, required: dict[str, type]) -> list[tuple[int, dict]]:
    rows: list[tuple[int, dict]] = []
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaViolation(path.name, lineno, "<line>", f"invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise SchemaViolation(path.name, lineno, "<line>", "expected a JSON object")
            for name, type_ in required.items():
                if name not in obj:
                    raise SchemaViolation(path.name, lineno, name, "missing")
                value = obj[name]
                if type_ is int:
                    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                        raise SchemaViolation(path.name, lineno, name, "expected a non-negative integer")
                elif not isinstance(value, type_):
                    raise SchemaViolation(path.name, lineno, name, f"expected {type_.__name__}")
            rows.append((lineno, obj))
    return rows


def load_corpus(path: Path | str) -> Corpus:
    """Load and cross-link a corpus directory; every issue must resolve to a repo."""
    base = Path(path)
    repos_file = base / "repos.jsonl"
    issues_file = base / "issues.jsonl"
    templates_file = base / "templates.jsonl"
    for required_file in (repos_file, issues_file):
        if not required_file.exists():
            raise MissingFile(str(required_file))

    repos: dict[str, RepoRecord] = {}
    for lineno, row in _parse_jsonl(repos_file, _REPO_FIELDS):
        if row["repo_id"] in repos:
            raise SchemaViolation(repos_file.name, lineno, "repo_id", "duplicate repo_id")
        repos[row["repo_id"]] = RepoRecord(
            repo_id=row["repo_id"],
            full_name=row["full_name"],
            contributors=row["contributors"],
            stars=row["stars"],
            readme_text=row.get("readme_text"),
            about_text=row.get("about_text"),
        )

    issues: list[RawIssue] = []
    seen_issue_ids: set[str] = set()
    for lineno, row in _parse_jsonl(issues_file, _ISSUE_FIELDS):
        if row["issue_id"] in seen_issue_ids:
            raise SchemaViolation(issues_file.name, lineno, "issue_id", "duplicate issue_id")
        seen_issue_ids.add(row["issue_id"])
        labels = row["labels"]
        if not all(isinstance(label, str) for label in labels):
            raise SchemaViolation(issues_file.name, lineno, "labels", "expected a list of strings")
        if row["repo_id"] not in repos:
            raise DanglingRepoRef(
                f"{issues_file.name}:{lineno}: issue {row['issue_id']!r} references unknown repo {row['repo_id']!r}"
            )
        issues.append(
            RawIssue(
                issue_id=row["issue_id"],
                repo_id=row["repo_id"],
                title=row["title"],
                body=row["body"],
                label_names=tuple(labels),
                created_at=row["created_at"],
            )
        )

    templates: list[TemplateFile] = []
    if templates_file.exists():
        for lineno, row in _parse_jsonl(templates_file, _TEMPLATE_FIELDS):
            if row["repo_id"] not in repos:
                raise DanglingRepoRef(
                    f"{templates_file.name}:{lineno}: template {row['path']!r} references unknown repo {row['repo_id']!r}"
                )
            templates.append(TemplateFile(repo_id=row["repo_id"], path=row["path"], raw_text=row["raw_text"]))

    counts: dict[str, int] = {}
    for issue in issues:
        if issue.label_names:
            counts[issue.repo_id] = counts.get(issue.repo_id, 0) + 1
    repos = {
        repo_id: replace(record, labeled_issue_count=counts.get(repo_id, 0))
        for repo_id, record in repos.items()
    }
    return Corpus(repos=repos, issues=issues, templates=templates)


def write_corpus(corpus: Corpus, path: Path | str) -> Path:
    """Write a corpus directory in the interchange schema, deterministically sorted."""
    base = Path(path)
    base.mkdir(parents=True, exist_ok=True)

    def dump(obj: dict) -> str:
        return json.dumps(obj, sort_keys=True, ensure_ascii=False)

    with (base / "repos.jsonl").open("w", encoding="utf-8") as handle:
        for record in sorted(corpus.repos.values(), key=lambda r: r.repo_id):
            handle.write(
                dump(
                    {
                        "repo_id": record.repo_id,
                        "full_name": record.full_name,
                        "contributors": record.contributors,
                        "stars": record.stars,
                        "readme_text": record.readme_text,
                        "about_text": record.about_text,
                    }
                )
                + "\n"
            )
    with (base / "issues.jsonl").open("w", encoding="utf-8") as handle:
        for issue in sorted(corpus.issues, key=lambda i: (i.repo_id, i.issue_id)):
            handle.write(
                dump(
                    {
                        "issue_id": issue.issue_id,
                        "repo_id": issue.repo_id,
                        "title": issue.title,
                        "body": issue.body,
                        "labels": list(issue.label_names),
                        "created_at": issue.created_at,
                    }
                )
                + "\n"
            )
    with (base / "templates.jsonl").open("w", encoding="utf-8") as handle:
        for template in sorted(corpus.templates, key=lambda t: (t.repo_id, t.path)):
            handle.write(dump({"repo_id": template.repo_id, "path": template.path, "raw_text": template.raw_text}) + "\n")
    return base


def filter_repos(corpus: Corpus, min_labeled_issues: int = 30, min_contributors: int = 2) -> Corpus:
    """Keep repos with more than ``min_labeled_issues`` labeled issues and at
    least ``min_contributors`` contributors, plus only their issues/templates."""
    kept = {
        repo_id: record
        for repo_id, record in corpus.repos.items()
        if record.labeled_issue_count > min_labeled_issues and record.contributors >= min_contributors
    }
    issues = [issue for issue in corpus.issues if issue.repo_id in kept]
    templates = [template for template in corpus.templates if template.repo_id in kept]
    logger.info(
        "filter_repos: kept %d/%d repos, dropped %d repos and %d issues",
        len(kept),
        len(corpus.repos),
        len(corpus.repos) - len(kept),
        len(corpus.issues) - len(issues),
    )
    return Corpus(repos=kept, issues=issues, templates=templates)
