import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from issueforge.ingestion import (
    Corpus,
    DanglingRepoRef,
    MissingFile,
    RawIssue,
    RepoRecord,
    SchemaViolation,
    TemplateFormat,
    TemplateFile,
    filter_repos,
    load_corpus,
    write_corpus,
)


def write_jsonl(path: Path, rows: list[dict]) -> None:
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")


def repo_row(repo_id: str, contributors: int = 2, **extra) -> dict:
    row = {
        "repo_id": repo_id,
        "full_name": f"demo/{repo_id}",
        "contributors": contributors,
        "stars": 5,
        "readme_text": None,
        "about_text": None,
    }
    row.update(extra)
    return row


def issue_row(issue_id: str, repo_id: str, labels: list[str] | None = None, **extra) -> dict:
    row = {
        "issue_id": issue_id,
        "repo_id": repo_id,
        "title": f"title {issue_id}",
        "body": f"body {issue_id}",
        "labels": labels if labels is not None else ["bug"],
        "created_at": "2023-01-02T03:04:05Z",
    }
    row.update(extra)
    return row


@pytest.fixture
def corpus_dir(tmp_path):
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1"), repo_row("r2"), repo_row("r3")])
    write_jsonl(
        tmp_path / "issues.jsonl",
        [issue_row(f"i{i}", f"r{(i % 3) + 1}") for i in range(10)],
    )
    write_jsonl(
        tmp_path / "templates.jsonl",
        [{"repo_id": "r1", "path": ".github/ISSUE_TEMPLATE/bug.md", "raw_text": "x"}],
    )
    return tmp_path


def test_fixture_counts_and_links(corpus_dir):
    corpus = load_corpus(corpus_dir)
    assert len(corpus.repos) == 3
    assert len(corpus.issues) == 10
    assert all(issue.repo_id in corpus.repos for issue in corpus.issues)
    # 10 issues round-robin over 3 repos: 4 for r1, 3 for r2, 3 for r3
    assert corpus.repos["r1"].labeled_issue_count == 4
    assert corpus.repos["r2"].labeled_issue_count == 3


def test_empty_issue_file(tmp_path):
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1")])
    (tmp_path / "issues.jsonl").write_text("", encoding="utf-8")
    corpus = load_corpus(tmp_path)
    assert corpus.issues == []
    assert len(corpus.repos) == 1


def test_missing_title_reports_line_and_field(tmp_path):
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1")])
    rows = [issue_row("i1", "r1"), issue_row("i2", "r1")]
    del rows[1]["title"]
    write_jsonl(tmp_path / "issues.jsonl", rows)
    with pytest.raises(SchemaViolation) as err:
        load_corpus(tmp_path)
    assert err.value.line_number == 2
    assert err.value.field == "title"


def test_unlabeled_issues_not_counted(tmp_path):
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1")])
    write_jsonl(
        tmp_path / "issues.jsonl",
        [issue_row("i1", "r1", labels=[]), issue_row("i2", "r1", labels=["bug"])],
    )
    corpus = load_corpus(tmp_path)
    assert corpus.repos["r1"].labeled_issue_count == 1


def test_dangling_issue_ref(tmp_path):
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1")])
    write_jsonl(tmp_path / "issues.jsonl", [issue_row("i1", "ghost")])
    with pytest.raises(DanglingRepoRef):
        load_corpus(tmp_path)


def test_missing_file(tmp_path):
    with pytest.raises(MissingFile):
        load_corpus(tmp_path)


def test_template_format_from_extension():
    yaml_tf = TemplateFile(repo_id="r", path="a/b.yml", raw_text="")
    md_tf = TemplateFile(repo_id="r", path="a/b.md", raw_text="")
    assert yaml_tf.format is TemplateFormat.YAML
    assert md_tf.format is TemplateFormat.MARKDOWN


# --- filtering --------------------------------------------------------------------------

def synthetic_corpus(spec: list[tuple[str, int, int]]) -> Corpus:
    """spec: (repo_id, labeled_issue_count, contributors)."""
    repos = {}
    issues = []
    for repo_id, n_labeled, contributors in spec:
        repos[repo_id] = RepoRecord(
            repo_id=repo_id,
            full_name=f"demo/{repo_id}",
            contributors=contributors,
            stars=0,
            labeled_issue_count=n_labeled,
        )
        for index in range(n_labeled):
            issues.append(
                RawIssue(
                    issue_id=f"{repo_id}-{index}",
                    repo_id=repo_id,
                    title="t",
                    body="",
                    label_names=("bug",),
                    created_at="2023-01-01T00:00:00Z",
                )
            )
    return Corpus(repos=repos, issues=issues)


def test_threshold_boundaries():
    corpus = synthetic_corpus([("a", 30, 2), ("b", 31, 1), ("c", 31, 2)])
    kept = filter_repos(corpus)
    assert set(kept.repos) == {"c"}  # 30 labeled issues is not enough; 1 contributor is not enough
    assert all(issue.repo_id == "c" for issue in kept.issues)


def test_filter_to_empty_is_legal():
    corpus = synthetic_corpus([("a", 1, 1)])
    kept = filter_repos(corpus)
    assert kept.repos == {} and kept.issues == []


def test_filter_idempotent():
    corpus = synthetic_corpus([("a", 40, 3), ("b", 10, 5), ("c", 35, 1)])
    once = filter_repos(corpus)
    twice = filter_repos(once)
    assert set(twice.repos) == set(once.repos)
    assert [i.issue_id for i in twice.issues] == [i.issue_id for i in once.issues]


@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=50), st.integers(min_value=0, max_value=5)),
        min_size=0,
        max_size=8,
    ),
    st.integers(min_value=0, max_value=40),
    st.integers(min_value=0, max_value=4),
)
@settings(max_examples=100)
def test_filter_monotone_in_thresholds(repo_specs, min_issues, min_contributors):
    corpus = synthetic_corpus([(f"r{i}", n, c) for i, (n, c) in enumerate(repo_specs)])
    base = set(filter_repos(corpus, min_issues, min_contributors).repos)
    tighter_issues = set(filter_repos(corpus, min_issues + 1, min_contributors).repos)
    tighter_contrib = set(filter_repos(corpus, min_issues, min_contributors + 1).repos)
    assert tighter_issues <= base
    assert tighter_contrib <= base


# --- round trip --------------------------------------------------------------------------

def test_write_load_round_trip(tmp_path, corpus_dir):
    corpus = load_corpus(corpus_dir)
    out = tmp_path / "copy"
    write_corpus(corpus, out)
    reloaded = load_corpus(out)
    assert set(reloaded.repos) == set(corpus.repos)
    for repo_id, record in corpus.repos.items():
        assert reloaded.repos[repo_id] == record
    assert sorted(reloaded.issues, key=lambda i: i.issue_id) == sorted(
        corpus.issues, key=lambda i: i.issue_id
    )
    assert reloaded.templates == corpus.templates
    # writing again is byte-identical
    again = tmp_path / "copy2"
    write_corpus(reloaded, again)
    for name in ("repos.jsonl", "issues.jsonl", "templates.jsonl"):
        assert (out / name).read_bytes() == (again / name).read_bytes()


def test_round_trip_preserves_odd_strings(tmp_path):
    strange = 'tab\there "quotes" \\ backslash éü emoji \U0001f41b newline\nend'
    write_jsonl(tmp_path / "repos.jsonl", [repo_row("r1", readme_text=strange, about_text=strange)])
    write_jsonl(tmp_path / "issues.jsonl", [issue_row("i1", "r1", title=strange, body=strange)])
    corpus = load_corpus(tmp_path)
    out = tmp_path / "written"
    write_corpus(corpus, out)
    reloaded = load_corpus(out)
    assert reloaded.issues[0].title == strange
    assert reloaded.issues[0].body == strange
    assert reloaded.repos["r1"].readme_text == strange
