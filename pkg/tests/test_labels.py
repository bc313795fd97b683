import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from issueforge.ingestion import Corpus, RawIssue, RepoRecord
from issueforge.labels import (
    IntentClass,
    IntentLexicon,
    LexiconKeyNotNormalized,
    assign_intents,
    build_label_table,
    load_lexicon,
    normalize_label,
    validate_lexicon,
)
from issueforge.textprep import load_wordlists


def make_corpus(issue_labels: list[list[str]]) -> Corpus:
    repos = {"r1": RepoRecord(repo_id="r1", full_name="demo/one", contributors=2, stars=1)}
    issues = [
        RawIssue(
            issue_id=f"i{index}",
            repo_id="r1",
            title=f"issue {index}",
            body="",
            label_names=tuple(labels),
            created_at="2023-01-01T00:00:00Z",
        )
        for index, labels in enumerate(issue_labels)
    ]
    return Corpus(repos=repos, issues=issues)


SIX_NEGATED_VARIANTS = [
    "not reproduced",
    "cannot-reproduce",
    "non-reproduce",
    "could not reproduce",
    "cant-reproduce",
    "can't reproduce",
]


def test_priority_label_vanishes(lists):
    assert normalize_label("P1", lists) == ""


def test_negated_variants_unify(lists):
    assert {normalize_label(raw, lists) for raw in SIX_NEGATED_VARIANTS} == {"not reproduc"}


def test_derivational_family_collapses(lists):
    forms = {normalize_label(w, lists) for w in ("reproduced", "reproduction", "reproducible")}
    assert len(forms) == 1


def test_type_enhancement(lists):
    assert normalize_label("Type: enhancement", lists) == "type enhanc"
    assert normalize_label("type/enhancement", lists) == "type enhanc"


def test_emoji_and_unicode_stripped(lists):
    assert normalize_label("\U0001f41b bug", lists) == "bug"


LABELISH = st.text(alphabet=string.ascii_letters + string.digits + " :-_'/.!", min_size=1, max_size=25)


@given(LABELISH)
@settings(max_examples=300)
def test_normalize_idempotent(raw):
    lists = load_wordlists()
    once = normalize_label(raw, lists)
    assert normalize_label(once, lists) == once


@given(LABELISH)
@settings(max_examples=300)
def test_normalized_form_invariants(raw):
    lists = load_wordlists()
    surface = normalize_label(raw, lists)
    assert surface == surface.lower()
    assert not any(ch.isdigit() for ch in surface)
    for tok in surface.split():
        assert len(tok) > 1 or tok == ""  # no isolated single letters
        if tok != "not":
            assert tok not in lists.negative_modifiers


# --- build_label_table ---------------------------------------------------------

def test_case_variants_group(lists):
    corpus = make_corpus([["Bug"], ["bug"]])
    table = build_label_table(corpus, lists)
    assert len(table) == 1
    assert table[0].surface == "bug"
    assert table[0].frequency == 2
    assert table[0].originals == frozenset({"Bug", "bug"})


def test_empty_corpus(lists):
    assert build_label_table(make_corpus([[], []]), lists) == []


def test_five_issue_table_by_hand(lists):
    # hand enumeration: bug appears on i0,i1,i2 (3); type enhanc on i3 (1);
    # question on i4 (1); P1 drops out entirely
    corpus = make_corpus(
        [["Bug", "P1"], ["bug"], ["BUG!"], ["Type: Enhancement"], ["question"]]
    )
    table = build_label_table(corpus, lists)
    assert [(entry.surface, entry.frequency) for entry in table] == [
        ("bug", 3),
        ("question", 1),
        ("type enhanc", 1),
    ]


def test_same_issue_counted_once(lists):
    corpus = make_corpus([["Bug", "bug", "BUG"]])
    table = build_label_table(corpus, lists)
    assert table[0].frequency == 1


# --- assign_intents --------------------------------------------------------------

@pytest.fixture(scope="module")
def lexicon(lists):
    return load_lexicon_from_entries(
        {"bug": IntentClass.BUG_REPORT, "crash": IntentClass.BUG_REPORT, "enhanc": IntentClass.FEATURE_REQUEST}
    )


def load_lexicon_from_entries(entries):
    return IntentLexicon(entries=entries, provenance="<test>")


def test_unrelated_label_excluded(lists, lexicon):
    corpus = make_corpus([["priority high"], ["crash"]])
    assigned = assign_intents(corpus, lexicon, lists, min_label_frequency=1)
    assert "i0" not in assigned
    assert assigned["i1"] == frozenset({IntentClass.BUG_REPORT})


def test_both_intents_union(lists, lexicon):
    corpus = make_corpus([["crash", "enhancement"]])
    assigned = assign_intents(corpus, lexicon, lists, min_label_frequency=1)
    assert assigned["i0"] == frozenset({IntentClass.BUG_REPORT, IntentClass.FEATURE_REQUEST})


def test_min_frequency_applies(lists, lexicon):
    corpus = make_corpus([["crash"], ["crash"], ["enhancement"]])
    assigned = assign_intents(corpus, lexicon, lists, min_label_frequency=2)
    assert assigned.get("i0") == frozenset({IntentClass.BUG_REPORT})
    assert "i2" not in assigned  # enhanc appears on one issue only


def test_lexicon_key_must_be_normalized(lists):
    bad = load_lexicon_from_entries({"Enhancement": IntentClass.FEATURE_REQUEST})
    with pytest.raises(LexiconKeyNotNormalized):
        validate_lexicon(bad, lists)


def test_bundled_lexicon_is_valid(lists):
    from issueforge.textprep import default_data_dir

    lexicon = load_lexicon(default_data_dir() / "lexicon.tsv", lists)
    assert len(lexicon.entries) >= 30
    assert lexicon.entries["crash"] is IntentClass.BUG_REPORT
    assert lexicon.entries["type not reproduc"] is IntentClass.BUG_REPORT
    assert lexicon.entries["enhanc"] is IntentClass.FEATURE_REQUEST
    assert lexicon.entries["question"] is IntentClass.OTHER


LABEL_POOL = ["bug", "crash", "enhancement", "question", "priority high", "wontfix", "P1"]


@given(
    st.lists(st.lists(st.sampled_from(LABEL_POOL), max_size=3), min_size=1, max_size=12),
    st.integers(min_value=1, max_value=4),
)
@settings(max_examples=60, deadline=None)
def test_lexicon_growth_is_monotone(issue_labels, min_freq):
    lists = load_wordlists()
    corpus = make_corpus(issue_labels)
    small = load_lexicon_from_entries({"bug": IntentClass.BUG_REPORT})
    big = load_lexicon_from_entries(
        {
            "bug": IntentClass.BUG_REPORT,
            "crash": IntentClass.BUG_REPORT,
            "enhanc": IntentClass.FEATURE_REQUEST,
            "question": IntentClass.OTHER,
        }
    )
    before = assign_intents(corpus, small, lists, min_label_frequency=min_freq)
    after = assign_intents(corpus, big, lists, min_label_frequency=min_freq)
    for issue_id, intents in before.items():
        assert intents <= after.get(issue_id, frozenset())


@given(
    st.lists(st.lists(st.sampled_from(LABEL_POOL), max_size=3), min_size=1, max_size=12),
    st.integers(min_value=1, max_value=3),
)
@settings(max_examples=60, deadline=None)
def test_raising_min_frequency_never_adds(issue_labels, min_freq):
    lists = load_wordlists()
    corpus = make_corpus(issue_labels)
    lexicon = load_lexicon_from_entries(
        {"bug": IntentClass.BUG_REPORT, "crash": IntentClass.BUG_REPORT, "question": IntentClass.OTHER}
    )
    low = assign_intents(corpus, lexicon, lists, min_label_frequency=min_freq)
    high = assign_intents(corpus, lexicon, lists, min_label_frequency=min_freq + 1)
    for issue_id, intents in high.items():
        assert intents <= low.get(issue_id, frozenset())
