"""Repository profiles and tf-idf cosine ranking for finding similar apps.

A profile is built from the About text, the ReadMe's pre-heading text, and the
content of ReadMe sections titled like a project description (introduction,
features, overview, ...). Profiles are compared with cosine similarity over
tf-idf vectors (tf = count/length, idf = ln(N/df) + 1).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .extraction import normalize_title, split_with_preamble
from .ingestion import Corpus, RepoRecord
from .textprep import WordLists, preprocess

logger = logging.getLogger(__name__)


class EmptyProfile(Exception):
    pass


PROFILE_SECTION_TITLES = (
    "introduction",
    "description",
    "features",
    "what it does",
    "about",
    "about the project",
    "overview",
    "summary",
    "todo",
)


@dataclass(frozen=True)
class RepoProfile:
    repo_id: str
    tokens: tuple[str, ...]
    vector: dict[str, float]


@dataclass(frozen=True)
class SimilarityRanking:
    query_repo: str
    ranked: tuple[tuple[str, float], ...]


def profile_text(repo: RepoRecord, lists: WordLists) -> str:
    """Concatenate About text, ReadMe preamble, and description-like sections."""
    parts: list[str] = []
    if repo.about_text:
        parts.append(repo.about_text)
    if repo.readme_text:
        preamble, sections = split_with_preamble(repo.readme_text, lists)
        if preamble.strip():
            parts.append(preamble)
        wanted = {normalize_title(title, lists) for title in PROFILE_SECTION_TITLES}
        for section in sections:
            if section.normalized_title in wanted and section.content.strip():
                parts.append(section.content)
    return "\n".join(parts)


def build_profile_tokens(repo: RepoRecord, lists: WordLists) -> list[str]:
    """Preprocessed profile tokens for one repo; raises EmptyProfile when unusable."""
    text = profile_text(repo, lists)
    tokens = preprocess(text, lists, filter_noise=False)
    if not tokens:
        raise EmptyProfile(f"repo {repo.repo_id!r} has no usable profile text")
    return tokens


def tfidf(token_lists: list[list[str]]) -> list[dict[str, float]]:
    """tf-idf vectors for a list of token documents (tf=count/len, idf=ln(N/df)+1)."""
    n_docs = len(token_lists)
    if not any(token_lists):
        raise ValueError("tfidf requires at least one non-empty document")
    df: dict[str, int] = {}
    for tokens in token_lists:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    vectors: list[dict[str, float]] = []
    for tokens in token_lists:
        vector: dict[str, float] = {}
        if tokens:
            length = len(tokens)
            counts: dict[str, int] = {}
            for term in tokens:
                counts[term] = counts.get(term, 0) + 1
            for term, count in counts.items():
                idf = math.log(n_docs / df[term]) + 1.0
                vector[term] = (count / length) * idf
        vectors.append(vector)
    return vectors


def cosine(u: dict[str, float], v: dict[str, float]) -> float:
    if len(v) < len(u):
        u, v = v, u
    dot = sum(weight * v.get(term, 0.0) for term, weight in u.items())
    norm_u = math.sqrt(sum(w * w for w in u.values()))
    norm_v = math.sqrt(sum(w * w for w in v.values()))
    if norm_u == 0.0 or norm_v == 0.0:
        return 0.0
    return dot / (norm_u * norm_v)


def build_profiles(corpus: Corpus, lists: WordLists) -> dict[str, RepoProfile]:
    """Profiles for every repo with usable text; empty ones are logged and skipped."""
    token_lists: list[list[str]] = []
    ids: list[str] = []
    for repo_id in sorted(corpus.repos):
        try:
            tokens = build_profile_tokens(corpus.repos[repo_id], lists)
        except EmptyProfile:
            logger.info("similarity: repo %s has an empty profile, excluded", repo_id)
            continue
        ids.append(repo_id)
        token_lists.append(tokens)
    if not ids:
        return {}
    vectors = tfidf(token_lists)
    return {
        repo_id: RepoProfile(repo_id=repo_id, tokens=tuple(tokens), vector=vector)
        for repo_id, tokens, vector in zip(ids, token_lists, vectors)
    }


def rank_similar(query_repo: str, profiles: dict[str, RepoProfile]) -> SimilarityRanking:
    """Full descending cosine ranking of all other non-empty profiles."""
    query = profiles.get(query_repo)
    if query is None or not query.vector:
        raise EmptyProfile(f"query repo {query_repo!r} has no profile")
    scored = [
        (repo_id, cosine(query.vector, profile.vector))
        for repo_id, profile in profiles.items()
        if repo_id != query_repo and profile.vector
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return SimilarityRanking(query_repo=query_repo, ranked=tuple(scored))
