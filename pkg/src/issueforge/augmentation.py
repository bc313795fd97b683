"""Primary-dataset loading, auxiliary selection, and dataset augmentation.

Reviews come in as CSV with a per-dataset label map; the auxiliary pool is
drawn from processed issue documents by one of three methods (same app,
similar apps, or anywhere) and merged with the primary rows at a configured
volume ratio.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .labels import IntentClass
from .similarity import SimilarityRanking
from .textprep import ProcessedDocument, Source, WordLists, admit, preprocess

logger = logging.getLogger(__name__)


class UnknownLabel(Exception):
    pass


class EmptyPool(Exception):
    pass


class Method(str, Enum):
    WITHIN_APP = "within-app"
    WITHIN_CONTEXT = "within-context"
    BETWEEN_APP = "between-app"


DROP = "drop"
DEFAULT_RATIO = 0.3


@dataclass(frozen=True)
class AugmentationSpec:
    method: Method
    ratio: float = DEFAULT_RATIO
    seed: int = 0
    target_app: str | None = None
    top_k_similar: int = 3
    include_same_app: bool = False

    def __post_init__(self):
        if not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"ratio must be in [0, 1], got {self.ratio}")
        if self.method is Method.BETWEEN_APP:
            if self.target_app is not None:
                raise ValueError("target_app is only meaningful for within-app/within-context")
        elif self.target_app is None:
            raise ValueError(f"{self.method.value} requires a target_app")


@dataclass(frozen=True)
class PrimaryDataset:
    name: str
    rows: tuple[ProcessedDocument, ...]
    label_map: dict[str, IntentClass | None]


@dataclass(frozen=True)
class AugmentedRow:
    doc: ProcessedDocument
    origin: str  # "primary" | "auxiliary"


@dataclass
class AugmentedDataset:
    rows: list[AugmentedRow]
    spec: AugmentationSpec | None
    shortfall: int = 0

    def origin_counts(self) -> dict[str, int]:
        counts = {"primary": 0, "auxiliary": 0}
        for row in self.rows:
            counts[row.origin] += 1
        return counts

    def intent_counts(self) -> dict[str, dict[str, int]]:
        counts: dict[str, dict[str, int]] = {"primary": {}, "auxiliary": {}}
        for row in self.rows:
            for intent in sorted(i.value for i in row.doc.intents):
                counts[row.origin][intent] = counts[row.origin].get(intent, 0) + 1
        return counts


def load_label_map(path: Path | str) -> dict[str, IntentClass | None]:
    """Read "source_label<TAB>bug|feature|other|drop" mapping lines."""
    mapping: dict[str, IntentClass | None] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        source_label, _, target = line.partition("\t")
        target = target.strip()
        if target == DROP:
            mapping[source_label] = None
        else:
            try:
                mapping[source_label] = IntentClass(target)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unknown target class {target!r}")
    return mapping


def load_primary(
    path: Path | str,
    label_map: dict[str, IntentClass | None],
    lists: WordLists,
    name: str | None = None,
) -> PrimaryDataset:
    """Load a review CSV (header: text,label[,app_id]), adapt labels, preprocess.

    Unmapped labels fail fast; rows whose label maps to drop, or that come out
    shorter than the admission minimum, are removed.
    """
    path = Path(path)
    dataset_name = name or path.stem
    rows: list[ProcessedDocument] = []
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or "text" not in reader.fieldnames or "label" not in reader.fieldnames:
            raise ValueError(f"{path}: expected a CSV header with 'text' and 'label' columns")
        for index, record in enumerate(reader):
            label = record["label"]
            if label not in label_map:
                raise UnknownLabel(f"{path}: row {index + 1}: label {label!r} not in label map")
            intent = label_map[label]
            if intent is None:
                continue
            tokens = preprocess(record["text"], lists, filter_noise=False)
            if not admit(tokens, Source.REVIEW):
                continue
            rows.append(
                ProcessedDocument(
                    doc_id=f"{dataset_name}:row{index + 1:05d}",
                    source=Source.REVIEW,
                    tokens=tuple(tokens),
                    intents=frozenset({intent}),
                    app_id=(record.get("app_id") or None),
                )
            )
    return PrimaryDataset(name=dataset_name, rows=tuple(rows), label_map=dict(label_map))


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def auxiliary_size(ratio: float, n_primary: int) -> int:
    return _round_half_up(ratio * n_primary)


def candidate_pool(
    pool: list[ProcessedDocument],
    spec: AugmentationSpec,
    rankings: SimilarityRanking | None = None,
) -> list[ProcessedDocument]:
    if spec.method is Method.BETWEEN_APP:
        return list(pool)
    if spec.method is Method.WITHIN_APP:
        return [doc for doc in pool if doc.app_id == spec.target_app]
    if rankings is None:
        raise ValueError("within-context selection requires a similarity ranking")
    similar = {repo_id for repo_id, _ in rankings.ranked[: spec.top_k_similar]}
    if spec.include_same_app:
        similar.add(spec.target_app)
    return [doc for doc in pool if doc.app_id in similar]


def select_auxiliary(
    pool: list[ProcessedDocument],
    spec: AugmentationSpec,
    n_primary: int,
    rankings: SimilarityRanking | None = None,
) -> tuple[list[ProcessedDocument], int]:
    """Sample the auxiliary subset without replacement; deterministic in
    (pool order, seed). Returns (rows, shortfall)."""
    candidates = candidate_pool(pool, spec, rankings)
    if not candidates:
        raise EmptyPool(f"no candidate documents for {spec.method.value}")
    n = auxiliary_size(spec.ratio, n_primary)
    if n == 0:
        return [], 0
    if n >= len(candidates):
        shortfall = n - len(candidates)
        if shortfall:
            logger.warning(
                "auxiliary shortfall: wanted %d rows, pool has %d; taking all", n, len(candidates)
            )
        return list(candidates), shortfall
    rng = random.Random(spec.seed)
    return rng.sample(candidates, n), 0


def augment(
    primary: PrimaryDataset,
    auxiliary: list[ProcessedDocument],
    spec: AugmentationSpec | None = None,
) -> AugmentedDataset:
    """Merge primary and auxiliary rows with origin tags, deterministically shuffled."""
    rows = [AugmentedRow(doc=doc, origin="primary") for doc in primary.rows]
    rows += [AugmentedRow(doc=doc, origin="auxiliary") for doc in auxiliary]
    seed = spec.seed if spec is not None else 0
    random.Random(seed).shuffle(rows)
    dataset = AugmentedDataset(rows=rows, spec=spec)
    counts = dataset.origin_counts()
    logger.info(
        "augment: %d primary + %d auxiliary rows (intents %s)",
        counts["primary"],
        counts["auxiliary"],
        dataset.intent_counts(),
    )
    return dataset


def sweep(
    primary: PrimaryDataset,
    pool: list[ProcessedDocument],
    r_values: list[float],
    seed: int,
    method: Method = Method.BETWEEN_APP,
    target_app: str | None = None,
    rankings: SimilarityRanking | None = None,
    top_k_similar: int = 3,
    include_same_app: bool = False,
) -> list[AugmentedDataset]:
    """One augmented dataset per volume ratio, sharing the primary rows."""
    datasets = []
    for ratio in r_values:
        spec = AugmentationSpec(
            method=method,
            ratio=ratio,
            seed=seed,
            target_app=target_app,
            top_k_similar=top_k_similar,
            include_same_app=include_same_app,
        )
        auxiliary, shortfall = select_auxiliary(pool, spec, len(primary.rows), rankings)
        dataset = augment(primary, auxiliary, spec)
        dataset.shortfall = shortfall
        datasets.append(dataset)
    return datasets


def sweep_table(datasets: list[AugmentedDataset]) -> list[dict]:
    """Size scaffold for the volume-ratio trend table (metrics filled in later)."""
    table = []
    for dataset in datasets:
        counts = dataset.origin_counts()
        table.append(
            {
                "ratio": dataset.spec.ratio if dataset.spec else 0.0,
                "n_primary": counts["primary"],
                "n_auxiliary": counts["auxiliary"],
                "shortfall": dataset.shortfall,
            }
        )
    return table


# --- JSONL interchange ---------------------------------------------------------

def write_docs(docs: list[ProcessedDocument], path: Path | str) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(
                json.dumps(
                    {
                        "doc_id": doc.doc_id,
                        "source": doc.source.value,
                        "app_id": doc.app_id,
                        "tokens": list(doc.tokens),
                        "intents": sorted(i.value for i in doc.intents),
                    },
                    sort_keys=True,
                    ensure_ascii=False,
                )
                + "\n"
            )
    return path


def load_docs(path: Path | str) -> list[ProcessedDocument]:
    docs = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        docs.append(
            ProcessedDocument(
                doc_id=row["doc_id"],
                source=Source(row["source"]),
                tokens=tuple(row["tokens"]),
                intents=frozenset(IntentClass(i) for i in row["intents"]),
                app_id=row.get("app_id"),
            )
        )
    return docs


def write_augmented(dataset: AugmentedDataset, path: Path | str) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for row in dataset.rows:
            handle.write(
                json.dumps(
                    {
                        "doc_id": row.doc.doc_id,
                        "origin": row.origin,
                        "tokens": list(row.doc.tokens),
                        "intents": sorted(i.value for i in row.doc.intents),
                    },
                    sort_keys=True,
                    ensure_ascii=False,
                )
                + "\n"
            )
    return path


def load_augmented(path: Path | str) -> list[AugmentedRow]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        rows.append(
            AugmentedRow(
                doc=ProcessedDocument(
                    doc_id=record["doc_id"],
                    source=Source.REVIEW if record["origin"] == "primary" else Source.ISSUE_BODY,
                    tokens=tuple(record["tokens"]),
                    intents=frozenset(IntentClass(i) for i in record["intents"]),
                ),
                origin=record["origin"],
            )
        )
    return rows
