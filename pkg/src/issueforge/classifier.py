"""Binary intent classifiers with stratified cross-validation.

A deterministic logistic-regression model over tf-idf features stands in as
the measurement instrument: one classifier per target intent (bug report,
feature request), trained by full-batch gradient descent. Auxiliary-origin
rows only ever augment training splits; test folds hold review rows.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .augmentation import AugmentedDataset, AugmentedRow, AugmentationSpec, PrimaryDataset, augment, select_auxiliary
from .labels import IntentClass
from .similarity import SimilarityRanking
from .textprep import ProcessedDocument


class DegenerateLabels(Exception):
    pass


class TooFewRows(Exception):
    pass


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 50
    learning_rate: float = 0.1
    l2: float = 1e-4
    seed: int = 0
    use_bigrams: bool = False


@dataclass(frozen=True)
class FeatureSpace:
    vocabulary: tuple[str, ...]
    idf: np.ndarray
    use_bigrams: bool = False

    @property
    def index(self) -> dict[str, int]:
        return {term: i for i, term in enumerate(self.vocabulary)}


def _doc_terms(doc: ProcessedDocument, use_bigrams: bool) -> list[str]:
    terms = list(doc.tokens)
    if use_bigrams:
        terms += [f"{a}__{b}" for a, b in zip(doc.tokens, doc.tokens[1:])]
    return terms


def build_feature_space(rows: Sequence[AugmentedRow], use_bigrams: bool = False) -> FeatureSpace:
    """Vocabulary and idf weights derived from training rows only."""
    df: dict[str, int] = {}
    for row in rows:
        for term in set(_doc_terms(row.doc, use_bigrams)):
            df[term] = df.get(term, 0) + 1
    vocabulary = tuple(sorted(df))
    n_docs = max(len(rows), 1)
    idf = np.array([math.log(n_docs / df[t]) + 1.0 for t in vocabulary], dtype=np.float64)
    return FeatureSpace(vocabulary=vocabulary, idf=idf, use_bigrams=use_bigrams)


def vectorize(space: FeatureSpace, rows: Sequence[AugmentedRow]) -> np.ndarray:
    """Term-count times idf features; terms outside the vocabulary are ignored."""
    index = space.index
    matrix = np.zeros((len(rows), len(space.vocabulary)), dtype=np.float64)
    for i, row in enumerate(rows):
        for term in _doc_terms(row.doc, space.use_bigrams):
            j = index.get(term)
            if j is not None:
                matrix[i, j] += 1.0
    return matrix * space.idf


@dataclass
class LinearModel:
    space: FeatureSpace
    weights: np.ndarray
    bias: float
    config: TrainConfig
    target: IntentClass
    loss_history: list[float] = field(default_factory=list)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def loss_and_grad(
    weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray, float]:
    """Mean logistic loss with L2 on weights (bias unregularized), and its gradient."""
    z = X @ weights + bias
    # log(1 + e^z) - y*z, computed without under/overflow
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(weights, weights))
    p = _sigmoid(z)
    residual = (p - y) / len(y)
    grad_w = X.T @ residual + l2 * weights
    grad_b = float(np.sum(residual))
    return loss, grad_w, grad_b


def labels_for(rows: Sequence[AugmentedRow], target: IntentClass) -> np.ndarray:
    return np.array([1.0 if target in row.doc.intents else 0.0 for row in rows], dtype=np.float64)


def train(
    rows: Sequence[AugmentedRow], target: IntentClass, config: TrainConfig = TrainConfig()
) -> LinearModel:
    """Full-batch gradient descent on logistic loss; deterministic for a config."""
    y = labels_for(rows, target)
    if y.sum() == 0 or y.sum() == len(y):
        raise DegenerateLabels(f"training set has a single class for target {target.value}")
    space = build_feature_space(rows, config.use_bigrams)
    X = vectorize(space, rows)
    weights = np.zeros(len(space.vocabulary), dtype=np.float64)
    bias = 0.0
    history: list[float] = []
    for _ in range(config.epochs):
        loss, grad_w, grad_b = loss_and_grad(weights, bias, X, y, config.l2)
        history.append(loss)
        weights = weights - config.learning_rate * grad_w
        bias = bias - config.learning_rate * grad_b
    final_loss, _, _ = loss_and_grad(weights, bias, X, y, config.l2)
    history.append(final_loss)
    return LinearModel(
        space=space, weights=weights, bias=bias, config=config, target=target, loss_history=history
    )


def predict_proba(model: LinearModel, rows: Sequence[AugmentedRow]) -> np.ndarray:
    X = vectorize(model.space, rows)
    return _sigmoid(X @ model.weights + model.bias)


@dataclass(frozen=True)
class FoldMetrics:
    tp: int
    fp: int
    tn: int
    fn: int
    precision: float
    recall: float
    f1: float
    precision_degenerate: bool = False
    recall_degenerate: bool = False

    def as_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def metrics_from_counts(tp: int, fp: int, tn: int, fn: int) -> FoldMetrics:
    """precision = TP/(TP+FP), recall = TP/(TP+FN), F1 their harmonic mean;
    zero denominators yield 0 with a degenerate flag."""
    precision_degenerate = (tp + fp) == 0
    recall_degenerate = (tp + fn) == 0
    precision = 0.0 if precision_degenerate else tp / (tp + fp)
    recall = 0.0 if recall_degenerate else tp / (tp + fn)
    f1 = 0.0 if (precision + recall) == 0 else 2 * precision * recall / (precision + recall)
    return FoldMetrics(
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        precision=precision,
        recall=recall,
        f1=f1,
        precision_degenerate=precision_degenerate,
        recall_degenerate=recall_degenerate,
    )


def evaluate(model: LinearModel, rows: Sequence[AugmentedRow], target: IntentClass) -> FoldMetrics:
    if not rows:
        raise ValueError("evaluate requires a non-empty test set")
    probabilities = predict_proba(model, rows)
    y = labels_for(rows, target)
    predictions = probabilities >= 0.5
    tp = int(np.sum(predictions & (y == 1)))
    fp = int(np.sum(predictions & (y == 0)))
    tn = int(np.sum(~predictions & (y == 0)))
    fn = int(np.sum(~predictions & (y == 1)))
    return metrics_from_counts(tp, fp, tn, fn)


def as_rows(docs: Sequence[ProcessedDocument], origin: str = "primary") -> list[AugmentedRow]:
    return [AugmentedRow(doc=doc, origin=origin) for doc in docs]


def stratified_folds(
    rows: Sequence[AugmentedRow], target: IntentClass, k: int = 5, seed: int = 0
) -> list[tuple[list[int], list[int]]]:
    """k (train, test) index splits. Primary rows are distributed so per-fold
    positive counts differ by at most one; auxiliary rows join every training
    split and never a test fold. Assignment depends on doc_ids, not row order.
    """
    primary = [(row.doc.doc_id, i) for i, row in enumerate(rows) if row.origin == "primary"]
    auxiliary = [i for i, row in enumerate(rows) if row.origin != "primary"]
    primary.sort()
    positives = [i for _, i in primary if target in rows[i].doc.intents]
    negatives = [i for _, i in primary if target not in rows[i].doc.intents]
    if len(positives) < k or len(negatives) < k:
        raise TooFewRows(
            f"need at least {k} positive and {k} negative primary rows, "
            f"have {len(positives)}/{len(negatives)}"
        )
    rng = random.Random(seed)
    rng.shuffle(positives)
    rng.shuffle(negatives)
    folds: list[tuple[list[int], list[int]]] = []
    for fold_index in range(k):
        test = sorted(positives[fold_index::k] + negatives[fold_index::k])
        test_set = set(test)
        train_idx = [i for _, i in primary if i not in test_set] + auxiliary
        folds.append((sorted(train_idx), test))
    return folds


@dataclass
class EvalReport:
    target: IntentClass
    folds: list[FoldMetrics]
    runtime_seconds: float = 0.0

    @property
    def mean_precision(self) -> float:
        return sum(f.precision for f in self.folds) / len(self.folds)

    @property
    def mean_recall(self) -> float:
        return sum(f.recall for f in self.folds) / len(self.folds)

    @property
    def mean_f1(self) -> float:
        return sum(f.f1 for f in self.folds) / len(self.folds)

    def as_dict(self) -> dict:
        return {
            "target": self.target.value,
            "folds": [f.as_dict() for f in self.folds],
            "mean": {
                "precision": self.mean_precision,
                "recall": self.mean_recall,
                "f1": self.mean_f1,
            },
        }


def cross_validate(
    rows: Sequence[AugmentedRow],
    target: IntentClass,
    k: int = 5,
    seed: int = 0,
    config: TrainConfig | None = None,
) -> EvalReport:
    """Stratified k-fold evaluation; reported metrics are per-fold averages."""
    config = config or TrainConfig(seed=seed)
    started = time.perf_counter()
    fold_metrics = []
    for train_idx, test_idx in stratified_folds(rows, target, k=k, seed=seed):
        model = train([rows[i] for i in train_idx], target, config)
        fold_metrics.append(evaluate(model, [rows[i] for i in test_idx], target))
    return EvalReport(target=target, folds=fold_metrics, runtime_seconds=time.perf_counter() - started)


def run_experiment(
    primary: PrimaryDataset,
    specs: Sequence[AugmentationSpec],
    pool: Sequence[ProcessedDocument],
    rankings: SimilarityRanking | None = None,
    k: int = 5,
    seed: int = 0,
    config: TrainConfig | None = None,
) -> dict:
    """Baseline vs augmented comparison for both targets.

    Returns a deterministic report: per (target, model) mean metrics and the
    deltas against the baseline trained on the primary rows alone.
    """
    comparison: list[dict] = []
    baseline_rows = as_rows(primary.rows)
    for target in (IntentClass.BUG_REPORT, IntentClass.FEATURE_REQUEST):
        baseline = cross_validate(baseline_rows, target, k=k, seed=seed, config=config)
        comparison.append(
            {
                "target": target.value,
                "model": "baseline",
                "precision": baseline.mean_precision,
                "recall": baseline.mean_recall,
                "f1": baseline.mean_f1,
                "delta_precision": 0.0,
                "delta_recall": 0.0,
                "delta_f1": 0.0,
            }
        )
        for spec in specs:
            auxiliary, _ = select_auxiliary(list(pool), spec, len(primary.rows), rankings)
            dataset = augment(primary, auxiliary, spec)
            report = cross_validate(dataset.rows, target, k=k, seed=seed, config=config)
            model_name = f"{spec.method.value}@r={spec.ratio:g}"
            if spec.include_same_app:
                model_name += "+same"
            comparison.append(
                {
                    "target": target.value,
                    "model": model_name,
                    "precision": report.mean_precision,
                    "recall": report.mean_recall,
                    "f1": report.mean_f1,
                    "delta_precision": report.mean_precision - baseline.mean_precision,
                    "delta_recall": report.mean_recall - baseline.mean_recall,
                    "delta_f1": report.mean_f1 - baseline.mean_f1,
                }
            )
    return {"primary": primary.name, "k": k, "seed": seed, "rows": comparison}
