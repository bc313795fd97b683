"""Command-line interface and end-to-end pipeline orchestration.

Subcommands mirror the stages (harvest, filter, labels, extract, preprocess,
similar, augment, sweep, train-eval, experiment) plus ``pipeline``, which runs
filter -> labels -> extract -> preprocess -> augment -> train-eval on one
config and writes a content-hash manifest, and ``report``, which prints the
data funnel and the comparison table. Exit codes: 0 ok, 2 validation error,
3 stage failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import augmentation, classifier, extraction, github, ingestion, labels as labels_mod, similarity, textprep
from .augmentation import AugmentationSpec, Method
from .labels import IntentClass

logger = logging.getLogger("issueforge")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_STAGE_FAILURE = 3


class ValidationError(Exception):
    pass


class StageFailure(Exception):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


class MissingArtifact(Exception):
    pass


class _JsonLineFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {"level": record.levelname.lower(), "logger": record.name, "message": record.getMessage()}
        return json.dumps(payload, ensure_ascii=False)


def configure_logging(verbose: bool = False) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_JsonLineFormatter())
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


# --- pipeline config -------------------------------------------------------------

@dataclass
class PipelineConfig:
    seed: int
    corpus_dir: str
    primary_csv: str
    label_map: str
    lexicon: str | None = None
    patterns: str | None = None
    word_lists_dir: str | None = None
    min_labeled_issues: int = 30
    min_contributors: int = 2
    min_label_frequency: int = 11
    method: str = Method.BETWEEN_APP.value
    ratio: float = augmentation.DEFAULT_RATIO
    target_app: str | None = None
    top_k_similar: int = 3
    include_same_app: bool = False
    folds: int = 5
    epochs: int = 50
    learning_rate: float = 0.1
    l2: float = 1e-4

    @classmethod
    def from_file(cls, path: Path | str) -> "PipelineConfig":
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"config file not found: {path}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config is not valid JSON: {exc}")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        missing = [name for name in ("seed", "corpus_dir", "primary_csv", "label_map") if name not in raw]
        if missing:
            raise ValidationError(f"config missing required keys: {missing}")
        config = cls(**raw)
        config.validate(base=path.parent)
        return config

    def validate(self, base: Path | None = None) -> None:
        base = base or Path.cwd()

        def resolve(value: str) -> Path:
            p = Path(value)
            return p if p.is_absolute() else base / p

        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError("seed must be an integer")
        for name in ("corpus_dir", "primary_csv", "label_map"):
            value = getattr(self, name)
            resolved = resolve(value)
            if not resolved.exists():
                raise ValidationError(f"{name} does not exist: {resolved}")
            setattr(self, name, str(resolved))
        for name in ("lexicon", "patterns", "word_lists_dir"):
            value = getattr(self, name)
            if value is not None:
                resolved = resolve(value)
                if not resolved.exists():
                    raise ValidationError(f"{name} does not exist: {resolved}")
                setattr(self, name, str(resolved))
        if not 0.0 <= self.ratio <= 1.0:
            raise ValidationError(f"ratio must be in [0, 1], got {self.ratio}")
        try:
            Method(self.method)
        except ValueError:
            raise ValidationError(f"unknown method {self.method!r}")
        if Method(self.method) is not Method.BETWEEN_APP and not self.target_app:
            raise ValidationError(f"method {self.method!r} requires target_app")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _dump_json(obj, path: Path) -> Path:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


# --- pipeline -----------------------------------------------------------------------

def run_pipeline(config: PipelineConfig, out_dir: Path | str) -> Path:
    """Run all stages, writing outputs as .partial until the whole run succeeds."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lists = textprep.load_wordlists(config.word_lists_dir)
    patterns = extraction.load_patterns(config.patterns)
    lexicon_path = config.lexicon or str(Path(textprep.default_data_dir()) / "lexicon.tsv")
    lexicon = labels_mod.load_lexicon(lexicon_path, lists)
    label_map = augmentation.load_label_map(config.label_map)

    partial: dict[str, Path] = {}

    def stage_path(name: str) -> Path:
        path = out / f"{name}.partial"
        partial[name] = path
        return path

    current_stage = "filter"
    try:
        # stage 1: repository filtering
        corpus = ingestion.load_corpus(config.corpus_dir)
        issues_total = len(corpus.issues)
        corpus = ingestion.filter_repos(
            corpus,
            min_labeled_issues=config.min_labeled_issues,
            min_contributors=config.min_contributors,
        )
        corpus_dir = out / "corpus.partial"
        ingestion.write_corpus(corpus, corpus_dir)
        partial["corpus"] = corpus_dir
        logger.info("pipeline: filter kept %d repos / %d issues", len(corpus.repos), len(corpus.issues))

        # stage 2: label normalization and intent assignment
        current_stage = "labels"
        intents = labels_mod.assign_intents(corpus, lexicon, lists, config.min_label_frequency)
        with stage_path("labels.jsonl").open("w", encoding="utf-8") as handle:
            for issue in corpus.issues:
                if issue.issue_id in intents:
                    handle.write(
                        json.dumps(
                            {
                                "issue_id": issue.issue_id,
                                "repo_id": issue.repo_id,
                                "intents": sorted(i.value for i in intents[issue.issue_id]),
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
        logger.info("pipeline: labels assigned intents to %d/%d issues", len(intents), len(corpus.issues))

        # stage 3: target-section extraction (intent-labeled issues only)
        current_stage = "extract"
        extracted_rows = []
        per_pattern: dict[str, int] = {}
        modes: dict[str, int] = {}
        for issue in corpus.issues:
            if issue.issue_id not in intents:
                continue
            result = extraction.extract(issue, patterns, lists)
            if result is None:
                continue
            modes[result.mode.value] = modes.get(result.mode.value, 0) + 1
            if result.matched_pattern:
                per_pattern[result.matched_pattern] = per_pattern.get(result.matched_pattern, 0) + 1
            extracted_rows.append(
                {
                    "issue_id": issue.issue_id,
                    "repo_id": issue.repo_id,
                    "title": issue.title,
                    "text": result.text,
                    "mode": result.mode.value,
                    "matched_pattern": result.matched_pattern,
                    "intents": sorted(i.value for i in intents[issue.issue_id]),
                }
            )
        with stage_path("extracted.jsonl").open("w", encoding="utf-8") as handle:
            for row in extracted_rows:
                handle.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")
        funnel_report = {
            "funnel": {
                "issues_total": issues_total,
                "issues_filtered_corpus": len(corpus.issues),
                "issues_intent_labeled": len(intents),
                "issues_extracted": len(extracted_rows),
            },
            "modes": dict(sorted(modes.items())),
            "per_pattern": dict(sorted(per_pattern.items())),
        }
        _dump_json(funnel_report, stage_path("extraction_report.json"))
        logger.info("pipeline: extracted target text from %d issues", len(extracted_rows))

        # stage 4: preprocessing into the document pool
        current_stage = "preprocess"
        docs = _docs_from_extracted(extracted_rows, lists)
        augmentation.write_docs(docs, stage_path("docs.jsonl"))
        logger.info("pipeline: admitted %d documents", len(docs))

        # stage 5: primary loading and augmentation
        current_stage = "augment"
        primary = augmentation.load_primary(config.primary_csv, label_map, lists)
        method = Method(config.method)
        spec = AugmentationSpec(
            method=method,
            ratio=config.ratio,
            seed=config.seed,
            target_app=config.target_app if method is not Method.BETWEEN_APP else None,
            top_k_similar=config.top_k_similar,
            include_same_app=config.include_same_app,
        )
        rankings = None
        if method is Method.WITHIN_CONTEXT:
            profiles = similarity.build_profiles(corpus, lists)
            rankings = similarity.rank_similar(spec.target_app, profiles)
        auxiliary, shortfall = augmentation.select_auxiliary(docs, spec, len(primary.rows), rankings)
        dataset = augmentation.augment(primary, auxiliary, spec)
        dataset.shortfall = shortfall
        augmentation.write_augmented(dataset, stage_path("augmented.jsonl"))

        # stage 6: train and evaluate both binary targets
        current_stage = "train-eval"
        config_train = classifier.TrainConfig(
            epochs=config.epochs, learning_rate=config.learning_rate, l2=config.l2, seed=config.seed
        )
        report = {"k": config.folds, "seed": config.seed, "n_rows": len(dataset.rows)}
        for target in (IntentClass.BUG_REPORT, IntentClass.FEATURE_REQUEST):
            eval_report = classifier.cross_validate(
                dataset.rows, target, k=config.folds, seed=config.seed, config=config_train
            )
            report[target.value] = eval_report.as_dict()
        _dump_json(report, stage_path("report.json"))
    except Exception as exc:
        raise StageFailure(current_stage, exc) from exc

    # commit: drop the .partial suffix on every artifact, then write the manifest
    final_paths: dict[str, Path] = {}
    for name, path in partial.items():
        final = out / name
        if final.exists():
            if final.is_dir():
                for child in final.iterdir():
                    child.unlink()
                final.rmdir()
            else:
                final.unlink()
        path.rename(final)
        final_paths[name] = final

    artifacts = {}
    for name, path in sorted(final_paths.items()):
        if path.is_dir():
            digest = hashlib.sha256()
            for child in sorted(path.iterdir()):
                digest.update(child.name.encode())
                digest.update(bytes.fromhex(_sha256_file(child)))
            artifacts[name] = digest.hexdigest()
        else:
            artifacts[name] = _sha256_file(path)
    manifest = {"artifacts": artifacts, "config": config.as_dict(), "seed": config.seed}
    _dump_json(manifest, out / "manifest.json")
    logger.info("pipeline: wrote %d artifacts to %s", len(artifacts), out)
    return out


def _docs_from_extracted(extracted_rows: list[dict], lists: textprep.WordLists) -> list:
    """Title and body documents for every extracted issue, admission-filtered."""
    docs = []
    for row in extracted_rows:
        intents = frozenset(IntentClass(i) for i in row["intents"])
        title_tokens = textprep.preprocess(row["title"], lists)
        if textprep.admit(title_tokens, textprep.Source.ISSUE_TITLE, row["title"]):
            docs.append(
                textprep.ProcessedDocument(
                    doc_id=f"{row['issue_id']}:title",
                    source=textprep.Source.ISSUE_TITLE,
                    tokens=tuple(title_tokens),
                    intents=intents,
                    app_id=row["repo_id"],
                )
            )
        body_tokens = textprep.preprocess(row["text"], lists)
        if textprep.admit(body_tokens, textprep.Source.ISSUE_BODY):
            docs.append(
                textprep.ProcessedDocument(
                    doc_id=f"{row['issue_id']}:body",
                    source=textprep.Source.ISSUE_BODY,
                    tokens=tuple(body_tokens),
                    intents=intents,
                    app_id=row["repo_id"],
                )
            )
    docs.sort(key=lambda d: d.doc_id)
    return docs


def print_report(artifact_dir: Path | str, stream=None) -> dict:
    """Human-readable funnel and metric summary for a finished pipeline run."""
    stream = stream or sys.stdout
    out = Path(artifact_dir)
    extraction_report = out / "extraction_report.json"
    report_file = out / "report.json"
    docs_file = out / "docs.jsonl"
    for required in (extraction_report, report_file, docs_file):
        if not required.exists():
            raise MissingArtifact(str(required))
    funnel_data = json.loads(extraction_report.read_text(encoding="utf-8"))["funnel"]
    admitted_issues = {
        json.loads(line)["doc_id"].rsplit(":", 1)[0]
        for line in docs_file.read_text(encoding="utf-8").splitlines()
        if line.strip()
    }
    funnel = [
        ("raw issues", funnel_data["issues_filtered_corpus"]),
        ("intent-labeled", funnel_data["issues_intent_labeled"]),
        ("extracted", funnel_data["issues_extracted"]),
        ("admitted", len(admitted_issues)),
    ]
    print("Data funnel:", file=stream)
    for name, count in funnel:
        print(f"  {name:<16} {count}", file=stream)
    metrics = json.loads(report_file.read_text(encoding="utf-8"))
    print("Mean metrics per target:", file=stream)
    print(f"  {'target':<10} {'precision':>9} {'recall':>9} {'f1':>9}", file=stream)
    for target in ("bug", "feature"):
        if target in metrics:
            mean = metrics[target]["mean"]
            print(
                f"  {target:<10} {mean['precision']:>9.3f} {mean['recall']:>9.3f} {mean['f1']:>9.3f}",
                file=stream,
            )
    return {"funnel": funnel, "metrics": metrics}


# --- subcommand handlers ---------------------------------------------------------------

def _cmd_harvest(args) -> int:
    repo_names = [
        line.strip()
        for line in Path(args.repos).read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    token = os.environ.get(args.token_env) if args.token_env else None
    github.fetch_remote(
        repo_names,
        args.out,
        token=token,
        rate_limit=args.rate_limit,
        parallel=args.parallel,
        base_url=args.base_url,
    )
    return EXIT_OK


def _cmd_filter(args) -> int:
    corpus = ingestion.load_corpus(getattr(args, "in"))
    filtered = ingestion.filter_repos(corpus, args.min_issues, args.min_contributors)
    ingestion.write_corpus(filtered, args.out)
    print(f"kept {len(filtered.repos)}/{len(corpus.repos)} repos, {len(filtered.issues)} issues")
    return EXIT_OK


def _cmd_labels(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    corpus = ingestion.load_corpus(getattr(args, "in"))
    lexicon = labels_mod.load_lexicon(args.lexicon, lists)
    intents = labels_mod.assign_intents(corpus, lexicon, lists, args.min_freq)
    with Path(args.out).open("w", encoding="utf-8") as handle:
        for issue in corpus.issues:
            if issue.issue_id in intents:
                handle.write(
                    json.dumps(
                        {
                            "issue_id": issue.issue_id,
                            "repo_id": issue.repo_id,
                            "intents": sorted(i.value for i in intents[issue.issue_id]),
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )
    print(f"assigned intents to {len(intents)}/{len(corpus.issues)} issues")
    return EXIT_OK


def _cmd_extract(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    corpus = ingestion.load_corpus(getattr(args, "in"))
    patterns = extraction.load_patterns(args.patterns)
    intents: dict[str, list[str]] = {}
    if args.labels:
        for line in Path(args.labels).read_text(encoding="utf-8").splitlines():
            if line.strip():
                row = json.loads(line)
                intents[row["issue_id"]] = row["intents"]
    per_pattern: dict[str, int] = {}
    modes: dict[str, int] = {}
    n_considered = 0
    with Path(args.out).open("w", encoding="utf-8") as handle:
        for issue in corpus.issues:
            if args.labels and issue.issue_id not in intents:
                continue
            n_considered += 1
            result = extraction.extract(issue, patterns, lists)
            if result is None:
                continue
            modes[result.mode.value] = modes.get(result.mode.value, 0) + 1
            if result.matched_pattern:
                per_pattern[result.matched_pattern] = per_pattern.get(result.matched_pattern, 0) + 1
            handle.write(
                json.dumps(
                    {
                        "issue_id": issue.issue_id,
                        "repo_id": issue.repo_id,
                        "title": issue.title,
                        "text": result.text,
                        "mode": result.mode.value,
                        "matched_pattern": result.matched_pattern,
                        "intents": intents.get(issue.issue_id, []),
                    },
                    sort_keys=True,
                    ensure_ascii=False,
                )
                + "\n"
            )
    n_extracted = sum(modes.values())
    if args.report:
        _dump_json(
            {
                "considered": n_considered,
                "extracted": n_extracted,
                "modes": dict(sorted(modes.items())),
                "per_pattern": dict(sorted(per_pattern.items())),
            },
            Path(args.report),
        )
    print(f"extracted {n_extracted}/{n_considered} issues")
    return EXIT_OK


def _cmd_preprocess(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    extracted_rows = [
        json.loads(line)
        for line in Path(getattr(args, "in")).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    docs = _docs_from_extracted(extracted_rows, lists)
    augmentation.write_docs(docs, args.out)
    print(f"admitted {len(docs)} documents from {len(extracted_rows)} extracted issues")
    return EXIT_OK


def _cmd_similar(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    corpus = ingestion.load_corpus(getattr(args, "in"))
    profiles = similarity.build_profiles(corpus, lists)
    ranking = similarity.rank_similar(args.query, profiles)
    payload = {
        "query_repo": ranking.query_repo,
        "ranked": [[repo_id, score] for repo_id, score in ranking.ranked],
        "top": [repo_id for repo_id, _ in ranking.ranked[: args.top]],
    }
    _dump_json(payload, Path(args.out))
    print(f"top {args.top} similar to {args.query}: {payload['top']}")
    return EXIT_OK


def _make_spec(args, seed: int) -> AugmentationSpec:
    method = Method(args.method)
    return AugmentationSpec(
        method=method,
        ratio=args.ratio,
        seed=seed,
        target_app=args.app if method is not Method.BETWEEN_APP else None,
        top_k_similar=args.top,
        include_same_app=args.include_same_app,
    )


def _rankings_for(args, spec: AugmentationSpec, lists) -> similarity.SimilarityRanking | None:
    if spec.method is not Method.WITHIN_CONTEXT:
        return None
    if not args.corpus:
        raise ValidationError("within-context augmentation requires --corpus for profiles")
    corpus = ingestion.load_corpus(args.corpus)
    profiles = similarity.build_profiles(corpus, lists)
    return similarity.rank_similar(spec.target_app, profiles)


def _cmd_augment(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    label_map = augmentation.load_label_map(args.labelmap)
    primary = augmentation.load_primary(args.primary, label_map, lists)
    pool = augmentation.load_docs(args.pool)
    spec = _make_spec(args, args.seed)
    rankings = _rankings_for(args, spec, lists)
    auxiliary, shortfall = augmentation.select_auxiliary(pool, spec, len(primary.rows), rankings)
    dataset = augmentation.augment(primary, auxiliary, spec)
    dataset.shortfall = shortfall
    augmentation.write_augmented(dataset, args.out)
    counts = dataset.origin_counts()
    print(f"wrote {counts['primary']} primary + {counts['auxiliary']} auxiliary rows")
    return EXIT_OK


def _parse_ratios(text: str) -> list[float]:
    """Either "start:stop:step" or a comma-separated list."""
    if ":" in text:
        start_s, stop_s, step_s = text.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
        ratios = []
        value = start
        while value <= stop + 1e-9:
            ratios.append(round(value, 10))
            value += step
        return ratios
    return [float(part) for part in text.split(",") if part.strip()]


def _cmd_sweep(args) -> int:
    lists = textprep.load_wordlists(args.lists)
    label_map = augmentation.load_label_map(args.labelmap)
    primary = augmentation.load_primary(args.primary, label_map, lists)
    pool = augmentation.load_docs(args.pool)
    ratios = _parse_ratios(args.ratios)
    method = Method(args.method)
    rankings = None
    if method is Method.WITHIN_CONTEXT:
        probe = AugmentationSpec(method=method, ratio=0.0, seed=args.seed, target_app=args.app)
        rankings = _rankings_for(args, probe, lists)
    datasets = augmentation.sweep(
        primary,
        pool,
        ratios,
        args.seed,
        method=method,
        target_app=args.app if method is not Method.BETWEEN_APP else None,
        rankings=rankings,
        top_k_similar=args.top,
        include_same_app=args.include_same_app,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = augmentation.sweep_table(datasets)
    config = classifier.TrainConfig(seed=args.seed)
    trend_rows = []
    for dataset, info in zip(datasets, table):
        name = f"augmented_r{info['ratio']:g}.jsonl"
        augmentation.write_augmented(dataset, out_dir / name)
        row = dict(info)
        row["file"] = name
        if args.train:
            for target in (IntentClass.BUG_REPORT, IntentClass.FEATURE_REQUEST):
                report = classifier.cross_validate(
                    dataset.rows, target, k=args.k, seed=args.seed, config=config
                )
                row[f"{target.value}_precision"] = report.mean_precision
                row[f"{target.value}_recall"] = report.mean_recall
                row[f"{target.value}_f1"] = report.mean_f1
        trend_rows.append(row)
    columns = list(trend_rows[0].keys())
    with (out_dir / "trend.tsv").open("w", encoding="utf-8") as handle:
        handle.write("\t".join(columns) + "\n")
        for row in trend_rows:
            handle.write("\t".join(_format_cell(row[c]) for c in columns) + "\n")
    print(f"wrote {len(datasets)} datasets and trend.tsv to {out_dir}")
    return EXIT_OK


def _format_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _cmd_train_eval(args) -> int:
    rows = augmentation.load_augmented(args.data)
    target = IntentClass.BUG_REPORT if args.target == "bug" else IntentClass.FEATURE_REQUEST
    report = classifier.cross_validate(rows, target, k=args.k, seed=args.seed)
    _dump_json(report.as_dict(), Path(args.out))
    print(
        f"{args.target}: precision={report.mean_precision:.3f} "
        f"recall={report.mean_recall:.3f} f1={report.mean_f1:.3f}"
    )
    return EXIT_OK


def _cmd_experiment(args) -> int:
    raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    lists = textprep.load_wordlists(raw.get("word_lists_dir"))
    label_map = augmentation.load_label_map(raw["label_map"])
    primary = augmentation.load_primary(raw["primary_csv"], label_map, lists)
    pool = augmentation.load_docs(raw["pool"])
    seed = raw.get("seed", 0)
    specs = [
        AugmentationSpec(
            method=Method(s["method"]),
            ratio=s.get("ratio", augmentation.DEFAULT_RATIO),
            seed=s.get("seed", seed),
            target_app=s.get("target_app"),
            top_k_similar=s.get("top_k_similar", 3),
            include_same_app=s.get("include_same_app", False),
        )
        for s in raw.get("specs", [])
    ]
    rankings = None
    if any(spec.method is Method.WITHIN_CONTEXT for spec in specs):
        corpus = ingestion.load_corpus(raw["corpus_dir"])
        profiles = similarity.build_profiles(corpus, lists)
        target_app = next(s.target_app for s in specs if s.method is Method.WITHIN_CONTEXT)
        rankings = similarity.rank_similar(target_app, profiles)
    report = classifier.run_experiment(
        primary, specs, pool, rankings=rankings, k=raw.get("k", 5), seed=seed
    )
    columns = ["target", "model", "precision", "recall", "f1", "delta_precision", "delta_recall", "delta_f1"]
    with Path(args.out).open("w", encoding="utf-8") as handle:
        handle.write("\t".join(columns) + "\n")
        for row in report["rows"]:
            handle.write("\t".join(_format_cell(row[c]) for c in columns) + "\n")
    print(f"wrote comparison for {len(report['rows'])} models to {args.out}")
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    config = PipelineConfig.from_file(args.config)
    run_pipeline(config, args.out)
    print(f"pipeline complete: {args.out}")
    return EXIT_OK


def _cmd_report(args) -> int:
    print_report(args.artifact_dir)
    return EXIT_OK


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="issueforge")
    parser.add_argument("--verbose", action="store_true", help="debug-level logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harvest", help="fetch repos/issues/templates into a corpus directory")
    p.add_argument("--repos", required=True, help="file with one full_name per line")
    p.add_argument("--out", required=True)
    p.add_argument("--token-env", default=None, help="env var holding the API token")
    p.add_argument("--parallel", type=int, default=4)
    p.add_argument("--rate-limit", type=int, default=5000, help="requests per hour")
    p.add_argument("--base-url", default="https://api.github.com")
    p.set_defaults(func=_cmd_harvest)

    p = sub.add_parser("filter", help="apply repository activity filters")
    p.add_argument("--in", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-issues", type=int, default=30)
    p.add_argument("--min-contributors", type=int, default=2)
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("labels", help="normalize labels and assign intent classes")
    p.add_argument("--in", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--min-freq", type=int, default=11)
    p.add_argument("--out", required=True)
    p.add_argument("--lists", default=None)
    p.set_defaults(func=_cmd_labels)

    p = sub.add_parser("extract", help="extract target sections from issue bodies")
    p.add_argument("--in", required=True)
    p.add_argument("--patterns", default=None)
    p.add_argument("--labels", default=None, help="labels.jsonl to filter/annotate issues")
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    p.add_argument("--lists", default=None)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("preprocess", help="turn extracted issues into processed documents")
    p.add_argument("--in", required=True)
    p.add_argument("--lists", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("similar", help="rank repositories by profile similarity")
    p.add_argument("--in", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--top", type=int, default=3)
    p.add_argument("--out", required=True)
    p.add_argument("--lists", default=None)
    p.set_defaults(func=_cmd_similar)

    p = sub.add_parser("augment", help="merge a primary dataset with auxiliary issue documents")
    p.add_argument("--primary", required=True)
    p.add_argument("--labelmap", required=True)
    p.add_argument("--pool", required=True)
    p.add_argument("--method", required=True, choices=[m.value for m in Method])
    p.add_argument("--app", default=None)
    p.add_argument("--ratio", type=float, default=augmentation.DEFAULT_RATIO)
    p.add_argument("--top", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-same-app", action="store_true")
    p.add_argument("--corpus", default=None, help="corpus dir (profiles for within-context)")
    p.add_argument("--lists", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("sweep", help="augment at a range of volume ratios")
    p.add_argument("--primary", required=True)
    p.add_argument("--labelmap", required=True)
    p.add_argument("--pool", required=True)
    p.add_argument("--ratios", default="0:1:0.1", help='"start:stop:step" or comma list')
    p.add_argument("--method", default=Method.BETWEEN_APP.value, choices=[m.value for m in Method])
    p.add_argument("--app", default=None)
    p.add_argument("--top", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-same-app", action="store_true")
    p.add_argument("--corpus", default=None)
    p.add_argument("--lists", default=None)
    p.add_argument("--train", action="store_true", help="cross-validate each ratio for the trend table")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("train-eval", help="stratified cross-validation of one binary target")
    p.add_argument("--data", required=True)
    p.add_argument("--target", required=True, choices=["bug", "feature"])
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_train_eval)

    p = sub.add_parser("experiment", help="baseline vs augmented comparison from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("pipeline", help="run the whole pipeline from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("report", help="print funnel and metrics for a pipeline output dir")
    p.add_argument("artifact_dir")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except (ValidationError, augmentation.UnknownLabel) as exc:
        logger.error("validation error: %s", exc)
        return EXIT_VALIDATION
    except StageFailure as exc:
        logger.error("%s", exc)
        return EXIT_STAGE_FAILURE
    except (
        ingestion.CorpusError,
        extraction.TemplateParseError,
        extraction.MissingGold,
        similarity.EmptyProfile,
        augmentation.EmptyPool,
        classifier.TooFewRows,
        classifier.DegenerateLabels,
        MissingArtifact,
        github.AuthFailure,
        github.RateLimited,
        FileNotFoundError,
    ) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_STAGE_FAILURE


if __name__ == "__main__":
    sys.exit(main())
