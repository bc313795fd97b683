#!/usr/bin/env python3
"""Sweep the auxiliary volume ratio from 0 to 1 on the synthetic corpus and
print the recall/F1 trend per target, showing where augmentation pays off.

Usage: python scripts/volume_ratio_sweep.py [seed]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from issueforge import augmentation, classifier, textprep
from issueforge.labels import IntentClass
from issueforge.textprep import default_data_dir


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    lists = textprep.load_wordlists()
    base = default_data_dir() / "synthetic_recall"
    label_map = {
        "bug": IntentClass.BUG_REPORT,
        "feature": IntentClass.FEATURE_REQUEST,
        "other": IntentClass.OTHER,
    }
    primary = augmentation.load_primary(base / "primary.csv", label_map, lists)
    pool = augmentation.load_docs(base / "pool.jsonl")
    ratios = [round(i / 10, 1) for i in range(11)]
    datasets = augmentation.sweep(primary, pool, ratios, seed=seed)

    print(f"primary rows: {len(primary.rows)}, pool: {len(pool)} docs, seed: {seed}")
    header = f"{'r':>4} {'n_aux':>6} {'short':>6}"
    for target in ("bug", "feature"):
        header += f" {target + '_P':>10} {target + '_R':>10} {target + '_F1':>10}"
    print(header)
    for dataset, info in zip(datasets, augmentation.sweep_table(datasets)):
        line = f"{info['ratio']:>4.1f} {info['n_auxiliary']:>6} {info['shortfall']:>6}"
        for target in (IntentClass.BUG_REPORT, IntentClass.FEATURE_REQUEST):
            report = classifier.cross_validate(dataset.rows, target, seed=seed)
            line += f" {report.mean_precision:>10.3f} {report.mean_recall:>10.3f} {report.mean_f1:>10.3f}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
