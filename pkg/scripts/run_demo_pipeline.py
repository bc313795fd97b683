#!/usr/bin/env python3
"""Run the full pipeline on the bundled demo corpus and print the report.

Usage: python scripts/run_demo_pipeline.py [out_dir]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from issueforge.cli import PipelineConfig, configure_logging, print_report, run_pipeline
from issueforge.textprep import default_data_dir


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_run")
    configure_logging()
    config = PipelineConfig.from_file(default_data_dir() / "demo_corpus" / "demo_config.json")
    run_pipeline(config, out_dir)
    print_report(out_dir)
    print(f"\nartifacts in {out_dir}/ (see manifest.json for content hashes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
