"""Differential force and gradient curves for both prescriptions.

    python scripts/sweep_curves.py --out curves.csv --workers 4
"""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path

from casimir_diff.config import RunConfig, load_config
from casimir_diff.sweep import format_csv, run_sweep, summary


@dataclass
class Experiment:
    config: Path | None = None
    out: Path = Path("curves.csv")
    workers: int = 1


def run(exp: Experiment):
    cfg = load_config(exp.config) if exp.config else RunConfig()
    rows = run_sweep(cfg.sweep.grid(), cfg.geometry, cfg.thermal, cfg.quadrature, workers=exp.workers)
    exp.out.write_text(format_csv(rows))
    print(summary(rows, cfg.geometry))
    return rows


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path, default=Experiment.out)
    p.add_argument("--workers", type=int, default=1)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    run(Experiment(**vars(p.parse_args())))
