"""Closed-form limit checks, optionally at a tighter quadrature tolerance."""

import argparse
from dataclasses import dataclass

from casimir_diff.lifshitz import QuadratureSpec
from casimir_diff.validation import format_table, run_limit_suite


@dataclass
class Experiment:
    rel_tol: float = 1e-9
    tol_scale: float = 1.0


def run(exp: Experiment):
    reports = run_limit_suite(QuadratureSpec(rel_tol=exp.rel_tol), tol_scale=exp.tol_scale)
    print(format_table(reports))
    return reports


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--rel-tol", type=float, default=Experiment.rel_tol)
    p.add_argument("--tol-scale", type=float, default=Experiment.tol_scale)
    run(Experiment(**vars(p.parse_args())))
