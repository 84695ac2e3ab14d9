"""Command-line front end.

    casimir-diff sweep --config run.ini [--out curves.csv] [--workers N]
    casimir-diff validate [--tol-scale X] [--csv report.csv]
    casimir-diff materials --config run.ini [--out eps.csv]

Exit status: 0 success, 1 configuration error, 2 numerical failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config
from .errors import ConfigurationError, DomainError
from .sweep import format_csv, run_sweep, summary
from .validation import format_csv as validation_csv
from .validation import format_table, run_limit_suite

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

log = logging.getLogger("casimir_diff")


def _write(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_sweep(args) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    out = Path(args.out) if args.out else config.output
    grid = config.sweep.grid()
    log.info("sweeping %d separations with %d worker(s)", len(grid), args.workers)
    rows = run_sweep(grid, config.geometry, config.thermal, config.quadrature, workers=args.workers)
    _write(format_csv(rows), out)
    report = summary(rows, config.geometry)
    # keep stdout clean for data when the CSV goes there
    print(report, file=sys.stderr if out is None else sys.stdout)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_NUMERIC


def cmd_validate(args) -> int:
    reports = run_limit_suite(tol_scale=args.tol_scale)
    print(format_table(reports))
    if args.csv:
        Path(args.csv).write_text(validation_csv(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NUMERIC


def cmd_materials(args) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    if not (0.0 < args.xi_min < args.xi_max) or args.points < 2:
        raise ConfigurationError("need 0 < xi-min < xi-max and points >= 2")
    xi = np.geomspace(args.xi_min, args.xi_max, args.points)
    names = list(config.materials)
    lines = [",".join(["xi_rad_s", *names])]
    columns = [np.asarray(config.materials[n].epsilon(xi), dtype=float) for n in names]
    for i, x in enumerate(xi):
        lines.append(",".join([f"{x:.17g}", *(f"{col[i]:.17g}" for col in columns)]))
    _write("\n".join(lines) + "\n", Path(args.out) if args.out else None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="casimir-diff", description=__doc__.split("\n")[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress messages")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="compute dF and dF' curves for both prescriptions")
    p.add_argument("--config", help="run configuration file (defaults apply if omitted)")
    p.add_argument("--out", help="CSV output path (overrides [output] path)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the closed-form limit checks")
    p.add_argument("--tol-scale", type=float, default=1.0, help="multiply every tolerance")
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("materials", help="tabulate eps(i xi) of the configured materials")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--xi-min", type=float, default=1e12)
    p.add_argument("--xi-max", type=float, default=1e17)
    p.add_argument("--points", type=int, default=51)
    p.set_defaults(func=cmd_materials)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
