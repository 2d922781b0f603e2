"""Command-line entry point.

Subcommands:
  sweep    --config <file> --out <csv> [--workers N]
  figure   <fig1|fig2|fig3a|fig3b|fig4|fig5|fig6> --out <csv> [--workers N]
  validate

Exit codes: 0 ok, 1 configuration error, 2 invariant failure.  The
QLEARNRATE_WORKERS environment variable overrides any worker setting.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigurationError, QLearnRateError
from .sweep import FIGURE_IDS, RunConfig, figure_dataset, write_sweep_csv


def _cmd_sweep(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = RunConfig.from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError) as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return 1
    records = write_sweep_csv(cfg, args.out, args.workers)
    print(f"wrote {len(records)} rows to {args.out} (config {cfg.digest()})")
    return 0


def _cmd_figure(args) -> int:
    text = figure_dataset(args.figure, args.workers)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {args.figure} dataset to {args.out}")
    return 0


def _cmd_validate(_args) -> int:
    from .validate import run_all

    results = run_all()
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.detail} (margin {r.margin:+.3e})")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} invariants hold")
    return 0 if failed == 0 else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qlearnrate",
                                     description="Learning-rate sweeps for driven quantum systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep from a JSON config")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="emit the CSV dataset behind a figure preset")
    p_fig.add_argument("figure", choices=FIGURE_IDS)
    p_fig.add_argument("--out", required=True)
    p_fig.add_argument("--workers", type=int, default=None)
    p_fig.set_defaults(func=_cmd_figure)

    p_val = sub.add_parser("validate", help="run the invariant suite")
    p_val.set_defaults(func=_cmd_validate)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 1
    except QLearnRateError as err:
        print(f"invariant failure: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
