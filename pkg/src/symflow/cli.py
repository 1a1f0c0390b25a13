"""Command-line entry points.

    symflow run <config-path>       execute an experiment from a config file
    symflow check <checkpoint>      re-validate field invariants of a checkpoint
    symflow inequalities --seed S   run the inequality property campaigns

Exit status: 0 when every asserted inequality holds, 1 on a violation or
runtime failure, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, ExperimentConfig, load_config
from .harness import run_experiment, write_report
from .solver import BlowUpError, CFLViolation, ResolutionLossError


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    report = run_experiment(cfg)
    for name, ok in sorted(report.assertions.items()):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"outputs written to {cfg.output_dir}")
    return 0 if report.passed else 1


def _cmd_check(args) -> int:
    from .checkpoint import read_checkpoint
    from .spectral import validate_field
    try:
        field = read_checkpoint(args.checkpoint)
        validate_field(field)
    except (OSError, ValueError) as exc:
        print(f"FAIL  {args.checkpoint}: {exc}")
        return 1
    print(f"PASS  {args.checkpoint}: n={field.grid.n}, invariants hold")
    return 0


def _cmd_inequalities(args) -> int:
    cfg = ExperimentConfig(experiment="inequality_suite", seed=args.seed,
                           output_dir=args.out or "out",
                           raw={"experiment": "inequality_suite", "seed": str(args.seed)})
    report = run_experiment(cfg, write=args.out is not None)
    for name, ok in sorted(report.assertions.items()):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"worst Young margin: {report.summary['young_worst_margin']:.3e}; "
          f"max Ladyzhenskaya ratio: {report.summary['ladyzhenskaya_max_ratio']:.4f}")
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="symflow", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment from a config file")
    p_run.add_argument("config")
    p_run.set_defaults(func=_cmd_run)

    p_check = sub.add_parser("check", help="re-validate a checkpoint's field invariants")
    p_check.add_argument("checkpoint")
    p_check.set_defaults(func=_cmd_check)

    p_ineq = sub.add_parser("inequalities", help="run the inequality property campaigns")
    p_ineq.add_argument("--seed", type=int, default=0)
    p_ineq.add_argument("--out", default=None, help="optional output directory")
    p_ineq.set_defaults(func=_cmd_inequalities)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (CFLViolation, BlowUpError, ResolutionLossError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
