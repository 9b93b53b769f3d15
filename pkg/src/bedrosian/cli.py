"""``bedrosian`` command line.

Exit codes: 0 pass (or a nontrivial multiplier exists), 1 checked and
failed, 2 invalid input with a one-line diagnostic on stderr.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import commands
from .config import AnalysisConfig, load_config
from .errors import BedrosianError, ConfigError
from .report import dumps
from .suite import SELECTORS


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bedrosian",
                                description="Bedrosian identities for Fourier multipliers on frequency grids.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--config", required=True, help="analysis configuration (JSON)")
        s.add_argument("--out", help="write the JSON report here instead of stdout")
        s.add_argument("--seed", type=int, help="override the config seed")
        s.add_argument("--trials", type=int, help="override the config trial count")
        s.add_argument("--tol", type=float,
                       help="override both constancy_tol and residual_tol")
        return s

    s = common("analyze", "characteristic sets and merged classes of (A, B)")
    s.add_argument("--raster", help="directory for PGM images and masks.json")
    s = common("decide", "does a non-scalar Bedrosian multiplier exist?")
    s.add_argument("--witness", help="write the witness multiplier table (JSON) here")
    s = common("check", "structural test of the configured multiplier")
    s.add_argument("--oracle", action="store_true", help="also run the pointwise criterion oracle")
    s = common("verify", "seeded numerical residual trials")
    s.add_argument("--csv", help="write per-trial residuals (seed,residual) here")
    s.add_argument("--signals", help="directory for the first trial's f and g samples")
    common("hsupport", "support-set test for all partial Hilbert transforms")

    s = sub.add_parser("examples", help="run built-in examples against known verdicts")
    s.add_argument("selector", help=f"one of {', '.join(SELECTORS)}")
    s.add_argument("--out", help="write the JSON report here instead of stdout")
    return p


def _apply_overrides(cfg: AnalysisConfig, args) -> AnalysisConfig:
    changes = {}
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed", "must be >= 0")
        changes["seed"] = args.seed
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError("--trials", "must be >= 1")
        changes["trials"] = args.trials
    if args.tol is not None:
        if not args.tol > 0:
            raise ConfigError("--tol", "must be positive")
        changes["constancy_tol"] = changes["residual_tol"] = args.tol
    return dataclasses.replace(cfg, **changes) if changes else cfg


def _dispatch(args) -> commands.CommandResult:
    if args.command == "examples":
        return commands.cmd_examples(args.selector)
    cfg = _apply_overrides(load_config(args.config), args)
    if args.command == "analyze":
        return commands.cmd_analyze(cfg, raster=args.raster is not None)
    if args.command == "decide":
        return commands.cmd_decide(cfg, witness=args.witness is not None)
    if args.command == "check":
        return commands.cmd_check(cfg, oracle=args.oracle)
    if args.command == "verify":
        return commands.cmd_verify(cfg, signals=args.signals is not None)
    return commands.cmd_hsupport(cfg)


def _targets(args, result) -> dict[Path, object]:
    """Map artifact names to output paths requested on the command line."""
    out = {}
    arts = result.artifacts
    if getattr(args, "raster", None):
        out.update({Path(args.raster) / name: data for name, data in arts.items()})
    if getattr(args, "witness", None) and "witness.json" in arts:
        out[Path(args.witness)] = arts["witness.json"]
    if getattr(args, "csv", None):
        out[Path(args.csv)] = arts["residuals.csv"]
    if getattr(args, "signals", None):
        out.update({Path(args.signals) / name: data for name, data in arts.items()
                    if name.startswith(("f.", "g."))})
    return out


def _write(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        result = _dispatch(args)
    except BedrosianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = dict(result.report, exit_code=result.exit_code)
    if getattr(args, "witness", None) and "witness.json" not in result.artifacts:
        report["warnings"] = report["warnings"] + ["no witness written: only scalar multipliers qualify"]
    text = dumps(report)
    try:
        for path, data in _targets(args, result).items():
            _write(path, data)
        if args.out:
            _write(Path(args.out), text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
