"""Command implementations shared by the CLI and the tests.

Every command returns a :class:`CommandResult`: the JSON report, the exit
code (0 pass or exists, 1 checked and failed) and the side files to write.
Nothing touches the filesystem here; the caller writes everything once, at
the end. Invalid input raises :class:`ConfigError`, mapped to exit code 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .config import AnalysisConfig
from .errors import ConfigError
from .geometry import (CharacteristicDecomposition, central_slices, characteristic_decomposition,
                       pgm_bytes, rasterize)
from .grid import RegionMask
from .multipliers import (existence_decision, hilbert_support_test, structural_bedrosian_check,
                          witness_table)
from .suite import SELECTORS, run_example, select
from .verification import pointwise_criterion_oracle, run_trials, signal_pair, clip_to_half_window


@dataclass
class CommandResult:
    report: dict
    exit_code: int
    artifacts: dict = field(default_factory=dict)  # relative name -> str | bytes


def _base(command: str, cfg: AnalysisConfig) -> dict:
    return {"command": command, "config": cfg.to_json(), "warnings": []}


def _masks(cfg: AnalysisConfig, allow_empty: bool = False) -> tuple[RegionMask, RegionMask]:
    out = []
    for name, desc in (("set_a", cfg.set_a), ("set_b", cfg.set_b)):
        if desc is None:
            raise ConfigError(name, "missing field")
        mask = rasterize(desc, cfg.grid)
        if mask.is_empty() and not allow_empty:
            raise ConfigError(name, "region has no occupied bin on this grid")
        out.append(mask)
    return out[0], out[1]


def _multiplier(cfg: AnalysisConfig):
    if cfg.multiplier is None:
        raise ConfigError("multiplier", "missing field")
    return cfg.multiplier.build(cfg.grid)


def _decompose(cfg: AnalysisConfig, report: dict) -> CharacteristicDecomposition:
    a, b = _masks(cfg)
    decomp = characteristic_decomposition(a, b)
    report["decomposition"] = decomp.summary()
    if decomp.clipped:
        report["warnings"].append(
            "unbounded or window-exceeding set truncated to the grid; verdicts use the central half-window")
    return decomp


def _structures(decomp: CharacteristicDecomposition) -> dict:
    """Named boolean arrays on the base window: components, classes, free region."""
    out = {}
    for i, m in enumerate(decomp.a_components.masks(), start=1):
        out[f"a_component_{i}"] = m.occupancy
    for j, m in enumerate(decomp.b_components.masks(), start=1):
        out[f"b_component_{j}"] = m.occupancy
    for q in range(1, decomp.class_count + 1):
        out[f"class_{q}"] = decomp.class_mask_base(q).occupancy
    out["free_region"] = decomp.free_region.occupancy
    return out


def raster_artifacts(decomp: CharacteristicDecomposition) -> dict:
    """PGM images (d = 2 whole window, d = 3 central slices) plus a JSON bin-index dump."""
    files = {}
    dim = decomp.grid.dim
    structures = _structures(decomp)
    for name, occ in structures.items():
        if dim == 2:
            files[f"{name}.pgm"] = pgm_bytes(occ)
        elif dim == 3:
            for axis, sl in central_slices(occ).items():
                files[f"{name}_{axis}.pgm"] = pgm_bytes(sl)
    grid = decomp.grid
    dump = {
        "grid": grid.to_dict(),
        "index_origin": "bin k sits at coordinate k * bin_step",
        "structures": {name: RegionMask(grid, occ).indices().tolist()
                       for name, occ in structures.items()},
    }
    files["masks.json"] = json.dumps(dump, sort_keys=True) + "\n"
    return files


def cmd_analyze(cfg: AnalysisConfig, raster: bool = False) -> CommandResult:
    report = _base("analyze", cfg)
    decomp = _decompose(cfg, report)
    files = raster_artifacts(decomp) if raster else {}
    if raster and cfg.grid.dim == 1:
        report["warnings"].append("no PGM images for dim 1; masks.json only")
    report["status"] = "ok"
    return CommandResult(report, 0, files)


def cmd_decide(cfg: AnalysisConfig, witness: bool = False) -> CommandResult:
    report = _base("decide", cfg)
    decomp = _decompose(cfg, report)
    existence = existence_decision(decomp)
    report["existence"] = existence.to_json()
    files = {}
    if witness and existence.exists_nontrivial:
        files["witness.json"] = json.dumps(witness_table(decomp), sort_keys=True) + "\n"
    exists = existence.exists_nontrivial
    report["status"] = "exists" if exists else "not_exists"
    return CommandResult(report, 0 if exists else 1, files)


def cmd_check(cfg: AnalysisConfig, oracle: bool = False) -> CommandResult:
    report = _base("check", cfg)
    m = _multiplier(cfg)
    decomp = _decompose(cfg, report)
    verdict = structural_bedrosian_check(m, decomp, cfg.constancy_tol)
    report["structural"] = verdict.to_json()
    if oracle:
        report["pointwise_oracle"] = pointwise_criterion_oracle(
            m, decomp.a, decomp.b, cfg.constancy_tol).to_json()
    report["status"] = "pass" if verdict.passed else "fail"
    return CommandResult(report, 0 if verdict.passed else 1)


def cmd_verify(cfg: AnalysisConfig, signals: bool = False) -> CommandResult:
    report = _base("verify", cfg)
    m = _multiplier(cfg)
    a, b = _masks(cfg)
    result = run_trials(m, a, b, cfg.trials, cfg.seed, cfg.residual_tol)
    report["verification"] = result.to_json()
    report["warnings"].extend(result.warnings)
    files = {"residuals.csv": result.to_csv()}
    if signals:
        f, g = signal_pair(clip_to_half_window(a)[0], clip_to_half_window(b)[0], cfg.seed)
        for name, s in (("f", f), ("g", g)):
            files[f"{name}.c16"] = s.to_bytes()
            files[f"{name}.c16.json"] = json.dumps(s.metadata(), indent=2, sort_keys=True) + "\n"
    report["status"] = "pass" if result.passed else "fail"
    return CommandResult(report, 0 if result.passed else 1, files)


def cmd_hsupport(cfg: AnalysisConfig) -> CommandResult:
    report = _base("hsupport", cfg)
    a, b = _masks(cfg, allow_empty=True)
    hs = hilbert_support_test(a, b)
    report["support"] = hs.to_json()
    report["status"] = "pass" if hs.passed else "fail"
    return CommandResult(report, 0 if hs.passed else 1)


def cmd_examples(selector: str) -> CommandResult:
    try:
        chosen = select(selector)
    except KeyError:
        raise ConfigError("selector", f"unknown example {selector!r}; choose from {', '.join(SELECTORS)}") from None
    rows = [run_example(ex) for ex in chosen]
    mismatches = [r["id"] for r in rows if not r["match"]]
    report = {
        "command": "examples",
        "selector": selector,
        "examples": rows,
        "mismatches": mismatches,
        "warnings": [],
        "status": "pass" if not mismatches else "fail",
    }
    return CommandResult(report, 0 if not mismatches else 1)
