"""Command-line front end: configure grids and tolerances, run experiments,
write CSV and human-readable reports.

Usage:
    czlab <experiment> [flags]

with experiment one of counterexample, mollify, interpolate, weakderiv,
czratio, all.  Flag values override config-file values, which override
defaults; the environment variable CZLAB_OUT overrides only the default
output directory (an explicit --out always wins).  Exit status is 0 iff
every requested experiment's verdict is true and all accuracy flags are
set; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields as dc_fields, replace
from pathlib import Path

from .experiments import (ConfigurationError, SequenceReport,
                          default_counterexample_grid,
                          default_interpolation_grid,
                          default_mollification_grid, run_counterexample,
                          run_cz_estimator, run_interpolation,
                          run_mollification, run_weak_derivative_check)
from .fields import DomainError, ParameterError, SlopeBoundError
from .grids import DiscGrid, QuadratureScheme

CSV_SCHEMA_VERSION = 1

EXPERIMENTS = ("counterexample", "mollify", "interpolate", "weakderiv",
               "czratio", "all")


class UsageError(ValueError):
    """Bad flag, malformed number, unknown config key or violated
    experiment precondition."""


@dataclass
class RunConfig:
    experiment: str = "counterexample"
    nu_max: int = 12
    k: int = 0
    epsilons: tuple = (0.08, 0.04, 0.02, 0.01)
    p: float = 4.0
    n_radial: int | None = None   # per-experiment default when unset
    n_angular: int | None = None
    r_min: float | None = None
    target_tol: float = 1e-9
    max_refinements: int = 6
    out_dir: str = "."
    write_csv: bool = True

    def grid_sizes(self, default_radial, default_angular):
        return (self.n_radial or default_radial,
                self.n_angular or default_angular)

    def describe_pairs(self):
        pairs = []
        for f in dc_fields(self):
            val = getattr(self, f.name)
            if f.name == "epsilons":
                val = ",".join(_fmt(e) for e in val)
            pairs.append((f.name, val))
        return pairs


_CONFIG_KEYS = {f.name for f in dc_fields(RunConfig)} - {"experiment"}
# config files may use the flag spellings as well
_KEY_ALIASES = {"tol": "target_tol", "out": "out_dir", "csv": "write_csv"}


def _parse_epsilons(text):
    try:
        eps = tuple(float(tok) for tok in str(text).split(",") if tok.strip())
    except ValueError as exc:
        raise UsageError(f"malformed epsilon list {text!r}") from exc
    if not eps:
        raise UsageError("epsilon list is empty")
    return eps


def _read_config_file(path):
    """Flat 'key = value' lines; '#' starts a comment; unknown keys rejected."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        key = _KEY_ALIASES.get(key, key)
        val = val.strip()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = val
    return values


def _coerce(key, val):
    try:
        if key in ("nu_max", "k", "n_radial", "n_angular", "max_refinements"):
            return int(val)
        if key in ("p", "target_tol"):
            return float(val)
        if key == "r_min":
            return None if val.lower() in ("", "none") else float(val)
        if key == "epsilons":
            return _parse_epsilons(val)
        if key == "write_csv":
            if val.lower() in ("1", "true", "yes", "on"):
                return True
            if val.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(val)
        return val
    except ValueError as exc:
        raise UsageError(f"malformed value for {key}: {val!r}") from exc


def _validate(cfg: RunConfig):
    if cfg.experiment not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {cfg.experiment!r}")
    if cfg.nu_max < 0:
        raise UsageError("nu-max must be nonnegative")
    if cfg.experiment in ("counterexample", "all") and cfg.k not in (0, 1):
        raise UsageError("counterexample supports k = 0 and k = 1 only "
                         "(higher orders are not implemented)")
    if cfg.experiment == "czratio" and cfg.k != 0:
        raise UsageError("czratio supports k = 0 only")
    if any(not 0.0 < e < 0.1 for e in cfg.epsilons):
        raise UsageError("epsilons must lie in (0, 0.1)")
    if sorted(cfg.epsilons, reverse=True) != list(cfg.epsilons):
        raise UsageError("epsilons must be strictly decreasing")
    if cfg.p <= 2.0:
        raise UsageError("p must exceed 2")
    if cfg.target_tol <= 0.0:
        raise UsageError("tol must be positive")
    if cfg.n_radial is not None and cfg.n_radial < 2:
        raise UsageError("n-radial too small")
    if cfg.n_angular is not None and cfg.n_angular < 1:
        raise UsageError("n-angular too small")
    if cfg.r_min is not None and not 0.0 < cfg.r_min <= 0.5e-8:
        raise UsageError("r-min must lie in (0, 5e-9] for the radius-1/2 disc")


def parse_config(argv) -> RunConfig:
    """argv -> RunConfig; flags > config file > environment > defaults."""
    parser = argparse.ArgumentParser(
        prog="czlab", description=__doc__.split("\n\n")[0],
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", metavar="FILE", help="flat key = value config file")
    parser.add_argument("--nu-max", type=int, dest="nu_max")
    parser.add_argument("--k", type=int, dest="k")
    parser.add_argument("--epsilons", type=str, help="comma-separated, decreasing")
    parser.add_argument("--p", type=float)
    parser.add_argument("--n-radial", type=int, dest="n_radial")
    parser.add_argument("--n-angular", type=int, dest="n_angular")
    parser.add_argument("--r-min", type=float, dest="r_min")
    parser.add_argument("--tol", type=float, dest="target_tol")
    parser.add_argument("--max-refinements", type=int, dest="max_refinements")
    parser.add_argument("--out", type=str, dest="out_dir")
    csv_group = parser.add_mutually_exclusive_group()
    csv_group.add_argument("--csv", dest="write_csv", action="store_true", default=None)
    csv_group.add_argument("--no-csv", dest="write_csv", action="store_false", default=None)

    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:   # --help
            raise
        raise UsageError("bad command line") from exc

    cfg = RunConfig(experiment=ns.experiment)
    env_out = os.environ.get("CZLAB_OUT")
    if env_out:
        cfg = replace(cfg, out_dir=env_out)
    if ns.config:
        file_vals = _read_config_file(ns.config)
        cfg = replace(cfg, **{k: _coerce(k, v) for k, v in file_vals.items()})
    overrides = {}
    for key in _CONFIG_KEYS:
        val = getattr(ns, key, None)
        if val is not None:
            overrides[key] = _parse_epsilons(val) if key == "epsilons" else val
    cfg = replace(cfg, **overrides)
    _validate(cfg)
    return cfg


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit_csv(report: SequenceReport, path, config: RunConfig | None = None):
    """Write a report as CSV: header, one row per index, then a metadata
    block of '#'-prefixed lines (grid, tolerances, verdict, config echo).
    Floats carry 17 significant digits; output is byte-deterministic."""
    lines = [",".join(report.columns)]
    for row in report.rows:
        lines.append(",".join(_fmt(row[c]) for c in report.columns))
    meta = [
        ("schema_version", CSV_SCHEMA_VERSION),
        ("experiment", report.experiment),
        ("grid", report.grid_desc),
        ("quadrature", report.quad_desc),
        ("verdict", report.verdict),
        ("accuracy_ok", report.accuracy_ok),
    ]
    if not report.rows:
        meta.append(("empty", True))
    meta.extend(sorted(report.extras.items()))
    if config is not None:
        meta.extend(("config_" + k, v) for k, v in config.describe_pairs())
    for key, val in meta:
        lines.append(f"# {key} = {_fmt(val)}")
    text = "\n".join(lines) + "\n"
    try:
        Path(path).write_text(text, newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def _build_scheme(cfg):
    return QuadratureScheme(target_tol=cfg.target_tol,
                            max_refinements=cfg.max_refinements)


def _run_one(name, cfg) -> SequenceReport:
    if name == "counterexample":
        nr, na = cfg.grid_sizes(96, 64)
        mandatory = tuple(2.0 ** -nu for nu in range(2, cfg.nu_max + 1))
        grid = DiscGrid.build(0.5, nr, na, cfg.r_min, mandatory_radii=mandatory)
        return run_counterexample(cfg.k, cfg.nu_max, grid)
    if name == "mollify":
        nr, na = cfg.grid_sizes(36, 24)
        grid = DiscGrid.build(0.5, nr, na, cfg.r_min)
        return run_mollification(list(cfg.epsilons), grid)
    if name == "interpolate":
        nu_max = min(cfg.nu_max, 8)
        nr, na = cfg.grid_sizes(96, 16)
        return run_interpolation(nu_max, default_interpolation_grid(nu_max, nr, na))
    if name == "weakderiv":
        return run_weak_derivative_check(scheme=_build_scheme(cfg))
    if name == "czratio":
        nu_max = min(cfg.nu_max, 8)
        nr, na = cfg.grid_sizes(96, 64)
        mandatory = tuple(2.0 ** -nu for nu in range(2, nu_max + 1))
        grid = DiscGrid.build(0.5, nr, na, cfg.r_min, mandatory_radii=mandatory)
        return run_cz_estimator(0, cfg.p, scheme=_build_scheme(cfg),
                                nu_max=nu_max, grid=grid)
    raise UsageError(f"unknown experiment {name!r}")


_CSV_NAMES = {"counterexample": "counterexample.csv", "mollify": "mollification.csv",
              "interpolate": "interpolation.csv", "weakderiv": "weak_derivative.csv",
              "czratio": "cz_estimator.csv"}


def _print_report(report: SequenceReport, cfg: RunConfig, out):
    print(f"== {report.experiment} ==", file=out)
    print(f"   grid: {report.grid_desc}  quadrature: {report.quad_desc}", file=out)
    for key, val in cfg.describe_pairs():
        print(f"   config {key} = {_fmt(val)}", file=out)
    widths = [max(len(c), 12) for c in report.columns]
    print("   " + "  ".join(c.rjust(w) for c, w in zip(report.columns, widths)),
          file=out)
    for row in report.rows:
        cells = []
        for c, w in zip(report.columns, widths):
            v = row[c]
            cells.append((f"{v:.6g}" if isinstance(v, float) else _fmt(v)).rjust(w))
        print("   " + "  ".join(cells), file=out)
    for key, val in sorted(report.extras.items()):
        print(f"   {key} = {_fmt(val)}", file=out)
    print(f"   verdict: {'PASS' if report.verdict else 'FAIL'}"
          f"  accuracy_ok: {report.accuracy_ok}", file=out)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        names = [e for e in EXPERIMENTS if e != "all"] \
            if cfg.experiment == "all" else [cfg.experiment]
        out_dir = Path(cfg.out_dir)
        if cfg.write_csv:
            out_dir.mkdir(parents=True, exist_ok=True)
        all_ok = True
        for name in names:
            report = _run_one(name, cfg)
            _print_report(report, cfg, sys.stdout)
            if cfg.write_csv:
                path = emit_csv(report, out_dir / _CSV_NAMES[name], cfg)
                print(f"   csv: {path}", file=sys.stdout)
            all_ok = all_ok and report.verdict and report.accuracy_ok
        return 0 if all_ok else 1
    except UsageError as exc:
        print(f"czlab: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, ParameterError, DomainError, SlopeBoundError) as exc:
        print(f"czlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
