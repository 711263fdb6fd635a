"""Command-line harness for the transform experiments.

Subcommands: ``transform``, ``converge``, ``weaktype``, ``prange``.  Each
takes a JSON config file plus command-line overrides (precedence: CLI >
file > defaults), writes ``report.json`` and CSV tables under ``--out`` and
is bit-reproducible for a fixed effective config.

Exit codes: 0 success, 2 invalid configuration, 3 numerical-quality failure
(a tail-truncation diagnostic exceeded the configured hard cap).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .experiments import (
    ConfigError,
    resolve_config,
    run_converge,
    run_prange,
    run_transform,
    run_weaktype,
    write_report,
)

_RUNNERS = {
    "transform": run_transform,
    "converge": run_converge,
    "weaktype": run_weaktype,
    "prange": run_prange,
}


def _common_options(fn):
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="JSON config file; CLI flags override its entries."),
        click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out",
                     show_default=True, help="Output directory for report.json and CSVs."),
        click.option("--alpha", type=float, default=None, help="Transform order (>= -1/2)."),
        click.option("--grid-n", "grid_n", type=int, default=None,
                     help="Total nodes in the symmetric sampling grid."),
        click.option("--radius", type=float, default=None,
                     help="Integration truncation radius."),
        click.option("--rmax", type=float, default=None,
                     help="Largest truncation frequency / radius-grid maximum."),
        click.option("--function", "functions", multiple=True,
                     help="Battery function id (repeatable); default runs the whole battery."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise click.UsageError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise click.UsageError(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise click.UsageError(f"config file {path} must contain a JSON object")
    return data


def _execute(command: str, config_path: str | None, out_dir: str, overrides: dict) -> None:
    file_cfg = _load_config_file(config_path)
    if not overrides.get("functions"):
        overrides.pop("functions", None)
    else:
        overrides["functions"] = list(overrides["functions"])
    try:
        cfg = resolve_config(command, file_cfg, overrides)
    except ConfigError as e:
        raise click.UsageError(str(e))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = _RUNNERS[command](cfg, out)
    write_report(report, out)
    click.echo(f"{command}: wrote {out / 'report.json'}")
    if report.max_tail > float(cfg["tail_cap"]):
        click.echo(
            f"numerical-quality failure: tail estimate {report.max_tail:g} "
            f"exceeds cap {cfg['tail_cap']:g}",
            err=True,
        )
        sys.exit(3)


@click.group()
def main():
    """Dunkl-transform experiments: identities, convergence, endpoint norms."""


@main.command()
@_common_options
@click.option("--freq-n", "freq_n", type=int, default=None, help="Frequency-grid size.")
@click.option("--freq-max", "freq_max", type=float, default=None, help="Frequency-grid extent.")
def transform(config_path, out_dir, **overrides):
    """Forward transforms plus the even/odd decomposition residual."""
    _execute("transform", config_path, out_dir, overrides)


@main.command()
@_common_options
@click.option("--p", type=float, default=None, help="L^p exponent for the error norm.")
def converge(config_path, out_dir, **overrides):
    """Partial-sum convergence errors over a truncation schedule."""
    _execute("converge", config_path, out_dir, overrides)


@main.command()
@_common_options
@click.option("--endpoint-index", "endpoint_indices", multiple=True, type=int,
              help="Endpoint selector 0 or 1 (repeatable); default both.")
def weaktype(config_path, out_dir, **overrides):
    """Endpoint Lorentz-norm ratios and power-function norm stability."""
    if not overrides.get("endpoint_indices"):
        overrides.pop("endpoint_indices", None)
    else:
        overrides["endpoint_indices"] = list(overrides["endpoint_indices"])
    _execute("weaktype", config_path, out_dir, overrides)


@main.command()
@_common_options
@click.option("--p-values", "p_values", default=None,
              help="Comma-separated list of L^p exponents to test.")
def prange(config_path, out_dir, **overrides):
    """Boundedness-range verdicts and empirical operator ratios."""
    if overrides.get("p_values") is not None:
        try:
            overrides["p_values"] = [float(p) for p in overrides["p_values"].split(",")]
        except ValueError:
            raise click.UsageError("--p-values must be a comma-separated list of reals")
    _execute("prange", config_path, out_dir, overrides)


if __name__ == "__main__":
    main()
