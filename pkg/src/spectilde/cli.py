"""Command line front end: ``spectilde analyze <config>``.

Exit status: 0 when every analysis ran and the oracle agreed, 2 when some
analysis reported a discrepancy or unmet hypothesis, 1 on configuration or
resource errors.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import ConfigError, parse_config
from .errors import SizeBoundError
from .report import run, to_dot, to_json, to_text

EXIT_CLEAN, EXIT_CONFIG, EXIT_FINDINGS = 0, 1, 2


@click.group()
def main():
    """Finite multiplicative-set topologies on prime spectra of modules."""


@main.command()
@click.argument("config", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Also write the colon preorder as a DOT graph.")
@click.option("--no-oracle", is_flag=True, help="Skip the brute-force topology cross-check.")
@click.option("--max-module-size", type=click.IntRange(min=1), help="Override bounds.max_module_size.")
@click.option("--max-oracle-points", type=click.IntRange(min=1), help="Override bounds.max_oracle_points.")
@click.option("--seed", type=int, help="Override the config seed.")
def analyze(config, fmt, dot_path, no_oracle, max_module_size, max_oracle_points, seed):
    """Run the analyses declared in CONFIG and print a report."""
    try:
        text = config.read_text(encoding="utf-8")
    except OSError as e:
        click.echo(f"error: cannot read {config}: {e.strerror}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        cfg = parse_config(text)
        result = run(cfg, max_module_size, max_oracle_points, not no_oracle, seed)
    except ConfigError as e:
        click.echo(f"error: {config}: {e}", err=True)
        sys.exit(EXIT_CONFIG)
    except (SizeBoundError, ValueError) as e:
        click.echo(f"error: {config}: {e}", err=True)
        sys.exit(EXIT_CONFIG)

    out = to_json(result.report) if fmt == "json" else to_text(result.report)
    click.echo(out, nl=False)
    if dot_path is not None:
        if result.space is None:
            click.echo("error: --dot needs a module instance", err=True)
            sys.exit(EXIT_CONFIG)
        try:
            dot_path.write_text(to_dot(result.space), encoding="utf-8")
        except OSError as e:
            click.echo(f"error: cannot write {dot_path}: {e.strerror}", err=True)
            sys.exit(EXIT_CONFIG)
    sys.exit(EXIT_CLEAN if result.clean else EXIT_FINDINGS)


if __name__ == "__main__":
    main()
