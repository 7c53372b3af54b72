"""Command line driver: runs Pecan files and prints the verdict table"""

import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import click
from loguru import logger

from omega_automata.settings import DEFAULT_MAX_ALPHABET_APS, KernelSettings

from pecan.definitions import OutputMode
from pecan.report import exit_status, report_format
from pecan.session import run_file
from pecan.settings import DEFAULT_TIMEOUT_S, ProverSettings


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


@click.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.option("--no-prelude", is_flag=True, help="Do not load the nat structure and builtins.")
@click.option("--csv", "as_csv", is_flag=True, help="Print the table as csv.")
@click.option(
    "--state-budget",
    type=click.IntRange(min=1),
    default=None,
    help="Largest automaton a construction may build.",
)
@click.option(
    "--max-aps",
    type=click.IntRange(0, 24),
    default=DEFAULT_MAX_ALPHABET_APS,
    show_default=True,
    help="Most propositions a complement may enumerate letters for.",
)
@click.option(
    "--timeout",
    type=click.FloatRange(min=0, min_open=True),
    default=DEFAULT_TIMEOUT_S,
    show_default=True,
    help="Seconds allowed per theorem.",
)
@click.option(
    "--jobs", type=click.IntRange(min=1), default=1, help="Files evaluated in parallel."
)
@click.option("-v", "--verbose", is_flag=True, help="Log every evaluation step.")
def cli(
    paths: tuple[Path, ...],
    no_prelude: bool,
    as_csv: bool,
    state_budget: int | None,
    max_aps: int,
    timeout: float,
    jobs: int,
    verbose: bool,
) -> None:
    """
    Decides the theorems of the PATHS files. Exits with 0 when every
    theorem holds, 1 when one is false and 2 on errors.
    """
    configure_logging(verbose)
    limits = {"max_alphabet_aps": max_aps}
    if state_budget is not None:
        limits["state_budget"] = state_budget
    kernel = KernelSettings(**limits)
    settings = ProverSettings(kernel=kernel, timeout_s=timeout, load_prelude=not no_prelude)
    run = partial(run_file, settings=settings)
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run, paths))
    else:
        reports = [run(path) for path in paths]

    click.echo(report_format(reports, OutputMode.CSV if as_csv else OutputMode.HUMAN), nl=False)
    for report in reports:
        if report.error is not None:
            click.echo(f"error: {report.error}", err=True)
    sys.exit(exit_status(reports))


def main() -> None:
    cli()
