"""
Command-line interface for the conic toolkit.

Usage:
    conic classgroup 105                  # reduced forms of discriminant -420
    conic generators 105 --primes 11,13,19
    conic solve 105 143                   # the normalized solutions with z = 143
    conic factor 105 23 24 247            # zeta_13 * zeta_19
    conic convenient --max 1365
    conic oracle 105 --c-max 3000
    conic verify-paper
"""
import logging
import sys
from typing import Callable, List, Optional

import click

from cache import open_cache
from config import settings
from exceptions import ConicError, UsageError, VerificationMismatch
from render import (
    render_classgroup,
    render_convenient,
    render_factor,
    render_generators,
    render_solve,
    render_sweep,
    render_verification,
)
from schemas import OutputDocument, OutputFormat
from services import ConicService, conic_service

logger = logging.getLogger(__name__)


def parse_prime_list(text: str) -> List[int]:
    """'11,13,19' -> [11, 13, 19]."""
    try:
        primes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"malformed prime list {text!r}; expected comma-separated integers")
    if not primes:
        raise UsageError("the prime list is empty")
    return primes


def _run(ctx: click.Context, build: Callable[[ConicService], OutputDocument], check: Optional[Callable] = None):
    """Build and print one document; ConicError becomes `Error: ...` on stderr and its exit code."""
    service: ConicService = ctx.obj["service"]
    try:
        document = build(service)
        service.flush()
    except ConicError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)

    click.echo(document.body, nl=False)
    if check is not None and not check():
        click.echo("Error: verification mismatch", err=True)
        sys.exit(VerificationMismatch.exit_code)


@click.group(context_settings={"max_content_width": settings.OUTPUT_WIDTH, "help_option_names": ["-h", "--help"]})
@click.version_option(version=settings.VERSION, prog_name="conic")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="markdown",
              help="Output format")
@click.option("--unicode", is_flag=True, help="Print sqrt(-D) and zeta_p with unicode symbols (markdown only)")
@click.option("--unverified-D", "unverified", is_flag=True,
              help="Run on D outside the theorem hypotheses; results carry a warning")
@click.option("--cache", "cache_location", default=None, metavar="PATH|redis://URL",
              help="Generator cache: a JSON file path or a Redis URL")
@click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr")
@click.option("--debug", is_flag=True, help="Log debugging detail to stderr")
@click.pass_context
def cli(ctx: click.Context, fmt: str, unicode: bool, unverified: bool, cache_location: Optional[str],
        verbose: bool, debug: bool):
    """
    Rational points on x^2 + D*y^2 = z^2, the class group C(-4D) and the
    generators zeta_p of G_D(Q).

    Examples:

        conic solve 105 2717           # four solutions, c = 11*13*19

        conic --format json factor 105 92 -265 2717

        conic verify-paper             # regenerate the D = 105 tables
    """
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)

    try:
        cache = open_cache(cache_location)
    except ConicError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)

    ctx.obj = {
        "format": OutputFormat(fmt),
        "unicode": unicode,
        "unverified": unverified,
        "service": conic_service if cache is None else ConicService(cache=cache),
    }


@cli.command()
@click.argument("D", type=int)
@click.pass_context
def classgroup(ctx: click.Context, d: int):
    """
    Reduced forms of discriminant -4D, the class number and the group structure.

    Examples:

        conic classgroup 105    # h = 8, Z2^3

        conic classgroup 14     # not an elementary 2-group
    """
    o = ctx.obj
    _run(ctx, lambda s: render_classgroup(s.classgroup(d), o["format"], o["unicode"]))


@cli.command()
@click.argument("D", type=int)
@click.option("--primes", default=None, help="Comma-separated primes, e.g. 11,13,19")
@click.option("--bound", type=int, default=None, help="Every split prime up to this bound")
@click.pass_context
def generators(ctx: click.Context, d: int, primes: Optional[str], bound: Optional[int]):
    """
    The generators zeta_p = (a + b*sqrt(-D))/p.

    Examples:

        conic generators 105 --primes 11,13,19

        conic generators 1 --bound 15
    """
    o = ctx.obj

    def build(s: ConicService) -> OutputDocument:
        prime_list = parse_prime_list(primes) if primes is not None else None
        table = s.generators(d, primes=prime_list, bound=bound, unverified=o["unverified"])
        return render_generators(table, o["format"], o["unicode"])

    _run(ctx, build)


@cli.command()
@click.argument("D", type=int)
@click.argument("C", type=int)
@click.pass_context
def solve(ctx: click.Context, d: int, c: int):
    """
    Every normalized solution (a, b, c) of x^2 + D*y^2 = z^2 with z = c.

    Examples:

        conic solve 105 143

        conic --format csv solve 105 2717
    """
    o = ctx.obj
    _run(ctx, lambda s: render_solve(s.solve(d, c, unverified=o["unverified"]), o["format"], o["unicode"]))


@cli.command(context_settings={"ignore_unknown_options": True})
@click.argument("D", type=int)
@click.argument("A", type=int)
@click.argument("B", type=int)
@click.argument("C", type=int)
@click.pass_context
def factor(ctx: click.Context, d: int, a: int, b: int, c: int):
    """
    Factor (a + b*sqrt(-D))/c into +-prod zeta_p^e.

    Examples:

        conic factor 105 23 24 247

        conic factor 105 92 -265 2717
    """
    o = ctx.obj
    _run(ctx, lambda s: render_factor(s.factor(d, a, b, c, unverified=o["unverified"]), o["format"], o["unicode"]))


@cli.command()
@click.option("--max", "max_D", type=int, default=settings.CONVENIENT_SWEEP_MAX, show_default=True,
              help="Largest D to test")
@click.pass_context
def convenient(ctx: click.Context, max_D: int):
    """
    Sweep D = 1..max through the applicability test.

    Examples:

        conic convenient --max 105
    """
    o = ctx.obj
    _run(ctx, lambda s: render_convenient(s.convenient(max_D), o["format"]))


@cli.command()
@click.argument("D", type=int)
@click.option("--c-max", type=int, default=settings.ORACLE_SWEEP_MAX, show_default=True,
              help="Largest z to compare")
@click.pass_context
def oracle(ctx: click.Context, d: int, c_max: int):
    """
    Compare the enumeration against a brute-force scan for every z up to c-max.

    Exits with status 4 on any mismatch.

    Examples:

        conic oracle 105

        conic oracle 1 --c-max 1000
    """
    o = ctx.obj
    reports = []

    def build(s: ConicService) -> OutputDocument:
        reports.append(s.oracle(d, c_max, unverified=o["unverified"]))
        return render_sweep(reports[0], o["format"])

    _run(ctx, build, check=lambda: reports[0].ok)


@cli.command("verify-paper")
@click.pass_context
def verify_paper(ctx: click.Context):
    """
    Regenerate the C(-420) class list, the D = 105 generators and the five
    solution tables, and compare them with the embedded golden data.

    Exits with status 4 on any mismatch.
    """
    o = ctx.obj
    reports = []

    def build(s: ConicService) -> OutputDocument:
        reports.append(s.verify_paper())
        return render_verification(reports[0], o["format"])

    _run(ctx, build, check=lambda: reports[0].ok)


if __name__ == "__main__":
    cli()
