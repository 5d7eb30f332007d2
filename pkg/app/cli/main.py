import json
from pathlib import Path
from typing import Optional, Sequence

import click

from app.cli.jobs import JobSpec, cmd_guess, cmd_invariant, cmd_sweep
from app.cli.verify import LEVELS, SUITES, cmd_verify
from app.config import settings
from app.qweyl import read_table_csv, table_to_csv
from app.utils.errors import BudgetExceeded, EngineError, ResampleError, VerificationError
from app.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_BUDGET = 3


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
        logger.info("Output written", extra={"path": out})
    else:
        click.echo(text)


def _dump(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True)


def _parse_specialize(items: Sequence[str]) -> dict:
    pairs = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise click.BadParameter(f"expected <generator>=<rational>, got {item!r}", param_hint="--specialize")
        pairs[name.strip()] = value.strip()
    return pairs


def _job(braid, colors, cut, strand, seed, specialize) -> JobSpec:
    if not braid:
        raise click.UsageError("--braid is required")
    if not colors:
        raise click.UsageError("at least one --colors entry is required")
    return JobSpec(
        braid=braid,
        colors=list(colors),
        cut=cut,
        strand=strand,
        seed=settings.DEFAULT_SEED if seed is None else seed,
        specialize=_parse_specialize(specialize),
    )


_braid_option = click.option("--braid", help="Braid word, e.g. '2: s1 s1 s1'.")
_colors_option = click.option(
    "--colors", multiple=True, help="Per component, in order: a1=<int> or a1=<lo>..<hi>, optionally ',var=<k>'."
)
_cut_option = click.option("--cut", default=1, show_default=True, type=int, help="Component to cut open (1-based).")
_strand_option = click.option("--strand", default=None, type=int, help="Top position of the cut strand (1-based).")
_seed_option = click.option("--seed", default=None, type=int, help="Seed for random point checks.")
_out_option = click.option("--out", default=None, type=click.Path(dir_okay=False), help="Write output here.")
_specialize_option = click.option(
    "--specialize", multiple=True, help="Substitute a rational for a generator, e.g. x1=3/2."
)


@click.group(name="rtq")
def cli():
    """Exact sl(2|1) link invariants and q-holonomic recurrences."""


@cli.command()
@_braid_option
@_colors_option
@_cut_option
@_strand_option
@_seed_option
@_out_option
@_specialize_option
def invariant(braid, colors, cut, strand, seed, out, specialize):
    """Evaluate the invariant of one colored braid closure."""
    job = _job(braid, colors, cut, strand, seed, specialize)
    _emit(_dump(cmd_invariant(job)), out)


@cli.command()
@click.option("--level", type=click.Choice(LEVELS), default="quick", show_default=True)
@click.option("--suite", "suites", multiple=True, type=click.Choice(sorted(SUITES)), help="Run only these suites.")
@_seed_option
@_out_option
def verify(level, suites, seed, out):
    """Run the named property suites."""
    document = cmd_verify(level, seed, list(suites) or None)
    _emit(_dump(document), out)
    if not document["passed"]:
        raise VerificationError("; ".join(c["name"] for c in document["checks"] if not c["passed"]))


@cli.command()
@_braid_option
@_colors_option
@_cut_option
@_strand_option
@_seed_option
@_out_option
@_specialize_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
def sweep(braid, colors, cut, strand, seed, out, specialize, fmt):
    """Tabulate the invariant over an a1 range of one component."""
    job = _job(braid, colors, cut, strand, seed, specialize)
    outcome = cmd_sweep(job)
    if fmt == "csv":
        text = table_to_csv(outcome.table)
        if not outcome.complete:
            text += f"# partial: {outcome.document['reason']}\n"
    else:
        text = _dump(outcome.document)
    _emit(text, out)
    if not outcome.complete:
        raise BudgetExceeded(outcome.document["reason"])


@cli.command()
@_braid_option
@_colors_option
@_cut_option
@_strand_option
@_seed_option
@_out_option
@_specialize_option
@click.option("--table", "table_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--builtin", "builtin_name", default=None, help="Name of a library function.")
@click.option("-d", "--max-order", default=1, show_default=True, type=int)
@click.option("-e", "--max-mdegree", default=2, show_default=True, type=int)
@click.option("--all-m", is_flag=True, help="Let every discrete M appear in each ansatz.")
def guess(braid, colors, cut, strand, seed, out, specialize, table_path, builtin_name, max_order, max_mdegree, all_m):
    """Guess and certify recurrences for a table, a builtin or a swept braid."""
    table = read_table_csv(Path(table_path).read_text()) if table_path else None
    job = _job(braid, colors, cut, strand, seed, specialize) if braid else None
    document = cmd_guess(
        max_order=max_order,
        max_mdegree=max_mdegree,
        table=table,
        builtin_name=builtin_name,
        job=job,
        seed=seed,
        all_m=all_m,
    )
    _emit(_dump(document), out)


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, (VerificationError, ResampleError)):
        return EXIT_VERIFICATION
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="rtq", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (EngineError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        logger.debug("Command failed", exc_info=True)
        return exit_code(exc)
    return EXIT_OK
