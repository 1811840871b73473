"""Command-line interface for pidensity.

Reports go to stdout; diagnostics and logs go to stderr. Exit codes: 0 success,
1 usage error, 2 computation error, 3 counterexample found.
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
from pydantic import ValidationError

from .config import SUITES, CliConfig, Config
from .constructions import CatalogueEntry, build, catalogue, load_generators, parse_group_expr
from .errors import PiDensityError
from .invariants import (
    PrimeSet,
    class_number,
    commuting_probability,
    d_pi,
    format_ratio,
    k_pi,
    pi_part,
    thresholds,
)
from .logging_utils import StructuredLogger, get_logger
from .perm import PermGroup
from .report import render
from .structure import (
    HallStatus,
    construct_nilpotent_hall,
    derived_subgroup,
    has_abelian_hall,
    has_nilpotent_hall,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_COUNTEREXAMPLE = 3

FORMATS = ["text", "json", "csv"]


def _parse_pi(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> List[int]:
    if value is None:
        return []
    try:
        primes = list(PrimeSet.parse(value).primes)
    except (PiDensityError, ValueError) as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from None
    if not primes:
        raise click.BadParameter("at least one prime is required", ctx=ctx, param=param)
    return primes


def _render_record(record: Dict[str, Any], fmt: str) -> str:
    """Render one flat record; values are already strings, ints or bools."""
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(list(record))
        writer.writerow([json.dumps(v) if isinstance(v, (list, dict)) else v for v in record.values()])
        return buffer.getvalue()
    lines = []
    for key, value in record.items():
        if isinstance(value, list):
            value = " ".join(str(v) for v in value) or "-"
        elif value is None:
            value = "-"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


class _Session:
    """Configuration and logger shared by every command of one invocation."""

    def __init__(self, config_path: str):
        self.config = Config.from_file(config_path)
        self.config.ensure_directories()
        self.logger: StructuredLogger = get_logger(
            self.config.app.log_dir, level=self.config.app.log_level
        )

    def validate(self, **fields: Any) -> CliConfig:
        fields.setdefault("format", self.config.output.format)
        if fields.get("cap") is None:
            fields["cap"] = self.config.compute.cap
        fields["large_cap_threshold"] = self.config.compute.large_cap_threshold
        return CliConfig(**fields)

    def load_group(self, opts: CliConfig) -> PermGroup:
        if opts.group_file is not None:
            return load_generators(opts.group_file)
        assert opts.group_expr is not None
        return build(parse_group_expr(opts.group_expr))


_FORMAT_OPTION = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output format"
)


def _group_options(func: Any) -> Any:
    decorators = [
        click.argument("expr", required=False),
        click.option("--file", "group_file", type=click.Path(dir_okay=False), help="Generator file"),
        click.option("--pi", required=True, callback=_parse_pi, help="Comma-separated primes, e.g. 3,5"),
        _FORMAT_OPTION,
        click.option("--cap", type=int, default=None, help="Element enumeration cap"),
        click.option("--allow-large-cap", is_flag=True, help="Permit --cap above the threshold"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


@click.group()
@click.option("--config", "config_path", default="config.yaml", help="Configuration file path")
@click.pass_context
def cli(ctx: click.Context, config_path: str) -> None:
    """Conjugacy class densities of pi-elements and Hall subgroups."""
    ctx.obj = _Session(config_path)


@cli.command()
@_group_options
@click.pass_obj
def invariants(
    session: _Session,
    expr: Optional[str],
    group_file: Optional[str],
    pi: List[int],
    fmt: Optional[str],
    cap: Optional[int],
    allow_large_cap: bool,
) -> int:
    """Print |G|, |G|_pi, k(G), k_pi(G), d_pi(G), Pr(G) and the thresholds."""
    opts = session.validate(
        command="invariants", group_expr=expr, group_file=group_file, pi=pi,
        format=fmt or session.config.output.format, cap=cap, allow_large_cap=allow_large_cap,
    )
    G = session.load_group(opts)
    primes = PrimeSet(primes=tuple(opts.pi))
    order = G.order()
    dropped = [p for p in primes.primes if order % p]
    if dropped:
        session.logger.warning("Primes do not divide the group order", primes=dropped, order=order)

    d = d_pi(G, primes, opts.cap)
    t = thresholds(primes.min)
    record: Dict[str, Any] = {
        "group": G.name or opts.group_file,
        "order": order,
        "pi": str(primes),
        "pi_part": pi_part(order, primes),
        "class_number": class_number(G, opts.cap),
        "k_pi": k_pi(G, primes, opts.cap),
        "d_pi": format_ratio(d),
        "commuting_probability": format_ratio(commuting_probability(G, opts.cap)),
        "p": primes.min,
        "nilpotent_threshold": format_ratio(t.nilpotent),
        "abelian_threshold": format_ratio(t.abelian),
        "above_nilpotent_threshold": d > t.nilpotent,
        "above_abelian_threshold": d > t.abelian,
    }
    click.echo(_render_record(record, opts.format), nl=False)
    return EXIT_OK


@cli.command()
@_group_options
@click.pass_obj
def hall(
    session: _Session,
    expr: Optional[str],
    group_file: Optional[str],
    pi: List[int],
    fmt: Optional[str],
    cap: Optional[int],
    allow_large_cap: bool,
) -> int:
    """Decide nilpotent and abelian Hall pi-subgroups and show a witness."""
    opts = session.validate(
        command="hall", group_expr=expr, group_file=group_file, pi=pi,
        format=fmt or session.config.output.format, cap=cap, allow_large_cap=allow_large_cap,
    )
    G = session.load_group(opts)
    primes = PrimeSet(primes=tuple(opts.pi))
    nilpotent = has_nilpotent_hall(G, primes, opts.cap)
    record: Dict[str, Any] = {
        "group": G.name or opts.group_file,
        "order": G.order(),
        "pi": str(primes),
        "nilpotent": nilpotent,
        "abelian": has_abelian_hall(G, primes, opts.cap) if nilpotent else False,
        "witness_status": HallStatus.NONE_EXISTS.value,
        "witness_order": None,
        "witness_generators": [],
        "witness_derived_order": None,
    }
    if nilpotent:
        witness = construct_nilpotent_hall(
            G, primes, opts.cap, session.config.compute.hall_search_budget
        )
        record["witness_status"] = witness.status.value
        if witness.subgroup is not None:
            H = witness.subgroup.subgroup
            record["witness_order"] = H.order()
            record["witness_generators"] = [str(g) for g in H.generators]
            record["witness_derived_order"] = derived_subgroup(H).order()
    click.echo(_render_record(record, opts.format), nl=False)
    return EXIT_OK


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option("--group", "group_expr", help="Run per-group suites on this group only")
@click.option("--max-pi", type=int, default=None, help="Largest prime set size to sweep")
@_FORMAT_OPTION
@click.option("--output", type=click.Path(dir_okay=False), help="Write the report to this file")
@click.pass_obj
def verify(
    session: _Session,
    suite: str,
    group_expr: Optional[str],
    max_pi: Optional[int],
    fmt: Optional[str],
    output: Optional[str],
) -> int:
    """Run verification suites and emit a report."""
    from .harness import run_suite

    opts = session.validate(
        command="verify", suite=suite, group_expr=group_expr,
        format=fmt or session.config.output.format,
        max_pi=session.config.harness.max_pi_size if max_pi is None else max_pi,
    )
    entries: Optional[List[CatalogueEntry]] = None
    if opts.group_expr is not None:
        expr = parse_group_expr(opts.group_expr)
        entries = [CatalogueEntry(str(expr), expr, ("user",))]

    session.logger.info("Running verification", suite=suite, max_pi=opts.max_pi)
    report = run_suite(suite, session.config, session.logger, entries, opts.max_pi)
    text = render(report, opts.format)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        session.logger.info(f"Report written to {output}")
    else:
        click.echo(text, nl=False)
    session.logger.save_summary(report.summary.model_dump())
    return EXIT_COUNTEREXAMPLE if report.has_counterexample else EXIT_OK


@cli.command(name="catalogue")
@_FORMAT_OPTION
@click.pass_obj
def catalogue_command(session: _Session, fmt: Optional[str]) -> int:
    """List the catalogue groups with orders and tags."""
    opts = session.validate(command="catalogue", format=fmt or session.config.output.format)
    rows = []
    for entry in catalogue():
        G = build(entry.expr)
        rows.append(
            {"name": entry.name, "order": G.order(), "degree": G.degree, "tags": list(entry.tags)}
        )

    if opts.format == "json":
        click.echo(json.dumps(rows, indent=2))
    elif opts.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "order", "degree", "tags"])
        for row in rows:
            writer.writerow([row["name"], row["order"], row["degree"], ";".join(row["tags"])])
        click.echo(buffer.getvalue(), nl=False)
    else:
        width = max(len(row["name"]) for row in rows)
        for row in rows:
            click.echo(f"{row['name']:<{width}}  {row['order']:>8}  {', '.join(row['tags'])}")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code instead of exiting."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = cli.main(args=args, prog_name="pidensity", standalone_mode=False)
    except click.UsageError as e:
        click.echo(f"Error: {e.format_message()}", err=True)
        return EXIT_USAGE
    except ValidationError as e:
        for err in e.errors():
            click.echo(f"Error: {err['msg']}", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except PiDensityError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_COMPUTATION
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
