"""Batch front end: ``python -m workbench <subcommand> ...``.

Exit codes: 0 every check passed, 1 a check failed, 2 usage or parse error,
3 search budget exhausted.
"""
import logging
from functools import wraps
from pathlib import Path
from typing import Callable, Sequence

import click

from workbench.config import (
    DEFAULT_JOBS,
    DEFAULT_NODE_BUDGET,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SIZE_CAP,
    OUTPUT_FORMATS,
    SETTINGS,
    RunConfig,
    default_maxlen,
    load_settings,
)
from workbench.core_semigroup import CATALOG, InverseSemigroup, build_example, check_order_properties
from workbench.errors import (
    AlphabetMismatch,
    ClosureViolation,
    MalformedTable,
    NotAssociative,
    NotInverse,
    ParseError,
    SearchBudgetExceeded,
    SizeCapExceeded,
    WindowExceeded,
)
from workbench.heap import enumerate_sha, verify_sha, verify_sha_monoid_iso
from workbench.holomorph import (
    enumerate_holomorph,
    hol_tables,
    holomorph_units,
    verify_group_holomorph,
    verify_hol_laws,
    verify_hol_matches_end,
    verify_interchange,
    verify_mon_hol,
)
from workbench.morphisms import enumerate_premorphisms, verify_morphism_inclusions, verify_premorphism_laws
from workbench.ordered_groupoid import (
    OrderedGroupoid,
    check_flow_monoid_structure,
    check_pseudoproduct_associative,
    enumerate_flows,
    enumerate_ordered_functors,
    esn_back,
    esn_forward,
    is_inductive,
    ordered_flows,
    verify_ordered_groupoid,
)
from workbench.polycyclic import (
    endo_classification_check,
    endo_classification_sweep,
    heap_type_check_polycyclic,
    parse_expression,
    parse_word,
    premorphism_ideal_check,
    verify_bicyclic,
    verify_poly_arithmetic,
    verify_zappa,
)
from workbench.report import Report
from workbench.tables import (
    document_kind,
    groupoid_from_document,
    parse_document,
    read_semigroup,
    read_text,
    records_to_text,
    semigroup_from_document,
    write_groupoid,
    write_semigroup,
    write_text,
)

log = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

POLY_CHECKS = ("arithmetic", "bicyclic", "zappa", "classify", "endo", "heap")


def shared_options(f: Callable | None = None, *, jobs: bool = True) -> Callable:
    """--cap-size, --budget, --maxlen, --jobs, --format, --seed, --dump.

    Commands that never search pass ``jobs=False`` and drop --jobs.
    """
    options = [
        click.option("--cap-size", type=click.IntRange(min=1), default=DEFAULT_SIZE_CAP, show_default=True),
        click.option("--budget", type=click.IntRange(min=1), default=DEFAULT_NODE_BUDGET, show_default=True),
        click.option("--maxlen", type=click.IntRange(min=0), default=None, help="Word window (default by alphabet)."),
        click.option("--jobs", type=click.IntRange(min=1), default=DEFAULT_JOBS, show_default=True),
        click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default="text", show_default=True),
        click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True),
        click.option("--dump", type=click.Path(dir_okay=False, path_type=Path), default=None),
    ]
    if not jobs:
        del options[3]

    def decorate(f: Callable) -> Callable:
        for option in reversed(options):
            f = option(f)
        return f

    return decorate(f) if f is not None else decorate


def make_config(subcommand: str, inputs: tuple[str, ...], alphabet: int = 2, **kw) -> RunConfig:
    dump = kw.pop("dump", None)
    return RunConfig(
        subcommand=subcommand,
        inputs=tuple(inputs),
        size_cap=kw["cap_size"],
        node_budget=kw["budget"],
        maxlen=kw["maxlen"],
        alphabet=alphabet,
        jobs=kw.get("jobs", DEFAULT_JOBS),
        output_format=kw["output_format"],
        seed=kw["seed"],
        dump=str(dump) if dump else None,
    )


def emit(report: Report, config: RunConfig) -> int:
    report.header = {**config.header(), **report.header}
    click.echo(report.to_json() if config.output_format == "json" else report.to_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


def run_command(job: Callable[[RunConfig], Report]) -> Callable[[RunConfig], None]:
    """Map library errors onto exit codes; the job returns the report to print."""

    @wraps(job)
    def wrapper(config: RunConfig) -> None:
        SETTINGS.update(size_cap=config.size_cap, node_budget=config.node_budget)
        try:
            code = emit(job(config), config)
        except SearchBudgetExceeded as e:
            click.echo(f"Budget exceeded: {e} | visited: {e.visited} | found: {e.found}", err=True)
            code = EXIT_BUDGET
        except ParseError as e:
            click.echo(f"Parse error: {e}", err=True)
            code = EXIT_USAGE
        except (
            FileNotFoundError,
            SizeCapExceeded,
            WindowExceeded,
            AlphabetMismatch,
            ClosureViolation,
            MalformedTable,
            NotAssociative,
            NotInverse,
        ) as e:
            click.echo(f"Error: {e}", err=True)
            code = EXIT_USAGE
        click.get_current_context().exit(code)

    return wrapper


def dump_records(config: RunConfig, names: Sequence[str], kind: str, records: list[dict]) -> None:
    if config.dump:
        write_text(Path(config.dump), records_to_text(names, kind, records))
        click.echo(f"Saved: {config.dump} | Rows: {len(records)}", err=True)


def dump_report(config: RunConfig, report: Report) -> None:
    if config.dump:
        report.header = {**config.header(), **report.header}
        write_text(Path(config.dump), report.to_json() + "\n")
        click.echo(f"Saved: {config.dump} | Rows: {len(report.checks)}", err=True)


def load_semigroup(config: RunConfig) -> InverseSemigroup:
    return read_semigroup(Path(config.inputs[0]), size_cap=config.size_cap)


@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
def cli(verbose: bool, config_path: Path | None) -> None:
    """Inverse semigroup holomorph workbench."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if config_path is not None:
        try:
            load_settings(config_path)
        except FileNotFoundError as e:
            raise click.BadParameter(str(e), param_hint="--config") from None


# ---------- verify ----------


def _verify_semigroup_document(doc: dict, text: str, config: RunConfig) -> Report:
    report = Report("inverse semigroup")
    try:
        S = semigroup_from_document(doc, text, size_cap=config.size_cap)
    except (NotAssociative, NotInverse, MalformedTable) as e:
        name = {NotAssociative: "associative", NotInverse: "inverse"}.get(type(e), "well_formed")
        report.add(name, False, e.witness, str(e))
        return report
    report.stats.update({"elements": S.size, "idempotents": len(S.idempotents)})
    report.add("associative", True)
    report.add("inverse", True, detail="unique inverses, commuting idempotents")
    report.merge(check_order_properties(S), prefix="order.")
    return report


def _verify_groupoid(G: OrderedGroupoid) -> Report:
    report = verify_ordered_groupoid(G)
    if report.passed and is_inductive(G):
        report.merge(check_pseudoproduct_associative(G), prefix="pseudoproduct.")
    return report


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@shared_options
def verify(path: str, **kw) -> None:
    """Validate a semigroup or groupoid file."""

    @run_command
    def job(config: RunConfig) -> Report:
        text = read_text(Path(path))
        doc = parse_document(text)
        if document_kind(doc) == "groupoid":
            try:
                report = _verify_groupoid(groupoid_from_document(doc, text))
            except MalformedTable as e:
                report = Report("ordered groupoid")
                report.add("well_formed", False, e.witness, str(e))
        else:
            report = _verify_semigroup_document(doc, text, config)
        dump_report(config, report)
        return report

    job(make_config("verify", (path,), **kw))


# ---------- hol / sha ----------


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--end/--no-end", "with_end", default=False, help="Also compare with END of the ESN groupoid.")
@shared_options
def hol(path: str, with_end: bool, **kw) -> None:
    """Premorphisms and the holomorph of an inverse semigroup."""

    @run_command
    def job(config: RunConfig) -> Report:
        S = load_semigroup(config)
        budget, jobs = config.node_budget, config.jobs
        prem = enumerate_premorphisms(S, budget, jobs)
        elements = enumerate_holomorph(S, prem, budget, jobs)
        tables = hol_tables(S, elements)
        report = Report(f"holomorph of {config.inputs[0]}")
        report.stats.update({"elements": S.size, "prem": len(prem), "hol": len(elements)})
        report.stats["units"] = len(holomorph_units(tables))
        report.merge(verify_premorphism_laws(S, prem, budget), prefix="prem.")
        report.merge(verify_morphism_inclusions(S, budget, jobs), prefix="inclusions.")
        report.merge(verify_hol_laws(S, tables), prefix="hol.")
        report.merge(verify_interchange(tables), prefix="interchange.")
        if len(S.idempotents) == 1:
            report.merge(verify_group_holomorph(S, tables, budget), prefix="group.")
        elif S.is_monoid:
            report.merge(verify_mon_hol(S, tables), prefix="mon.")
        if with_end:
            report.merge(verify_hol_matches_end(S, tables, budget), prefix="end.")
        dump_records(config, S.names, "hol", [{"alpha": list(x.alpha), "tau": list(x.tau)} for x in elements])
        return report

    job(make_config("hol", (path,), **kw))


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@shared_options
def sha(path: str, **kw) -> None:
    """Ordered heap-preserving maps and their embedding into the holomorph."""

    @run_command
    def job(config: RunConfig) -> Report:
        S = load_semigroup(config)
        maps = enumerate_sha(S, config.node_budget, config.jobs)
        report = Report(f"heap maps of {config.inputs[0]}")
        report.merge(verify_sha(S, maps, config.node_budget))
        if S.is_monoid:
            report.merge(verify_sha_monoid_iso(S, maps, config.node_budget), prefix="monoid.")
        dump_records(config, S.names, "sha", [{"eta": list(eta)} for eta in maps])
        return report

    job(make_config("sha", (path,), **kw))


# ---------- groupoids ----------


def _read_groupoid_or_esn(path: Path, config: RunConfig) -> tuple[OrderedGroupoid, Report]:
    """The groupoid and its ``verify_ordered_groupoid`` report."""
    text = read_text(path)
    doc = parse_document(text)
    if document_kind(doc) == "groupoid":
        G = groupoid_from_document(doc, text)
    else:
        G = esn_forward(semigroup_from_document(doc, text, size_cap=config.size_cap))
    return G, verify_ordered_groupoid(G)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--validate", is_flag=True, help="Include the ordered groupoid checks in the report.")
@shared_options
def flows(path: str, validate: bool, **kw) -> None:
    """Flow monoid of a groupoid file (a semigroup file is read through ESN)."""

    @run_command
    def job(config: RunConfig) -> Report:
        G, checks = _read_groupoid_or_esn(Path(path), config)
        if validate and not checks.passed:
            return checks
        if not checks.passed:
            failed = checks.failures[0]
            raise MalformedTable(f"not an ordered groupoid: {failed.name} fails", witness=failed.witness)
        report = Report(f"flows of {path}")
        if validate:
            report.merge(checks, prefix="groupoid.")
        everything = enumerate_flows(G, config.size_cap)
        report.stats.update({"flows": len(everything), "ordered_flows": len(ordered_flows(G, everything))})
        report.merge(check_flow_monoid_structure(G, config.node_budget))
        dump_records(config, G.names, "flows", [{"flow": list(f)} for f in everything])
        return report

    job(make_config("flows", (path,), **kw))


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@shared_options
def esn(path: str, **kw) -> None:
    """Inductive groupoid of a semigroup and the round trip back."""

    @run_command
    def job(config: RunConfig) -> Report:
        S = load_semigroup(config)
        G = esn_forward(S)
        report = Report(f"ESN round trip of {path}")
        report.merge(verify_ordered_groupoid(G), prefix="groupoid.")
        report.add("inductive", is_inductive(G))
        back = esn_back(G)
        report.add("round_trip", back.same_table(S), detail=f"{G.size} arrows, {len(G.identities)} identities")
        functors = set(enumerate_ordered_functors(G, config.node_budget))
        prem = set(enumerate_premorphisms(S, config.node_budget, config.jobs))
        report.stats.update({"ordered_functors": len(functors), "prem": len(prem)})
        report.add("ordered_functors_are_premorphisms", functors == prem)
        if config.dump:
            write_groupoid(Path(config.dump), G)
        return report

    job(make_config("esn", (path,), **kw))


# ---------- polycyclic ----------


@cli.command()
@click.argument("expressions", nargs=-1)
@click.option("--alphabet", type=click.IntRange(min=1, max=26), default=2, show_default=True)
@click.option("--check", "checks", type=click.Choice(POLY_CHECKS + ("all",)), multiple=True)
@click.option("--samples", type=click.IntRange(min=1), default=DEFAULT_SAMPLES, show_default=True)
@click.option("--sigma", default=None, help="Letter images for the endomorphism test, e.g. 'aa,ba'.")
@click.option("--shift", default="", help="Right translation word for --sigma.")
@shared_options(jobs=False)
def poly(expressions: tuple[str, ...], alphabet: int, checks: tuple[str, ...], samples: int, sigma, shift, **kw) -> None:
    """Evaluate polycyclic expressions and run window checks."""
    selected = POLY_CHECKS if "all" in checks or (not checks and not expressions) else checks

    @run_command
    def job(config: RunConfig) -> Report:
        n, L, seed = config.alphabet, config.window, config.seed
        report = Report(f"polycyclic monoid P_{n}")
        for text in expressions:
            report.stats[text] = str(parse_expression(text, n))
        if "arithmetic" in selected:
            report.merge(verify_poly_arithmetic(n, L, samples, seed), prefix="arithmetic.")
        if "bicyclic" in selected:
            W = config.maxlen if config.maxlen is not None else default_maxlen(1)
            report.merge(verify_bicyclic(W), prefix="bicyclic.")
        if "zappa" in selected:
            report.merge(verify_zappa(n, L, samples, seed), prefix="zappa.")
        if "classify" in selected:
            report.merge(premorphism_ideal_check(n, L), prefix="classify.")
        if "endo" in selected:
            if sigma is not None:
                images = [parse_word(w, n) for w in sigma.split(",")]
                if len(images) != n:
                    raise AlphabetMismatch(f"{len(images)} letter images for an alphabet of size {n}")
                report.merge(endo_classification_check(n, images, parse_word(shift, n), max(L, 1)), prefix="endo.")
            else:
                report.merge(endo_classification_sweep(n, max(L, 1)), prefix="endo.")
        if "heap" in selected:
            report.merge(heap_type_check_polycyclic(n, L, samples, seed), prefix="heap.")
        dump_report(config, report)
        return report

    job(make_config("poly", expressions, alphabet=alphabet, **kw))


# ---------- build ----------


@cli.command()
@click.argument("name", type=click.Choice(sorted(CATALOG)))
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
def build(name: str, path: Path) -> None:
    """Write a catalog example as a semigroup file."""
    S = build_example(name)
    write_semigroup(path, S)
    click.echo(f"Saved: {path}")
    click.echo(f"Rows: {S.size} | Cols: {S.size}")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
