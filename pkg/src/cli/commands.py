# commands.py - Command-line interface: generate, filter, search, resume, dedupe, fixtures

import logging
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from src.cli.checkpoint import Checkpoint, CheckpointError, SearchReport
from src.cli.config import FilterSet, InputSource, SearchConfig, env_settings
from src.cli.search_runner import FilterConsistencyError, run_search
from src.embedding.embedding_core import canonical_code, genus, is_triangulation
from src.filters.pt12_filters import (ALL_FILTERS, PT12_ORDER, SEARCH_FILTERS, FilterPreconditionError, run_filters,
                                      stage_counts)
from src.fixtures.witness_fixtures import FixtureError, load_near_miss_fixtures
from src.formats.graph_io import CatalogFormat, GraphFormatError, parse_surftri_line, read_catalog, write_catalog
from src.generation.triangulation_gen import GenerationError, generate

EXIT_TASK_FAILURE = 1
EXIT_USAGE = 2

app = typer.Typer(help="Search for planar/toroidal decompositions of K12 and related embedding tasks.",
                  add_completion=False)
console = Console()


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format="%(message)s", datefmt="[%X]",
                        handlers=[RichHandler(console=Console(stderr=True), show_path=False)], force=True)


def _fail(message: str, code: int = EXIT_USAGE) -> None:
    console.print(f"[red]Error:[/red] {message}")
    raise typer.Exit(code=code)


def _parse_indices(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        _fail(f"--indices must be comma-separated integers, got {text!r}")


def _print_report(report: SearchReport) -> None:
    table = Table(title="Search report")
    table.add_column("stage")
    table.add_column("count", justify="right")
    table.add_row("input", str(report.input_count))
    for name, count in report.stages:
        table.add_row(name, str(count))
    table.add_row("blocks completed", f"{report.tasks_completed}/{report.tasks_total}")
    table.add_row("blocks failed", str(report.tasks_failed))
    table.add_row("witnesses", str(report.witnesses_found))
    table.add_row("unique classes", str(len(report.unique_classes)))
    console.print(table)
    console.print(f"Wall time: {report.wall_time:.1f}s")


def _run(config: SearchConfig, resume: bool, stop_after: Optional[int]) -> None:
    try:
        report = run_search(config, resume=resume, stop_after=stop_after)
    except CheckpointError as e:
        _fail(str(e))
    except (GraphFormatError, GenerationError, FilterPreconditionError, OSError) as e:
        _fail(str(e))
    except FilterConsistencyError as e:
        logging.error(str(e))
        _fail(str(e), EXIT_TASK_FAILURE)
    _print_report(report)
    if report.interrupted:
        console.print(f"Interrupted; continue with: resume --checkpoint {config.checkpoint}")
    if report.tasks_failed:
        _fail(f"{report.tasks_failed} blocks failed; see the log", EXIT_TASK_FAILURE)


@app.callback()
def main(log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level (default from PT12_LOG_LEVEL)")):
    configure_logging(log_level or env_settings()["log_level"])


@app.command("gen")
def cmd_generate(
    order: int = typer.Option(..., "--order", help="Number of vertices, 4..14"),
    out: Path = typer.Option(..., "--out", help="Catalog file to write"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker processes"),
    fmt: CatalogFormat = typer.Option(CatalogFormat.SURFTRI, "--format", help="surftri or planar_code"),
):
    """Write every sphere triangulation of the given order, sorted by canonical code."""
    try:
        if workers is None:
            workers = env_settings()["workers"]
        level = generate(order, workers=workers, progress=True)
    except GenerationError as e:
        _fail(str(e))
    try:
        write_catalog(out, level.embeddings, fmt)
    except (OSError, GraphFormatError) as e:
        _fail(f"Cannot write {out}: {e}")
    console.print(f"{len(level)} triangulations of order {order} written to {out}")


@app.command("filter")
def cmd_filter(
    input_path: Path = typer.Option(..., "--in", help="Order-12 triangulation catalog"),
    out: Path = typer.Option(..., "--out", help="Survivor catalog to write"),
    report: Path = typer.Option(..., "--report", help="Per-graph filter report"),
    filters: FilterSet = typer.Option(FilterSet.SEARCH, "--filters", help="search (maxDegree, deg8Independence) or all"),
):
    """Apply the PT12 filters to a catalog of order-12 sphere triangulations."""
    try:
        catalog = read_catalog(input_path)
    except (OSError, GraphFormatError) as e:
        _fail(f"Cannot read {input_path}: {e}")
    for index, e in enumerate(catalog):
        if e.order != PT12_ORDER or not e.graph.is_connected() or not is_triangulation(e) or genus(e) != 0:
            _fail(f"Record {index} is not an order-{PT12_ORDER} sphere triangulation")
    names = SEARCH_FILTERS if filters is FilterSet.SEARCH else ALL_FILTERS
    reports = [run_filters(e.graph, names, graph_id=index) for index, e in enumerate(catalog)]
    survivors = [e for e, r in zip(catalog, reports) if r.survivor]
    lines = [r.to_line() for r in reports]
    lines.append(f"# input\t{len(catalog)}")
    for name, left in stage_counts(reports, names):
        lines.append(f"# {name}\t{left}")
        console.print(f"after {name}: {left}")
    report.write_text("\n".join(lines) + "\n", encoding="utf-8")
    write_catalog(out, survivors)
    console.print(f"{len(catalog)} in, {len(survivors)} survivors written to {out}")


@app.command("search")
def cmd_search(
    input_path: Optional[Path] = typer.Option(None, "--in", help="Triangulation catalog (default: generate)"),
    order: int = typer.Option(PT12_ORDER, "--order", help="Order to generate when no catalog is given"),
    remove_edges: int = typer.Option(0, "--remove-edges", help="Edges removed from each complement"),
    target_genus: int = typer.Option(1, "--genus", help="Target genus"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker processes (default PT12_WORKERS)"),
    block_size: Optional[int] = typer.Option(None, "--block-size", help="k-subsets per block (default PT12_BLOCK_SIZE)"),
    checkpoint: Path = typer.Option(Path("pt12.checkpoint"), "--checkpoint"),
    witnesses: Path = typer.Option(Path("pt12.witnesses"), "--witnesses"),
    report: Path = typer.Option(Path("pt12.report"), "--report"),
    filters: bool = typer.Option(True, "--filters/--no-filters", help="Apply PT12 filters (k = 0 only)"),
    filter_set: FilterSet = typer.Option(FilterSet.SEARCH, "--filter-set"),
    indices: Optional[str] = typer.Option(None, "--indices", help="Comma-separated catalog indices to keep"),
    limit: Optional[int] = typer.Option(None, "--limit", help="Keep only the first N catalog entries"),
    anchor_orientation: Optional[bool] = typer.Option(None, "--anchor-orientation/--no-anchor-orientation"),
    edge_order_seed: Optional[int] = typer.Option(None, "--edge-order-seed"),
    stop_after: Optional[int] = typer.Option(None, "--stop-after", hidden=True),
):
    """Search complements of triangulations for torus embeddings after removing k edges."""
    env = env_settings()
    try:
        config = SearchConfig(
            order=order,
            remove_edges=remove_edges,
            genus=target_genus,
            filters=filters,
            filter_set=filter_set,
            workers=env["workers"] if workers is None else workers,
            block_size=env["block_size"] if block_size is None else block_size,
            anchor_orientation=env["anchor_orientation"] if anchor_orientation is None else anchor_orientation,
            edge_order_seed=edge_order_seed,
            source=InputSource.CATALOG if input_path else InputSource.GENERATE,
            input_path=str(input_path) if input_path else None,
            indices=_parse_indices(indices),
            limit=limit,
            checkpoint=str(checkpoint),
            witnesses=str(witnesses),
            report=str(report),
        )
    except ValidationError as e:
        _fail(f"Invalid configuration: {e}")
    _run(config, resume=False, stop_after=stop_after)


@app.command("resume")
def cmd_resume(
    checkpoint: Path = typer.Option(..., "--checkpoint"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    stop_after: Optional[int] = typer.Option(None, "--stop-after", hidden=True),
):
    """Continue an interrupted search from its checkpoint."""
    try:
        stored = Checkpoint.load(checkpoint).config
    except CheckpointError as e:
        _fail(str(e))
    update = {"checkpoint": str(checkpoint)}
    if workers is not None:
        update["workers"] = workers
    _run(stored.model_copy(update=update), resume=True, stop_after=stop_after)


@app.command("dedupe")
def cmd_dedupe(
    input_path: Path = typer.Option(..., "--in", help="Witness file"),
    out: Path = typer.Option(..., "--out", help="One witness per flip-isomorphism class"),
):
    """Keep one witness per class, sorted by canonical code."""
    try:
        lines = [line for line in input_path.read_text(encoding="utf-8").splitlines() if line.strip()]
    except OSError as e:
        _fail(f"Cannot read {input_path}: {e}")
    classes = {}
    for record, line in enumerate(lines, start=1):
        try:
            code = canonical_code(parse_surftri_line(line.split("\t")[-1], record))
        except (GraphFormatError, ValueError) as e:
            _fail(f"Unparseable witness record {record}: {e}")
        classes.setdefault(code, line)
    out.write_text("".join(classes[code] + "\n" for code in sorted(classes)), encoding="utf-8")
    console.print(f"{len(lines)} witnesses, {len(classes)} unique classes written to {out}")


@app.command("fixtures")
def cmd_fixtures(out: Path = typer.Option(..., "--out", help="Catalog file for the near-miss triangulations")):
    """Write the validated near-miss triangulations as a surftri catalog."""
    try:
        fixtures = load_near_miss_fixtures()
    except FixtureError as e:
        _fail(str(e))
    write_catalog(out, [f.planar_embedding for f in fixtures])
    for index, f in enumerate(fixtures):
        console.print(f"{index}: {f.name} ({f.description}), dotted edges {[(u, v) for u, v in f.dotted]}")
