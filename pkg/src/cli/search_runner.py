# search_runner.py - Coordinator and worker pool for complement embedding searches

import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from src.cli.checkpoint import (Checkpoint, CheckpointError, CheckpointRecord, SearchReport, TaskStatus,
                                WitnessRecord, append_witnesses, prune_unconfirmed_witnesses, read_witnesses)
from src.cli.config import FilterSet, InputSource, SearchConfig
from src.embedding.embedding_core import Embedding, canonical_code
from src.filters.pt12_filters import ALL_FILTERS, PT12_ORDER, SEARCH_FILTERS, run_filters, stage_counts
from src.formats.graph_io import parse_surftri_line, read_catalog, write_surftri_line
from src.generation.triangulation_gen import generate
from src.graph.graph_core import Edge, Graph, complement
from src.search.genus_search import SearchOptions, embed_with_removals

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


class FilterConsistencyError(RuntimeError):
    """Raised when an exact decomposition shows up for a graph the filters reject."""


@dataclass(frozen=True)
class SearchTask:
    """One contiguous block of k-subsets of one complement's edges"""
    tri_index: int
    graph: Graph
    block_start: int
    block_stop: int
    remove_edges: int
    genus: int
    options: SearchOptions

    @property
    def key(self) -> Tuple[int, int]:
        return self.tri_index, self.block_start


@dataclass
class TaskResult:
    task_key: Tuple[int, int]
    witnesses: List[Tuple[Tuple[Edge, ...], str, bytes]] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def status(self) -> TaskStatus:
        if self.error is not None:
            return TaskStatus.FAILED
        return TaskStatus.WITNESS_FOUND if self.witnesses else TaskStatus.EXHAUSTED


def run_search_task(task: SearchTask) -> TaskResult:
    """Worker entry point. Failures are returned, not raised, so other blocks keep running."""
    try:
        target = complement(task.graph)
        found = embed_with_removals(target, task.remove_edges, task.genus, task.options,
                                    start=task.block_start, stop=task.block_stop)
        witnesses = [(removed, write_surftri_line(e), canonical_code(e)) for removed, e in found]
        logging.debug(f"Task {task.key} finished with {len(witnesses)} witnesses")
        return TaskResult(task.key, witnesses)
    except Exception as e:
        logging.error(f"Task {task.key} failed: {e}")
        return TaskResult(task.key, error=f"{type(e).__name__}: {e}")


def input_digest(config: SearchConfig) -> str:
    if config.source is InputSource.GENERATE:
        return f"generate:{config.order}"
    return hashlib.sha256(Path(config.input_path).read_bytes()).hexdigest()


def load_input(config: SearchConfig) -> List[Tuple[int, Embedding]]:
    """Catalog entries as (catalog index, embedding), restricted by --indices and --limit."""
    if config.source is InputSource.GENERATE:
        catalog = generate(config.order, workers=config.workers, progress=True).embeddings
    else:
        catalog = read_catalog(config.input_path)
    entries = list(enumerate(catalog))
    if config.indices is not None:
        wanted = set(config.indices)
        entries = [(i, e) for i, e in entries if i in wanted]
    if config.limit is not None:
        entries = entries[:config.limit]
    return entries


def apply_filters(config: SearchConfig, entries: List[Tuple[int, Embedding]]) -> Tuple[List[Tuple[int, Embedding]], List[Tuple[str, int]]]:
    """Survivors and the number left after each stage (the first stage is the input)."""
    stages = [("input", len(entries))]
    if not config.filters:
        return entries, stages
    names = SEARCH_FILTERS if config.filter_set is FilterSet.SEARCH else ALL_FILTERS
    reports = [run_filters(e.graph, names, graph_id=i) for i, e in entries]
    stages += stage_counts(reports, names)
    survivors = [entry for entry, report in zip(entries, reports) if report.survivor]
    return survivors, stages


def build_tasks(config: SearchConfig, entries: List[Tuple[int, Embedding]]) -> List[SearchTask]:
    tasks = []
    options = config.search_options()
    for index, e in entries:
        total = comb(complement(e.graph).size, config.remove_edges)
        for start in range(0, total, config.block_size):
            stop = min(start + config.block_size, total)
            tasks.append(SearchTask(index, e.graph, start, stop, config.remove_edges, config.genus, options))
    return tasks


def _execute(tasks: List[SearchTask], workers: int) -> Iterator[TaskResult]:
    """Results in task order, whatever order the workers finish in."""
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield run_search_task(task)
        return
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        yield from pool.map(run_search_task, tasks)
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _check_filter_consistency(config: SearchConfig, graphs: Dict[int, Graph], result: TaskResult) -> None:
    g = graphs[result.task_key[0]]
    if config.remove_edges != 0 or not result.witnesses or g.order != PT12_ORDER:
        return
    report = run_filters(g, ALL_FILTERS, graph_id=result.task_key[0], short_circuit=False)
    if not report.survivor:
        raise FilterConsistencyError(
            f"Triangulation {result.task_key[0]} has a toroidal complement but fails {report.first_failure.value}")


def summarize(config: SearchConfig, checkpoint: Checkpoint, stages: List[Tuple[str, int]],
              tasks: List[SearchTask]) -> SearchReport:
    """Report built from the files on disk, so interrupted and resumed runs agree."""
    latest = checkpoint.latest()
    witnesses = read_witnesses(config.witnesses)
    codes = sorted({canonical_code(parse_surftri_line(w.surftri, n)) for n, w in enumerate(witnesses, start=1)})
    return SearchReport(
        input_count=stages[0][1],
        stages=stages[1:],
        tasks_total=len(tasks),
        tasks_completed=sum(1 for r in latest if r.status in (TaskStatus.EXHAUSTED, TaskStatus.WITNESS_FOUND)),
        tasks_failed=sum(1 for r in latest if r.status is TaskStatus.FAILED),
        witnesses_found=len(witnesses),
        unique_classes=codes,
    )


def run_search(config: SearchConfig, resume: bool = False, stop_after: Optional[int] = None) -> SearchReport:
    """
    Run (or continue) a complement search and write the checkpoint, witness
    and report files named in the config.

    Args:
        config (SearchConfig): Search settings; for a resume, the settings stored in the checkpoint
        resume (bool): Continue from config.checkpoint instead of starting fresh
        stop_after (int): Stop after this many blocks are flushed (simulated interrupt)

    Returns:
        SearchReport: Counts for the whole run so far

    Raises:
        CheckpointError: If the checkpoint is corrupt or the input changed since it was written
        FilterConsistencyError: If an exact decomposition comes from a filter-rejected graph
    """
    started = time.monotonic()
    digest = input_digest(config)
    if resume:
        checkpoint = Checkpoint.load(config.checkpoint)
        if checkpoint.config.config_hash() != config.config_hash():
            raise CheckpointError(f"{config.checkpoint} was written for a different configuration; start a fresh search")
        if checkpoint.config.input_digest != digest:
            raise CheckpointError(f"Input changed since {config.checkpoint} was written; start a fresh search")
        prune_unconfirmed_witnesses(config.witnesses, checkpoint.done_keys())
    else:
        config = config.model_copy(update={"input_digest": digest})
        checkpoint = Checkpoint.create(config.checkpoint, config)
        Path(config.witnesses).write_text("", encoding="utf-8")

    entries = load_input(config)
    survivors, stages = apply_filters(config, entries)
    tasks = build_tasks(config, survivors)
    pending = [t for t in tasks if not checkpoint.is_done(t.key)]
    graphs = {index: e.graph for index, e in survivors}
    logging.info(f"{len(tasks)} blocks over {len(survivors)} triangulations, {len(pending)} pending")

    flushed = 0
    interrupted = False
    with tqdm(total=len(pending), desc="blocks", disable=None) as bar:
        for result in _execute(pending, config.workers):
            if result.error is None:
                _check_filter_consistency(config, graphs, result)
            tri_index, block_start = result.task_key
            append_witnesses(config.witnesses, [WitnessRecord(tri_index, block_start, removed, text)
                                                for removed, text, _ in result.witnesses])
            best = min((code for _, _, code in result.witnesses), default=None)
            checkpoint.append(CheckpointRecord(tri_index, block_start, result.status, best))
            flushed += 1
            bar.update(1)
            if stop_after is not None and flushed >= stop_after and flushed < len(pending):
                interrupted = True
                logging.warning(f"Stopping after {flushed} blocks; continue with resume")
                break

    report = summarize(config, checkpoint, stages, tasks)
    report.interrupted = interrupted
    report.wall_time = time.monotonic() - started
    Path(config.report).write_text(report.to_text(), encoding="utf-8")
    logging.info(f"Search finished: {report.tasks_completed}/{report.tasks_total} blocks, "
                 f"{report.witnesses_found} witnesses, {len(report.unique_classes)} classes")
    return report
