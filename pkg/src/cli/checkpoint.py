# checkpoint.py - Line-oriented checkpoint, witness and report files for complement searches

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from src.cli.config import SearchConfig
from src.graph.graph_core import Edge

CHECKPOINT_MAGIC = "#pt12-checkpoint"
CONFIG_PREFIX = "#config"

TaskKey = Tuple[int, int]


class CheckpointError(RuntimeError):
    """Raised for a corrupt checkpoint or one written under a different configuration."""


class TaskStatus(str, Enum):
    PENDING = "pending"
    EXHAUSTED = "exhausted"
    WITNESS_FOUND = "witness-found"
    FAILED = "failed"


@dataclass(frozen=True)
class CheckpointRecord:
    """
    One finished task block. Fields, tab separated:
    triangulation index, first k-subset position of the block, status,
    smallest witness canonical code in hex (or '-').
    """
    tri_index: int
    block_start: int
    status: TaskStatus
    code: Optional[bytes] = None

    @property
    def key(self) -> TaskKey:
        return self.tri_index, self.block_start

    def to_line(self) -> str:
        return f"{self.tri_index}\t{self.block_start}\t{self.status.value}\t{self.code.hex() if self.code else '-'}"

    @classmethod
    def from_line(cls, line: str, number: int) -> "CheckpointRecord":
        parts = line.split("\t")
        try:
            tri_index, block_start, status, code = parts
            return cls(int(tri_index), int(block_start), TaskStatus(status),
                       None if code == "-" else bytes.fromhex(code))
        except ValueError as e:
            raise CheckpointError(f"Corrupt checkpoint record on line {number}: {line!r}") from e


class Checkpoint:
    """Append-only record of finished blocks; the last record for a block wins."""

    def __init__(self, path: Union[str, Path], config: SearchConfig, records: Optional[List[CheckpointRecord]] = None):
        self.path = Path(path)
        self.config = config
        self.records: List[CheckpointRecord] = records or []
        self._latest: Dict[TaskKey, CheckpointRecord] = {r.key: r for r in self.records}

    @classmethod
    def create(cls, path: Union[str, Path], config: SearchConfig) -> "Checkpoint":
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"{CHECKPOINT_MAGIC}\t{config.config_hash()}\n")
            f.write(f"{CONFIG_PREFIX}\t{config.to_json().decode()}\n")
        return cls(path, config)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Checkpoint":
        """
        Read a checkpoint and check its header.

        Raises:
            CheckpointError: If the file is missing, truncated, or its stored hash
                does not match the stored configuration
        """
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise CheckpointError(f"Cannot read checkpoint {path}: {e}") from e
        if len(lines) < 2 or not lines[0].startswith(CHECKPOINT_MAGIC + "\t") or not lines[1].startswith(CONFIG_PREFIX + "\t"):
            raise CheckpointError(f"{path} is not a checkpoint file; start a fresh search")
        stored_hash = lines[0].split("\t", 1)[1]
        try:
            config = SearchConfig.from_json(lines[1].split("\t", 1)[1].encode())
        except ValueError as e:
            raise CheckpointError(f"Corrupt configuration in {path}; start a fresh search") from e
        if config.config_hash() != stored_hash:
            raise CheckpointError(f"Configuration hash mismatch in {path}; start a fresh search")
        records = [CheckpointRecord.from_line(line, number) for number, line in enumerate(lines[2:], start=3) if line]
        logging.info(f"Loaded checkpoint {path}: {len(records)} records")
        return cls(path, config, records)

    def append(self, record: CheckpointRecord) -> None:
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(record.to_line() + "\n")
        logging.debug(f"Checkpoint {self.path}: {record.to_line()}")
        self.records.append(record)
        self._latest[record.key] = record

    def status_of(self, key: TaskKey) -> TaskStatus:
        record = self._latest.get(key)
        return record.status if record else TaskStatus.PENDING

    def is_done(self, key: TaskKey) -> bool:
        return self.status_of(key) in (TaskStatus.EXHAUSTED, TaskStatus.WITNESS_FOUND)

    def done_keys(self) -> Set[TaskKey]:
        return {key for key in self._latest if self.is_done(key)}

    def latest(self) -> List[CheckpointRecord]:
        return [self._latest[key] for key in sorted(self._latest)]


@dataclass(frozen=True)
class WitnessRecord:
    """
    One witness line, tab separated: triangulation index, block start,
    removed edges as 'u-v,u-v' (or '-'), surftri embedding of the complement
    with those edges removed.
    """
    tri_index: int
    block_start: int
    removed: Tuple[Edge, ...]
    surftri: str

    @property
    def key(self) -> TaskKey:
        return self.tri_index, self.block_start

    def to_line(self) -> str:
        removed = ",".join(f"{u}-{v}" for u, v in self.removed) or "-"
        return f"{self.tri_index}\t{self.block_start}\t{removed}\t{self.surftri}"

    @classmethod
    def from_line(cls, line: str, number: int) -> "WitnessRecord":
        parts = line.split("\t")
        try:
            tri_index, block_start, removed, surftri = parts
            edges = () if removed == "-" else tuple(
                tuple(int(x) for x in pair.split("-")) for pair in removed.split(","))
            return cls(int(tri_index), int(block_start), edges, surftri)
        except ValueError as e:
            raise CheckpointError(f"Corrupt witness record {number}: {line!r}") from e


def read_witnesses(path: Union[str, Path]) -> List[WitnessRecord]:
    p = Path(path)
    if not p.exists():
        return []
    lines = p.read_text(encoding="utf-8").splitlines()
    return [WitnessRecord.from_line(line, number) for number, line in enumerate(lines, start=1) if line]


def append_witnesses(path: Union[str, Path], witnesses: Iterable[WitnessRecord]) -> None:
    with open(path, "a", encoding="utf-8") as f:
        for w in witnesses:
            f.write(w.to_line() + "\n")


def prune_unconfirmed_witnesses(path: Union[str, Path], confirmed: Set[TaskKey]) -> int:
    """Drop witness lines whose block never reached the checkpoint; returns how many were dropped."""
    records = read_witnesses(path)
    kept = [w for w in records if w.key in confirmed]
    before = len(records)
    Path(path).write_text("".join(w.to_line() + "\n" for w in kept), encoding="utf-8")
    if before != len(kept):
        logging.warning(f"Dropped {before - len(kept)} witness lines from unfinished blocks in {path}")
    return before - len(kept)


@dataclass
class SearchReport:
    """
    Summary of a search. The report file holds one 'key<TAB>value' line per
    field; wall time is console-only.
    """
    input_count: int = 0
    stages: List[Tuple[str, int]] = field(default_factory=list)
    tasks_total: int = 0
    tasks_completed: int = 0
    tasks_failed: int = 0
    witnesses_found: int = 0
    unique_classes: List[bytes] = field(default_factory=list)
    interrupted: bool = False
    wall_time: float = 0.0

    def to_text(self) -> str:
        lines = [f"input\t{self.input_count}"]
        lines += [f"stage\t{name}\t{count}" for name, count in self.stages]
        lines += [
            f"tasks\t{self.tasks_total}",
            f"completed\t{self.tasks_completed}",
            f"failed\t{self.tasks_failed}",
            f"witnesses\t{self.witnesses_found}",
            f"classes\t{len(self.unique_classes)}",
        ]
        lines += [f"class\t{code.hex()}" for code in self.unique_classes]
        return "\n".join(lines) + "\n"
