# config.py - Search configuration from .env, environment variables and command-line options

import hashlib
import os
from enum import Enum
from typing import Any, Dict, List, Optional

import orjson
from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

from src.search.genus_search import SearchOptions

DEFAULT_WORKERS = 1
DEFAULT_BLOCK_SIZE = 64
DEFAULT_LOG_LEVEL = "INFO"

_RESUMABLE_FIELDS = {"workers", "checkpoint", "witnesses", "report"}


class InputSource(str, Enum):
    GENERATE = "generate"
    CATALOG = "catalog"


class FilterSet(str, Enum):
    SEARCH = "search"
    ALL = "all"


def _flag(value: Optional[str]) -> bool:
    return (value or "").strip().lower() in {"1", "true", "yes", "on"}


def env_settings() -> Dict[str, Any]:
    """Defaults from .env and the process environment."""
    load_dotenv()
    return {
        "workers": int(os.environ.get("PT12_WORKERS", DEFAULT_WORKERS)),
        "block_size": int(os.environ.get("PT12_BLOCK_SIZE", DEFAULT_BLOCK_SIZE)),
        "log_level": os.environ.get("PT12_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        "anchor_orientation": _flag(os.environ.get("PT12_ANCHOR_ORIENTATION")),
    }


class SearchConfig(BaseModel):
    """Everything that determines the outcome of a complement search"""
    order: int = Field(12, ge=4, le=14)
    remove_edges: int = Field(0, ge=0)
    genus: int = Field(1, ge=0)
    filters: bool = True
    filter_set: FilterSet = FilterSet.SEARCH
    workers: int = Field(DEFAULT_WORKERS, ge=1)
    block_size: int = Field(DEFAULT_BLOCK_SIZE, ge=1)
    anchor_orientation: bool = False
    edge_order_seed: Optional[int] = None
    source: InputSource = InputSource.GENERATE
    input_path: Optional[str] = None
    input_digest: Optional[str] = None
    indices: Optional[List[int]] = None
    limit: Optional[int] = Field(None, ge=0)
    checkpoint: str = "pt12.checkpoint"
    witnesses: str = "pt12.witnesses"
    report: str = "pt12.report"

    @model_validator(mode="before")
    @classmethod
    def _filters_only_for_exact_decompositions(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("remove_edges", 0) >= 1:
            data = {**data, "filters": False}
        return data

    @model_validator(mode="after")
    def _check_sources(self) -> "SearchConfig":
        if self.source is InputSource.CATALOG and not self.input_path:
            raise ValueError("A catalog source needs an input path")
        if self.filters and self.order != 12:
            raise ValueError("The PT12 filters only apply to order-12 triangulations; use --no-filters")
        return self

    def search_options(self) -> SearchOptions:
        return SearchOptions(edge_order_seed=self.edge_order_seed, anchor_orientation=self.anchor_orientation)

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(mode="json"), option=orjson.OPT_SORT_KEYS)

    def config_hash(self) -> str:
        """SHA-256 over the sorted-key JSON of the fields that decide the outcome (not workers or file paths)."""
        payload = self.model_dump(mode="json", exclude=_RESUMABLE_FIELDS)
        return hashlib.sha256(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS)).hexdigest()

    @classmethod
    def from_json(cls, data: bytes) -> "SearchConfig":
        return cls.model_validate(orjson.loads(data))
