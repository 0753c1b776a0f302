# graph_io.py - Surftri ascii, planar_code and plain-text embedding formats

import logging
import string
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from src.embedding.embedding_core import Embedding, EmbeddingError, genus
from src.graph.graph_core import GraphError

PLANAR_CODE_HEADER = b">>planar_code<<"
SURFTRI_MAX_ORDER = len(string.ascii_lowercase)


class CatalogFormat(str, Enum):
    SURFTRI = "surftri"
    PLANAR_CODE = "planar_code"


class GraphFormatError(ValueError):
    """Parse or write failure with the position of the offending input."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 offset: Optional[int] = None, record: Optional[int] = None):
        self.line = line
        self.column = column
        self.offset = offset
        self.record = record
        where = []
        if record is not None:
            where.append(f"record {record}")
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def _find_bad_entry(rings: List[List[int]]) -> Optional[Tuple[int, int, str]]:
    """First loop, repeated neighbour or one-sided adjacency as (vertex, list index, message)."""
    members = [set(ring) for ring in rings]
    for v, ring in enumerate(rings):
        seen = set()
        for k, u in enumerate(ring):
            if u == v:
                return v, k, f"Vertex {v} lists itself"
            if u in seen:
                return v, k, f"Vertex {v} lists neighbour {u} twice"
            seen.add(u)
            if v not in members[u]:
                return v, k, f"Asymmetric adjacency: {u} in list of {v} but not vice versa"
    return None


def parse_surftri_line(text: str, line: int = 1) -> Embedding:
    """
    Parse one surftri line such as "4 bcd,adc,abd,acb" ('a' is vertex 0).

    Raises:
        GraphFormatError: On order/letter mismatch, repeated or asymmetric neighbours
    """
    text = text.rstrip("\r\n")
    head, sep, body = text.partition(" ")
    if not sep or not head.isdigit():
        raise GraphFormatError("Expected '<order> <lists>'", line, 1)
    order = int(head)
    if not 1 <= order <= SURFTRI_MAX_ORDER:
        raise GraphFormatError(f"Order {order} outside 1..{SURFTRI_MAX_ORDER}", line, 1)
    lists = body.split(",")
    if len(lists) != order:
        raise GraphFormatError(f"Found {len(lists)} adjacency lists for order {order}", line, len(head) + 2)
    rings: List[List[int]] = []
    columns: List[List[int]] = []
    column = len(head) + 2
    for letters in lists:
        ring, cols = [], []
        for ch in letters:
            u = ord(ch) - ord("a")
            if not 0 <= u < order:
                raise GraphFormatError(f"Letter {ch!r} is not a vertex of an order-{order} graph", line, column)
            ring.append(u)
            cols.append(column)
            column += 1
        rings.append(ring)
        columns.append(cols)
        column += 1
    bad = _find_bad_entry(rings)
    if bad:
        v, k, message = bad
        raise GraphFormatError(message, line, columns[v][k])
    try:
        return Embedding.from_rotation(rings)
    except (EmbeddingError, GraphError) as e:
        raise GraphFormatError(str(e), line) from e


def write_surftri_line(e: Embedding) -> str:
    if e.order > SURFTRI_MAX_ORDER:
        raise GraphFormatError(f"Surftri letters cover at most {SURFTRI_MAX_ORDER} vertices, got {e.order}")
    letters = string.ascii_lowercase
    return f"{e.order} " + ",".join("".join(letters[u] for u in ring) for ring in e.rotation)


def iter_surftri(text: str) -> Iterator[Embedding]:
    """One embedding per non-blank line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        if raw.strip():
            yield parse_surftri_line(raw, number)


def write_surftri(embeddings: Iterable[Embedding]) -> str:
    return "".join(write_surftri_line(e) + "\n" for e in embeddings)


def _planar_code_layout(data: bytes) -> Tuple[int, str]:
    """Payload start and byte order (for 2-byte entries) from the optional header."""
    if not data.startswith(b">>planar_code"):
        return 0, "little"
    end = data.find(b"<<", 2)
    if end < 0:
        raise GraphFormatError("Unterminated planar_code header", offset=0)
    options = data[len(b">>planar_code"):end].split()
    byteorder = "big" if b"be" in options else "little"
    return end + 2, byteorder


def iter_planar_code(data: bytes) -> Iterator[Embedding]:
    """
    Stream embeddings from a planar_code byte string. Each record is the
    order, then every vertex's neighbours (1-indexed, rotation order) closed
    by 0. A leading 0 switches the record to 2-byte entries.

    Raises:
        GraphFormatError: On truncation or an out-of-range neighbour, with the byte offset
    """
    pos, byteorder = _planar_code_layout(data)
    record = 0

    def take(size: int) -> int:
        nonlocal pos
        if pos + size > len(data):
            raise GraphFormatError("Truncated planar_code record", offset=pos, record=record)
        value = int.from_bytes(data[pos:pos + size], byteorder)
        pos += size
        return value

    while pos < len(data):
        start = pos
        width = 1
        order = take(1)
        if order == 0:
            width = 2
            order = take(2)
        if order == 0:
            raise GraphFormatError("Record has order 0", offset=start, record=record)
        rings: List[List[int]] = []
        offsets: List[List[int]] = []
        for _ in range(order):
            ring, where = [], []
            while True:
                at = pos
                u = take(width)
                if u == 0:
                    break
                if u > order:
                    raise GraphFormatError(f"Neighbour {u} exceeds order {order}", offset=at, record=record)
                ring.append(u - 1)
                where.append(at)
            rings.append(ring)
            offsets.append(where)
        bad = _find_bad_entry(rings)
        if bad:
            v, k, message = bad
            raise GraphFormatError(message, offset=offsets[v][k], record=record)
        try:
            embedding = Embedding.from_rotation(rings)
        except (EmbeddingError, GraphError) as e:
            raise GraphFormatError(str(e), offset=start, record=record) from e
        yield embedding
        record += 1


def parse_planar_code(data: bytes) -> List[Embedding]:
    return list(iter_planar_code(data))


def write_planar_code(embeddings: Iterable[Embedding], header: bool = True) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for e in embeddings:
        out.append(e.order)
        for ring in e.rotation:
            out.extend(u + 1 for u in ring)
            out.append(0)
    return bytes(out)


def write_embedding_text(e: Embedding) -> str:
    """Own format: "order genus", then "v: neighbours" per vertex in rotation order."""
    lines = [f"{e.order} {genus(e)}"]
    lines += [f"{v}:" + "".join(f" {u}" for u in ring) for v, ring in enumerate(e.rotation)]
    return "\n".join(lines) + "\n"


def parse_embedding_text(text: str) -> Embedding:
    """
    Inverse of write_embedding_text. The genus field is recomputed and must match.

    Raises:
        GraphFormatError: On malformed lines, bad adjacency or a genus mismatch
    """
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("Empty embedding text", 1, 1)
    fields = lines[0].split()
    if len(fields) != 2 or not all(f.isdigit() for f in fields):
        raise GraphFormatError("Header must be '<order> <genus>'", 1, 1)
    order, stated = int(fields[0]), int(fields[1])
    if len(lines) != order + 1:
        raise GraphFormatError(f"Expected {order} vertex lines, found {len(lines) - 1}", len(lines), 1)
    rings: List[List[int]] = []
    columns: List[List[int]] = []
    for v in range(order):
        number = v + 2
        label, sep, rest = lines[v + 1].partition(":")
        if not sep or label.strip() != str(v):
            raise GraphFormatError(f"Expected line to start with '{v}:'", number, 1)
        ring, cols = [], []
        column = len(label) + 2
        for token in rest.split(" "):
            if token:
                if not token.isdigit() or int(token) >= order:
                    raise GraphFormatError(f"Bad neighbour {token!r}", number, column)
                ring.append(int(token))
                cols.append(column)
            column += len(token) + 1
        rings.append(ring)
        columns.append(cols)
    bad = _find_bad_entry(rings)
    if bad:
        v, k, message = bad
        raise GraphFormatError(message, v + 2, columns[v][k])
    try:
        e = Embedding.from_rotation(rings)
        actual = genus(e)
    except (EmbeddingError, GraphError) as err:
        raise GraphFormatError(str(err), 1) from err
    if actual != stated:
        raise GraphFormatError(f"Stated genus {stated} but the rotation system has genus {actual}", 1, len(fields[0]) + 2)
    return e


def detect_format(data: bytes) -> CatalogFormat:
    return CatalogFormat.PLANAR_CODE if data.startswith(b">>planar_code") else CatalogFormat.SURFTRI


def read_catalog(path: Union[str, Path]) -> List[Embedding]:
    """Load a surftri or planar_code catalog; the format is picked from the header."""
    data = Path(path).read_bytes()
    fmt = detect_format(data)
    if fmt is CatalogFormat.PLANAR_CODE:
        embeddings = parse_planar_code(data)
    else:
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"Non-ASCII byte 0x{data[e.start]:02x} in surftri catalog",
                                   line=data.count(b"\n", 0, e.start) + 1,
                                   column=e.start - data.rfind(b"\n", 0, e.start), offset=e.start) from e
        embeddings = list(iter_surftri(text))
    logging.info(f"Read {len(embeddings)} embeddings from {path} ({fmt.value})")
    return embeddings


def write_catalog(path: Union[str, Path], embeddings: Sequence[Embedding],
                  fmt: CatalogFormat = CatalogFormat.SURFTRI) -> None:
    if fmt is CatalogFormat.PLANAR_CODE:
        Path(path).write_bytes(write_planar_code(embeddings))
    else:
        Path(path).write_text(write_surftri(embeddings), encoding="ascii")
    logging.info(f"Wrote {len(embeddings)} embeddings to {path} ({fmt.value})")
