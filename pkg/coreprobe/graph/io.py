"""
Graph ingestion and serialization.

Two on-disk formats are supported:

Edge list (text):
    One edge per line as two whitespace-separated nonnegative integer ids.
    Blank lines and lines starting with ``#`` are ignored. Node ids are
    compacted to 0..n-1 in order of first appearance.

Binary CSR (little-endian):
    magic ``b"CPCSR\\x00\\x01\\x00"`` | version u32 | flags u32 | n u64 | m u64 |
    offsets (n+1) x i64 | neighbors 2m x i64 | [original ids n x i64]

    flags bit 0 marks the presence of the original-id block.
"""

import io
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, TextIO

import numpy as np

from coreprobe.core.config import get_settings
from coreprobe.core.exceptions import CapacityError, GraphFormatError, StorageError
from coreprobe.graph.csr import INDEX_DTYPE, Graph

logger = logging.getLogger(__name__)

CSR_MAGIC = b"CPCSR\x00\x01\x00"
CSR_VERSION = 1
_HEADER = struct.Struct("<8sIIQQ")
_FLAG_ORIGINAL_IDS = 0x1
_LE_INT64 = np.dtype("<i8")


@dataclass(frozen=True)
class LoadOptions:
    """Edge-list ingestion switches."""
    symmetrize: bool = True
    drop_self_loops: bool = True
    dedup: bool = True
    max_node_id: int | None = None

    @classmethod
    def from_settings(cls) -> "LoadOptions":
        graph = get_settings().graph
        return cls(
            symmetrize=graph.symmetrize,
            drop_self_loops=graph.drop_self_loops,
            dedup=graph.dedup,
            max_node_id=graph.max_node_id,
        )


def load_edge_list(source: BinaryIO | bytes, options: LoadOptions | None = None) -> Graph:
    """Parse an edge-list byte stream into a Graph.

    Args:
        source: Readable binary stream or raw bytes.
        options: Ingestion switches; defaults come from settings.

    Raises:
        GraphFormatError: Malformed line (carries the line number).
        CapacityError: Node id above the configured maximum.
    """
    options = options or LoadOptions.from_settings()
    max_node_id = options.max_node_id if options.max_node_id is not None else get_settings().graph.max_node_id
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else source

    id_map: dict[int, int] = {}
    src: list[int] = []
    dst: list[int] = []

    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(b"#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 2 node ids, got {len(tokens)} tokens", line_number)
        endpoints = []
        for token in tokens:
            if not token.isdigit():
                raise GraphFormatError(f"invalid node id {token.decode(errors='replace')!r}", line_number)
            node = int(token)
            if node > max_node_id:
                raise CapacityError(node, max_node_id, line_number)
            endpoints.append(id_map.setdefault(node, len(id_map)))
        src.append(endpoints[0])
        dst.append(endpoints[1])

    original_ids = np.fromiter(id_map.keys(), dtype=INDEX_DTYPE, count=len(id_map))
    src_arr = np.asarray(src, dtype=INDEX_DTYPE)
    dst_arr = np.asarray(dst, dtype=INDEX_DTYPE)
    self_loops = int(np.count_nonzero(src_arr == dst_arr))

    graph = Graph.from_edges(
        src_arr,
        dst_arr,
        n=len(id_map),
        symmetrize=options.symmetrize,
        drop_self_loops=options.drop_self_loops,
        dedup=options.dedup,
        original_ids=original_ids,
    )

    if options.drop_self_loops and self_loops:
        logger.warning(f"Dropped {self_loops} self-loops during ingestion")
    if options.dedup:
        kept = len(src) - (self_loops if options.drop_self_loops else 0)
        expected = kept if options.symmetrize else kept // 2
        duplicates = expected - graph.edge_count
        if duplicates > 0:
            logger.warning(f"Removed {duplicates} duplicate edges during ingestion")

    logger.info(f"Loaded edge list: n={graph.node_count}, m={graph.edge_count}")
    return graph


def dump_edge_list(graph: Graph, sink: TextIO, original_ids: bool = True) -> None:
    """Write each undirected edge once as ``u v``.

    Isolated nodes are written as self-loops so that reloading with the
    default options restores them with degree 0.
    """
    ids = graph.original_ids if original_ids and graph.original_ids is not None else None
    sink.write(f"# n={graph.node_count} m={graph.edge_count}\n")

    def name(v: int) -> int:
        return int(ids[v]) if ids is not None else v

    src, dst = graph.edge_pairs()
    order = np.lexsort((dst, src))
    for u, v in zip(src[order].tolist(), dst[order].tolist()):
        sink.write(f"{name(u)} {name(v)}\n")
    for w in np.flatnonzero(graph.degrees == 0).tolist():
        sink.write(f"{name(w)} {name(w)}\n")


def save_csr(graph: Graph, path: str | Path) -> None:
    """Write the binary CSR format."""
    flags = _FLAG_ORIGINAL_IDS if graph.original_ids is not None else 0
    header = _HEADER.pack(CSR_MAGIC, CSR_VERSION, flags, graph.node_count, graph.edge_count)
    try:
        with open(path, "wb") as f:
            f.write(header)
            f.write(graph.offsets.astype(_LE_INT64).tobytes())
            f.write(graph.neighbors.astype(_LE_INT64).tobytes())
            if graph.original_ids is not None:
                f.write(graph.original_ids.astype(_LE_INT64).tobytes())
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e}", {"path": str(path)}) from e
    logger.info(f"Saved CSR graph to {path}")


def load_csr(path: str | Path) -> Graph:
    """Read the binary CSR format written by save_csr."""
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise StorageError(f"Cannot read {path}: {e}", {"path": str(path)}) from e

    if len(data) < _HEADER.size:
        raise GraphFormatError("truncated CSR header")
    magic, version, flags, n, m = _HEADER.unpack_from(data)
    if magic != CSR_MAGIC:
        raise GraphFormatError("not a CoreProbe CSR file (bad magic)")
    if version != CSR_VERSION:
        raise GraphFormatError(f"unsupported CSR version {version}")

    counts = [n + 1, 2 * m] + ([n] if flags & _FLAG_ORIGINAL_IDS else [])
    expected = _HEADER.size + 8 * sum(counts)
    if len(data) != expected:
        raise GraphFormatError(f"CSR payload size {len(data)} != expected {expected}")

    blocks = []
    offset = _HEADER.size
    for count in counts:
        blocks.append(np.frombuffer(data, dtype=_LE_INT64, count=count, offset=offset).astype(INDEX_DTYPE))
        offset += 8 * count
    original_ids = blocks[2] if len(blocks) == 3 else None
    return Graph(blocks[0], blocks[1], original_ids=original_ids)


def is_csr_file(path: str | Path) -> bool:
    try:
        with open(path, "rb") as f:
            return f.read(len(CSR_MAGIC)) == CSR_MAGIC
    except OSError:
        return False


def load_graph(path: str | Path, options: LoadOptions | None = None) -> Graph:
    """Load either format, detected from the file's leading bytes."""
    if is_csr_file(path):
        return load_csr(path)
    try:
        with open(path, "rb") as f:
            return load_edge_list(f, options)
    except OSError as e:
        raise StorageError(f"Cannot read {path}: {e}", {"path": str(path)}) from e
