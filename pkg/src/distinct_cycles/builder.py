"""Explicit graphs for catalog descriptors and a streaming edge-list writer.

Vertex ids are dense: the hub is 0, then each descriptor in ascending index
order gets a contiguous block holding its cycle vertices by position and then
its chord paths by chord and position.  Labels and ids convert in both
directions by arithmetic on the block layout.
"""

from __future__ import annotations

import bisect
import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Sequence

import numpy as np

from .catalog import Kind, Params, SubgraphDescriptor, chorded_spec, classify, iter_subgraphs
from .errors import (
    Degenerate,
    EdgeListFormatError,
    MemoryCapExceeded,
    NotMaterializable,
    SinkFailure,
)

EDGELIST_MAGIC = "# distinct-cycles edgelist v1"
DEFAULT_VERTEX_CAP = 10**7


@dataclass(frozen=True)
class VertexLabel:
    """Structured name of a vertex.

    ``role`` is ``"hub"``, ``"cycle"`` (``position`` counts cycle edges from
    the hub) or ``"path"`` (``chord`` numbered from 1, ``position`` counts
    path edges from the hub).  The tail path of B_0 is chord 0 of subgraph 0.
    """

    subgraph: Optional[int]
    role: str
    chord: int = 0
    position: int = 0


HUB = VertexLabel(None, "hub")


@dataclass
class Graph:
    vertex_count: int
    edges: list[tuple[int, int]]
    labels: Optional[list[VertexLabel]] = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("one label per vertex required")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class Layout:
    """Id block of one descriptor: a hub cycle of ``L`` edges plus chord paths.

    A tail path is modelled as ``L = 0`` with one chord whose far end is the
    path's last vertex rather than a cycle vertex.
    """

    index: int
    offset: int
    L: int
    paths: tuple[int, ...]
    attachments: tuple[int, ...]

    @property
    def new_vertices(self) -> int:
        return max(self.L - 1, 0) + sum(p - 1 for p in self.paths) + (1 if self.L == 0 and self.paths else 0)

    @property
    def edge_count(self) -> int:
        return self.L + sum(self.paths)

    def _path_base(self, chord: int) -> int:
        return self.offset + max(self.L - 1, 0) + sum(p - 1 for p in self.paths[:chord - 1])

    def vertex_id(self, label: VertexLabel) -> int:
        if label.role == "cycle" and 1 <= label.position < self.L:
            return self.offset + label.position - 1
        if label.role == "path" and self.L == 0 and label.chord == 0:
            if 1 <= label.position <= self.paths[0]:
                return self.offset + label.position - 1
        elif label.role == "path" and 1 <= label.chord <= len(self.paths):
            if 1 <= label.position < self.paths[label.chord - 1]:
                return self._path_base(label.chord) + label.position - 1
        raise KeyError(f"{label} not in subgraph {self.index}")

    def label(self, vertex: int) -> VertexLabel:
        local = vertex - self.offset
        if not 0 <= local < self.new_vertices:
            raise KeyError(f"vertex {vertex} not in subgraph {self.index}")
        if self.L == 0:
            return VertexLabel(self.index, "path", 0, local + 1)
        if local < self.L - 1:
            return VertexLabel(self.index, "cycle", 0, local + 1)
        local -= self.L - 1
        for k, p in enumerate(self.paths, start=1):
            if local < p - 1:
                return VertexLabel(self.index, "path", k, local + 1)
            local -= p - 1
        raise AssertionError("unreachable")

    def labels(self) -> list[VertexLabel]:
        i = self.index
        if self.L == 0:
            return [VertexLabel(i, "path", 0, q) for q in range(1, self.new_vertices + 1)]
        out = [VertexLabel(i, "cycle", 0, q) for q in range(1, self.L)]
        for k, p in enumerate(self.paths, start=1):
            out += [VertexLabel(i, "path", k, q) for q in range(1, p)]
        return out

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as ``(u, v)`` arrays with ``u < v`` in local canonical order."""
        us: list[np.ndarray] = []
        vs: list[np.ndarray] = []
        o = self.offset
        if self.L == 0:
            if self.paths and self.paths[0] > 0:
                ell = self.paths[0]
                us += [np.zeros(1, np.int64), np.arange(o, o + ell - 1, dtype=np.int64)]
                vs += [np.full(1, o, np.int64), np.arange(o + 1, o + ell, dtype=np.int64)]
        else:
            last = o + self.L - 2
            mid = np.arange(o, last, dtype=np.int64)
            us += [np.zeros(1, np.int64), mid, np.zeros(1, np.int64)]
            vs += [np.full(1, o, np.int64), mid + 1, np.full(1, last, np.int64)]
            for k, (p, a) in enumerate(zip(self.paths, self.attachments), start=1):
                b = self._path_base(k)
                inner = np.arange(b, b + p - 2, dtype=np.int64)
                us += [np.zeros(1, np.int64), inner, np.full(1, o + a - 1, np.int64)]
                vs += [np.full(1, b, np.int64), inner + 1, np.full(1, b + p - 2, np.int64)]
        if not us:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        return np.concatenate(us), np.concatenate(vs)


def layout_of(desc: SubgraphDescriptor, t: int, offset: int = 1) -> Layout:
    if desc.kind is Kind.TAIL_PATH:
        if desc.param < 0:
            raise NotMaterializable(f"tail length {desc.param} < 0")
        return Layout(desc.index, offset, 0, (desc.param,) if desc.param else (), ())
    if desc.kind is Kind.PLAIN_CYCLE:
        if desc.param < 3:
            raise Degenerate(f"cycle of length {desc.param} is not simple")
        return Layout(desc.index, offset, desc.param, (), ())
    spec = chorded_spec(desc, t)
    return Layout(desc.index, offset, spec.L,
                  tuple(p for p, _ in spec.chords), tuple(a for _, a in spec.chords))


def _layouts(descs: Iterable[SubgraphDescriptor], t: int) -> Iterator[Layout]:
    offset = 1
    for desc in descs:
        lay = layout_of(desc, t, offset)
        offset += lay.new_vertices
        yield lay


def materialize_subgraphs(descs: Sequence[SubgraphDescriptor], t: int,
                          cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Union of several descriptors glued at the hub, ids per the layout rule."""
    descs = sorted(descs, key=lambda d: d.index)
    layouts = [layout_of(d, t) for d in descs]  # validate before allocating
    total = 1 + sum(lay.new_vertices for lay in layouts)
    if total > cap:
        raise MemoryCapExceeded(
            f"{total} vertices exceeds cap {cap}; use stream_edges instead")
    labels = [HUB]
    edges: list[tuple[int, int]] = []
    for lay in _layouts(descs, t):
        labels.extend(lay.labels())
        u, v = lay.edge_arrays()
        edges.extend(zip(u.tolist(), v.tolist()))
    return Graph(total, edges, labels)


def materialize_subgraph(desc: SubgraphDescriptor, t: int,
                         cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    return materialize_subgraphs([desc], t, cap)


class LabelIndex:
    """Bijective ``id <-> VertexLabel`` lookup over a sequence of layouts."""

    def __init__(self, layouts: Sequence[Layout]):
        self._layouts = list(layouts)
        self._offsets = [lay.offset for lay in self._layouts]
        self._by_index = {lay.index: lay for lay in self._layouts}

    def label(self, vertex: int) -> VertexLabel:
        if vertex == 0:
            return HUB
        pos = bisect.bisect_right(self._offsets, vertex) - 1
        if pos < 0:
            raise KeyError(vertex)
        return self._layouts[pos].label(vertex)

    def vertex_id(self, label: VertexLabel) -> int:
        if label.role == "hub":
            return 0
        return self._by_index[label.subgraph].vertex_id(label)


def label_index(descs: Sequence[SubgraphDescriptor], t: int) -> LabelIndex:
    return LabelIndex(list(_layouts(sorted(descs, key=lambda d: d.index), t)))


@dataclass(frozen=True)
class StreamSummary:
    vertices: int
    edges: int
    checksum: str
    formal_vertices: int = 0
    formal_edges: int = 0

    @property
    def total_vertices(self) -> int:
        return self.vertices + self.formal_vertices

    @property
    def total_edges(self) -> int:
        return self.edges + self.formal_edges

    def to_json(self) -> str:
        return json.dumps({"format": "distinct-cycles/stream-summary", "version": 1,
                           **asdict(self), "total_vertices": self.total_vertices,
                           "total_edges": self.total_edges})


def _selected(params: Params, indices: Optional[Iterable[int]]):
    if indices is None:
        return iter_subgraphs(params)
    return iter([classify(i, params) for i in sorted(set(indices))])


def _streamable(desc: SubgraphDescriptor) -> bool:
    return not desc.is_formal


def iter_edge_blocks(params: Params, indices: Optional[Iterable[int]] = None
                     ) -> Iterator[tuple[Layout, np.ndarray, np.ndarray]]:
    """Per-descriptor edge arrays of G (or of the selected subgraphs) in order.

    Formal entries (B_1, B_2) are skipped; ``indices`` must name listed
    subscripts of the catalog.
    """
    descs = (d for d in _selected(params, indices) if _streamable(d))
    for lay in _layouts(descs, params.t):
        u, v = lay.edge_arrays()
        yield lay, u, v


def _header(params: Params, indices, vertices: int, edges: int) -> str:
    which = "all" if indices is None else ",".join(str(i) for i in sorted(set(indices)))
    return (f"{EDGELIST_MAGIC}\n"
            f"# t={params.t} n={params.n} mode={params.mode}\n"
            f"# subgraphs={which}\n"
            f"# vertices={vertices} edges={edges}\n")


def _planned_counts(params: Params, indices) -> tuple[int, int]:
    if indices is None:
        from .ledger import count_totals

        totals = count_totals(params)
        if params.mode == "strict":
            return totals.vertices - 1, totals.edges - 3
        return totals.vertices, totals.edges
    vertices, edges = 1, 0
    for desc in _selected(params, indices):
        if _streamable(desc):
            lay = layout_of(desc, params.t)
            vertices += lay.new_vertices
            edges += lay.edge_count
    return vertices, edges


def stream_edges(params: Params, sink: IO[str],
                 indices: Optional[Iterable[int]] = None) -> StreamSummary:
    """Write G (or the selected subgraphs) to ``sink`` as an edge list.

    Memory stays bounded by the largest single subgraph.  In strict mode the
    formal B_1/B_2 entries cannot be written as simple-graph edges and are
    reported in the summary instead.
    """
    if indices is not None:
        indices = sorted(set(indices))
    vertices, edges = _planned_counts(params, indices)
    digest = hashlib.sha256()
    written = 0
    seen_vertices = 1

    def emit(text: str) -> None:
        try:
            sink.write(text)
        except OSError as exc:
            raise SinkFailure(str(exc), written) from exc
        digest.update(text.encode("ascii"))

    emit(_header(params, indices, vertices, edges))
    for lay, u, v in iter_edge_blocks(params, indices):
        emit("".join(f"{a} {b}\n" for a, b in zip(u.tolist(), v.tolist())))
        written += len(u)
        seen_vertices += lay.new_vertices
    assert (seen_vertices, written) == (vertices, edges)

    formal_v = formal_e = 0
    if params.mode == "strict" and (indices is None or 1 in indices or 2 in indices):
        selected = {1, 2} if indices is None else {1, 2} & set(indices)
        formal_e = sum(selected)
        formal_v = 1 if 2 in selected else 0
    return StreamSummary(seen_vertices, written,
                         digest.hexdigest(), formal_v, formal_e)


def export_edgelist(params: Params, path: Path | str,
                    indices: Optional[Iterable[int]] = None) -> StreamSummary:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        return stream_edges(params, fh, indices)


def count_streamed(params: Params, indices: Optional[Iterable[int]] = None) -> tuple[int, int]:
    """``(vertices, edges)`` produced by the edge generator, without formatting."""
    vertices, edges = 1, 0
    for lay, u, _ in iter_edge_blocks(params, indices):
        vertices += lay.new_vertices
        edges += len(u)
    return vertices, edges


def read_edgelist(source: Path | str | IO[str]) -> tuple[Graph, dict[str, str]]:
    """Parse an edge-list file into a :class:`Graph` plus its header fields.

    Files without a ``vertices=`` header get ``max id + 1`` vertices.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="ascii") as fh:
            return read_edgelist(fh)
    meta: dict[str, str] = {}
    edges: list[tuple[int, int]] = []
    top = -1
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, _, value = token.partition("=")
                    meta[key] = value
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise EdgeListFormatError(f"line {lineno}: {exc}") from exc
        if u > v:
            u, v = v, u
        edges.append((u, v))
        top = max(top, v)
    count = int(meta["vertices"]) if "vertices" in meta else top + 1
    try:
        return Graph(count, edges), meta
    except ValueError as exc:
        raise EdgeListFormatError(str(exc)) from exc
