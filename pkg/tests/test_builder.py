import hashlib
import io
from collections import Counter

import pytest

from distinct_cycles.builder import (
    EDGELIST_MAGIC,
    HUB,
    Graph,
    VertexLabel,
    count_streamed,
    export_edgelist,
    label_index,
    layout_of,
    materialize_subgraph,
    materialize_subgraphs,
    read_edgelist,
    stream_edges,
)
from distinct_cycles.catalog import (
    Kind,
    SubgraphDescriptor,
    chorded_spec,
    classify,
    enumerate_subgraphs,
    validate_params,
)
from distinct_cycles.errors import (
    Degenerate,
    EdgeListFormatError,
    MemoryCapExceeded,
    NotMaterializable,
    SinkFailure,
)
from distinct_cycles.ledger import contribution, count_totals

TEN_CHORD_58_SHA256 = "8622a8753f1d8f2e8bc07ee989df041b60869fe2e9b8e65f3707b5f461401557"


def test_plain_cycle_golden(p1):
    g = materialize_subgraph(classify(5, p1), p1.t)
    assert g.vertex_count == 5
    assert sorted(g.edges) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert g.labels[0] == HUB
    assert g.labels[3] == VertexLabel(5, "cycle", 0, 3)


def test_plain_cycle_golden_text(p1):
    sink = io.StringIO()
    summary = stream_edges(p1, sink, [5])
    expected = (f"{EDGELIST_MAGIC}\n# t=1429 n=1228323094 mode=strict\n"
                "# subgraphs=5\n# vertices=5 edges=5\n"
                "0 1\n1 2\n2 3\n3 4\n0 4\n")
    assert sink.getvalue() == expected
    assert summary.checksum == hashlib.sha256(expected.encode()).hexdigest()
    assert (summary.vertices, summary.edges) == (5, 5)


def _hand_built(spec):
    """Edges of a chorded spec built by walking explicit vertex names."""
    edges = set()
    cycle = [("hub",)] + [("c", q) for q in range(1, spec.L)] + [("hub",)]
    for a, b in zip(cycle, cycle[1:]):
        edges.add(frozenset((a, b)))
    for k, (p, a) in enumerate(spec.chords, 1):
        path = [("hub",)] + [("p", k, q) for q in range(1, p)] + [("c", a)]
        for x, y in zip(path, path[1:]):
            edges.add(frozenset((x, y)))
    return edges


def test_three_cycle_odd_matches_hand_build(p1):
    desc = classify(30010, p1)
    spec = chorded_spec(desc, p1.t)
    g = materialize_subgraph(desc, p1.t)
    assert g.vertex_count == spec.L + spec.chords[0][0] - 1
    assert g.edge_count == spec.L + spec.chords[0][0]
    name = {}
    for vid, lab in enumerate(g.labels):
        if lab.role == "hub":
            name[vid] = ("hub",)
        elif lab.role == "cycle":
            name[vid] = ("c", lab.position)
        else:
            name[vid] = ("p", lab.chord, lab.position)
    built = {frozenset((name[u], name[v])) for u, v in g.edges}
    assert built == _hand_built(spec)


def test_degree_profile_ten_chord(p1):
    desc = classify(38584, p1)
    g = materialize_subgraph(desc, p1.t)
    deg = g.degrees()
    assert deg[0] == 12
    assert Counter(deg[1:]) == Counter({3: 10, 2: g.vertex_count - 11})
    assert g.edge_count - g.vertex_count + 1 == 11


@pytest.mark.parametrize("param", [0, 1, 2])
def test_degenerate_cycles_rejected(p1, param):
    with pytest.raises(Degenerate):
        layout_of(SubgraphDescriptor(param, Kind.PLAIN_CYCLE, param), p1.t)


def test_negative_tail_rejected(p1):
    with pytest.raises(NotMaterializable):
        layout_of(SubgraphDescriptor(0, Kind.TAIL_PATH, -1), p1.t)


def test_memory_cap(p1):
    with pytest.raises(MemoryCapExceeded):
        materialize_subgraph(classify(38584, p1), p1.t, cap=1000)


def test_tail_path_layout():
    p = validate_params(t=801, relaxed=True, n=None)
    lay = layout_of(SubgraphDescriptor(0, Kind.TAIL_PATH, 4), p.t)
    u, v = lay.edge_arrays()
    assert list(zip(u.tolist(), v.tolist())) == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert lay.new_vertices == 4
    empty = layout_of(SubgraphDescriptor(0, Kind.TAIL_PATH, 0), p.t)
    assert empty.new_vertices == empty.edge_count == 0


def test_label_bijection_across_subgraphs(p1):
    descs = [classify(i, p1) for i in (3, 5, 30010, 30009, 32868)]
    g = materialize_subgraphs(descs, p1.t)
    idx = label_index(descs, p1.t)
    assert len(set(g.labels)) == g.vertex_count
    for vid in range(0, g.vertex_count, 97):
        assert idx.label(vid) == g.labels[vid]
        assert idx.vertex_id(g.labels[vid]) == vid
    assert idx.vertex_id(HUB) == 0


@pytest.mark.parametrize("index", [3, 7, 30010, 30009, 32868, 38584, 34296])
def test_materialized_counts_equal_contribution(p1, index):
    desc = classify(index, p1)
    g = materialize_subgraph(desc, p1.t)
    assert (g.vertex_count - 1, g.edge_count) == contribution(desc, p1)


def test_graph_rejects_non_simple():
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_stream_is_deterministic_and_golden(tmp_path, p1):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    sa = export_edgelist(p1, a, [38584])
    sb = export_edgelist(p1, b, [38584])
    assert a.read_bytes() == b.read_bytes()
    assert sa == sb
    assert sa.checksum == hashlib.sha256(a.read_bytes()).hexdigest() == TEN_CHORD_58_SHA256
    assert (sa.vertices, sa.edges) == (347345, 347355)


def test_roundtrip(tmp_path, p1):
    path = tmp_path / "g.txt"
    descs = [classify(i, p1) for i in (5, 30010)]
    export_edgelist(p1, path, [5, 30010])
    g, meta = read_edgelist(path)
    ref = materialize_subgraphs(descs, p1.t)
    assert g.vertex_count == ref.vertex_count
    assert sorted(g.edges) == sorted(ref.edges)
    assert meta["t"] == "1429" and meta["subgraphs"] == "5,30010"


def test_formal_entries_reported_not_written(p1, p1_simple):
    summary = stream_edges(p1, io.StringIO(), [1, 2, 5])
    assert (summary.formal_vertices, summary.formal_edges) == (1, 3)
    assert (summary.vertices, summary.edges) == (5, 5)
    assert (summary.total_vertices, summary.total_edges) == (6, 8)


class _Broken(io.StringIO):
    def __init__(self, limit):
        super().__init__()
        self.calls = 0
        self.limit = limit

    def write(self, text):
        self.calls += 1
        if self.calls > self.limit:
            raise OSError("disk full")
        return super().write(text)


def test_sink_failure_reports_progress(p1):
    with pytest.raises(SinkFailure) as info:
        stream_edges(p1, _Broken(2), [5, 7, 9])
    assert info.value.edges_written == 5


@pytest.mark.parametrize("mode, dv, de", [("strict", -1, -3), ("simple", 0, 0)])
def test_full_stream_counts_relaxed(mode, dv, de):
    p = validate_params(t=801, relaxed=True, mode=mode)
    totals = count_totals(p)
    assert count_streamed(p) == (totals.vertices + dv, totals.edges + de)
    assert count_streamed(p) == (p.n + dv, p.n + 36 * p.t + de - (2 if mode == "simple" else 0))


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0 0\n", "0 1\n1 0\n"])
def test_read_errors(text):
    with pytest.raises(EdgeListFormatError):
        read_edgelist(io.StringIO(text))


def test_read_without_header_infers_vertex_count():
    g, meta = read_edgelist(io.StringIO("0 1\n2 1\n\n"))
    assert g.vertex_count == 3 and meta == {}
    assert g.edges == [(0, 1), (1, 2)]


def test_catalog_order_is_id_order(p1):
    descs = [d for d in enumerate_subgraphs(p1)[3:40]]
    idx = label_index(descs, p1.t)
    prev = 0
    for d in descs:
        vid = idx.vertex_id(VertexLabel(d.index, "cycle", 0, 1))
        assert vid > prev
        prev = vid
