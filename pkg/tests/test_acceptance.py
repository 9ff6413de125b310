"""Acceptance suite: one PASS/FAIL line per criterion (AC1..AC9).

Each test records its outcome through the ``record`` fixture, so the lines
appear both inline (``-s``) and in the terminal summary.
"""

import hashlib
import itertools
import random
import time
from collections import Counter
from decimal import Decimal, getcontext

import pytest

from distinct_cycles.builder import Graph, export_edgelist, materialize_subgraph
from distinct_cycles.catalog import (
    ChordedCycleSpec,
    Kind,
    SubgraphDescriptor,
    chorded_spec,
    classify,
    enumerate_subgraphs,
    family_index,
    closed_form_n_t,
    validate_params,
)
from distinct_cycles.ledger import (
    LIMIT_CONSTANT,
    bound_report,
    build_ledger,
    chord_cycle_count,
    contribution,
    count_totals,
    cycle_rank_by_subgraph,
    cycles_of_spec,
    table_fidelity,
)
from distinct_cycles.oracle import (
    enumerate_cycles,
    max_edges_distinct_cycles,
    naive_cycle_lengths,
)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ac1_ledger_distinct(record, r):
    p = validate_params(r=r)
    start = time.perf_counter()
    ledger = build_ledger(p)
    elapsed = time.perf_counter() - start
    ok = ledger.verdict == "Distinct" and not ledger.collisions and elapsed < 10
    record(f"AC1 ledger distinct r={r}", ok,
           f"t={p.t} entries={len(ledger.entries)} collisions={len(ledger.collisions)} "
           f"{elapsed:.2f}s")
    assert ok


def _rank_by_hand(p):
    """Independent cycle rank: one per plain cycle, d+1 per chorded spec, 0 for paths."""
    rank = 0
    for d in enumerate_subgraphs(p):
        if d.kind is Kind.PLAIN_CYCLE:
            rank += 1
        elif d.kind is Kind.TEN_CHORD:
            rank += 11
        elif d.is_chorded:
            rank += 2
    return rank


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ac2_edge_count_identity(record, r):
    strict = count_totals(validate_params(r=r))
    simple = count_totals(validate_params(r=r, mode="simple"))
    t = 1260 * r + 169
    rank = _rank_by_hand(validate_params(r=r))
    ok = (strict.excess == 36 * t and simple.excess == 36 * t - 2
          and rank == 36 * t + 1 == strict.cycle_rank
          == cycle_rank_by_subgraph(validate_params(r=r)))
    record(f"AC2 edge gain r={r}", ok,
           f"strict E-V={strict.excess} (36t={36 * t}), simple E-V={simple.excess}, "
           f"rank={rank} (36t+1={36 * t + 1})")
    assert ok


@pytest.mark.parametrize("r", [1, 2])
def test_ac3_n_t_reconciliation(record, r):
    t = 1260 * r + 169
    p = validate_params(r=r)  # n defaults to n_t, so the tail has length 0
    assert classify(0, p).param == 0
    summed = count_totals(p).vertices
    getcontext().prec = 40
    formula = 540 * Decimal(t) ** 2 + Decimal(175811) / 2 * t + Decimal(7989) / 2
    offset = summed - formula
    ok = offset == 0 and formula == closed_form_n_t(t)
    record(f"AC3 n_t reconciliation r={r}", ok,
           f"summed={summed} formula={formula} offset={offset}")
    assert ok, f"offset {offset}"


def test_ac4_oracle_equivalence(record, p1):
    t = p1.t
    cases = [(Kind.THREE_CYCLE_ODD, 0, 3), (Kind.THREE_CYCLE_EVEN, 0, 3),
             (Kind.THREE_CYCLE_SHIFT, 0, 3), (Kind.TEN_CHORD, 58, 66)]
    start = time.perf_counter()
    parts = []
    ok = True
    for kind, k, expected in cases:
        desc = SubgraphDescriptor(family_index(kind, k, t), kind, k)
        assert classify(desc.index, p1) == desc
        spectrum = enumerate_cycles(materialize_subgraph(desc, t))
        derived = Counter(length for length, _ in cycles_of_spec(chorded_spec(desc, t)))
        good = (spectrum.cycle_count == expected and not spectrum.truncated
                and spectrum.counts() == derived)
        ok &= good
        parts.append(f"{kind.value}({k})={spectrum.cycle_count}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    record("AC4 oracle equivalence", ok, f"{' '.join(parts)} {elapsed:.1f}s")
    assert ok


def test_ac5_table_fidelity(record):
    report = table_fidelity(Kind.TEN_CHORD)
    mismatches = [f"derived {d} / table {c}" for d, c in
                  itertools.zip_longest(report.to_dict()["derived_only"],
                                        report.to_dict()["claimed_only"], fillvalue="-")]
    ok = report.matches >= 60
    record("AC5 table fidelity", ok,
           f"{report.matches}/66 exact; mismatches: {mismatches or 'none'}")
    assert ok


def _spec_graph(spec):
    """Materialize a chorded spec directly: hub 0, cycle 1..L-1, then paths."""
    edges = [(0, 1), (0, spec.L - 1)] + [(q, q + 1) for q in range(1, spec.L - 1)]
    nxt = spec.L
    for p, a in spec.chords:
        path = [0] + list(range(nxt, nxt + p - 1)) + [a]
        nxt += p - 1
        edges += [(min(x, y), max(x, y)) for x, y in zip(path, path[1:])]
    return Graph(nxt, edges)


def _random_spec(rng):
    d = rng.randint(0, 12)
    L = rng.randint(max(3, d + 1), 2000)
    attachments = sorted(rng.sample(range(1, L), d))
    budget = 5000 - L
    paths = [rng.randint(2, max(2, min(250, budget // max(d, 1)))) for _ in range(d)]
    return ChordedCycleSpec(L, tuple(zip(paths, attachments)))


def test_ac6_chord_count_law(record):
    rng = random.Random(20240601)
    bad = []
    for trial in range(200):
        spec = _random_spec(rng)
        derived = cycles_of_spec(spec)
        g = _spec_graph(spec)
        assert g.vertex_count <= 5000
        spectrum = enumerate_cycles(g)
        if not (len(derived) == (spec.d + 2) * (spec.d + 1) // 2 == chord_cycle_count(spec.d)
                and spectrum.counts() == Counter(length for length, _ in derived)):
            bad.append(trial)
    ok = not bad
    record("AC6 chord-count law", ok, f"200 specs, failures={bad or 'none'}")
    assert ok


def _naive_f(n):
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(len(pairs), -1, -1):
        for chosen in itertools.combinations(pairs, m):
            if all(c == 1 for c in naive_cycle_lengths(Graph(n, list(chosen))).values()):
                return m
    return 0


def test_ac7_tiny_extremal(record):
    start = time.perf_counter()
    values = {n: max_edges_distinct_cycles(n) for n in (3, 4, 5, 6)}
    elapsed = time.perf_counter() - start
    naive = {n: _naive_f(n) for n in (3, 4)}
    golden = {3: 3, 4: 4, 5: 6, 6: 7}
    ok = (all(values[n].exhaustive and values[n].max_edges == golden[n] for n in golden)
          and naive == {3: 3, 4: 4} and elapsed < 300)
    record("AC7 tiny extremal", ok,
           " ".join(f"f({n})={v.max_edges}" for n, v in values.items())
           + f" naive f(3),f(4)={naive[3]},{naive[4]} {elapsed:.1f}s")
    assert ok


def test_ac8_ratio_convergence(record):
    ratios = [bound_report(validate_params(r=r)).ratio for r in (1, 10, 100, 1000)]
    increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
    near = abs(ratios[-1] - LIMIT_CONSTANT) / LIMIT_CONSTANT < 1e-3
    getcontext().prec = 40
    exact = Decimal(51444) / Decimal(1228323094).sqrt()
    first = abs(Decimal(ratios[0]) - exact) / exact < Decimal("1e-9")
    ok = increasing and near and first
    record("AC8 ratio convergence", ok,
           f"ratios={[round(x, 6) for x in ratios]} limit={LIMIT_CONSTANT:.6f}")
    assert ok


def test_ac9_export_determinism(record, tmp_path, p1):
    index = family_index(Kind.TEN_CHORD, 58, p1.t)
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    sa = export_edgelist(p1, a, [index])
    sb = export_edgelist(p1, b, [index])
    same = a.read_bytes() == b.read_bytes()
    new_vertices, edges = contribution(classify(index, p1), p1)
    counts = (sa.vertices, sa.edges) == (new_vertices + 1, edges)
    ok = same and counts and sa.checksum == hashlib.sha256(a.read_bytes()).hexdigest()
    record("AC9 export determinism", ok,
           f"byte-identical={same} V={sa.vertices} E={sa.edges} sha256={sa.checksum[:16]}")
    assert ok
