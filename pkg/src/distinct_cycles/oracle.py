"""Independent cycle enumeration and exhaustive search for small f(n).

Cycle enumeration is output-sensitive.  The graph is first reduced: vertices
of degree <= 1 are peeled away and maximal chains of degree-2 vertices become
single weighted edges between branch vertices (degree >= 3), which leaves a
small multigraph even for subgraphs with hundreds of thousands of vertices.
Components that are a bare cycle are emitted directly.  Cycles of the reduced
multigraph are found with Johnson's circuit search on its symmetric
orientation; each undirected cycle shows up once per direction and is kept
only in the direction whose first edge id is smaller.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .builder import Graph
from .errors import OutOfRange

DEFAULT_CYCLE_CAP = 10**6
EXTREMAL_RANGE = (3, 8)


@dataclass(frozen=True)
class _Chain:
    a: int
    b: int
    inner: tuple[int, ...]  # vertices strictly between a and b, in a -> b order

    @property
    def weight(self) -> int:
        return len(self.inner) + 1


class _Reduced:
    """Branch-vertex multigraph of a simple graph."""

    def __init__(self, graph: Graph):
        n = graph.vertex_count
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(graph.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        alive_edge = [True] * len(graph.edges)
        deg = [len(a) for a in adj]

        queue = [v for v in range(n) if deg[v] == 1]
        while queue:
            v = queue.pop()
            if deg[v] != 1:
                continue
            for w, e in adj[v]:
                if alive_edge[e]:
                    alive_edge[e] = False
                    deg[v] -= 1
                    deg[w] -= 1
                    if deg[w] == 1:
                        queue.append(w)
                    break

        live = [[(w, e) for w, e in adj[v] if alive_edge[e]] for v in range(n)]
        self.branches = [v for v in range(n) if deg[v] >= 3]
        is_branch = [False] * n
        for v in self.branches:
            is_branch[v] = True

        visited = [False] * len(graph.edges)
        self.chains: list[_Chain] = []
        for b in self.branches:
            for w, e in live[b]:
                if visited[e]:
                    continue
                visited[e] = True
                inner = []
                prev_e, cur = e, w
                while not is_branch[cur]:
                    inner.append(cur)
                    (x, ex), (y, ey) = live[cur]
                    nxt, ne = (y, ey) if ex == prev_e else (x, ex)
                    visited[ne] = True
                    prev_e, cur = ne, nxt
                self.chains.append(_Chain(b, cur, tuple(inner)))

        self.bare_cycles: list[tuple[int, ...]] = []
        for v in range(n):
            if is_branch[v] or deg[v] != 2:
                continue
            (w, e), _ = live[v]
            if visited[e]:
                continue
            seq = [v]
            prev_e, cur = e, w
            visited[e] = True
            while cur != v:
                seq.append(cur)
                (x, ex), (y, ey) = live[cur]
                nxt, ne = (y, ey) if ex == prev_e else (x, ex)
                visited[ne] = True
                prev_e, cur = ne, nxt
            self.bare_cycles.append(tuple(seq))

    def expand(self, start: int, chain_ids: list[int]) -> tuple[int, ...]:
        seq: list[int] = []
        cur = start
        for cid in chain_ids:
            ch = self.chains[cid]
            seq.append(cur)
            if ch.a == cur:
                seq.extend(ch.inner)
                cur = ch.b
            else:
                seq.extend(reversed(ch.inner))
                cur = ch.a
        return tuple(seq)


@dataclass(frozen=True)
class Cycle:
    length: int
    _reduced: _Reduced = field(repr=False, compare=False)
    _start: int = field(repr=False, compare=False)
    _chains: Optional[tuple[int, ...]] = field(repr=False, compare=False, default=None)
    _bare: Optional[tuple[int, ...]] = field(repr=False, compare=False, default=None)

    def vertices(self) -> tuple[int, ...]:
        """The cycle as a vertex sequence starting at its least branch vertex."""
        if self._bare is not None:
            return self._bare
        return self._reduced.expand(self._start, list(self._chains))


def _unblock(v: int, blocked: set, B: dict) -> None:
    stack = [v]
    while stack:
        u = stack.pop()
        if u in blocked:
            blocked.discard(u)
            stack.extend(B.pop(u, ()))


def _johnson(nodes: int, adj: list[list[tuple[int, int]]]) -> Iterator[tuple[int, list[int]]]:
    """Undirected cycles of a loop-free multigraph as ``(start, edge ids)``."""
    for s in range(nodes):
        if sum(1 for w, _ in adj[s] if w > s) < 2:
            continue
        blocked = {s}
        B: dict[int, set] = defaultdict(set)
        path = [s]
        pedges: list[int] = []
        closed = [False]
        stack = [iter(adj[s])]
        while stack:
            advanced = False
            for w, ce in stack[-1]:
                if w < s:
                    continue
                if w == s:
                    if len(pedges) == 1 and ce == pedges[0]:
                        continue
                    closed[-1] = True
                    if pedges[0] < ce:
                        yield s, pedges + [ce]
                elif w not in blocked:
                    path.append(w)
                    pedges.append(ce)
                    blocked.add(w)
                    closed.append(False)
                    stack.append(iter(adj[w]))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            v = path.pop()
            if pedges:
                pedges.pop()
            if closed.pop():
                _unblock(v, blocked, B)
                if closed:
                    closed[-1] = True
            else:
                for w, _ in adj[v]:
                    if w > s:
                        B[w].add(v)


def iter_cycles(graph: Graph) -> Iterator[Cycle]:
    """Every simple cycle of ``graph`` exactly once."""
    red = _Reduced(graph)
    for seq in red.bare_cycles:
        yield Cycle(len(seq), red, seq[0], _bare=seq)
    index = {v: i for i, v in enumerate(red.branches)}
    adj: list[list[tuple[int, int]]] = [[] for _ in red.branches]
    for cid, ch in enumerate(red.chains):
        if ch.a == ch.b:
            yield Cycle(ch.weight, red, ch.a, _chains=(cid,))
            continue
        adj[index[ch.a]].append((index[ch.b], cid))
        adj[index[ch.b]].append((index[ch.a], cid))
    for s, cids in _johnson(len(red.branches), adj):
        length = sum(red.chains[c].weight for c in cids)
        yield Cycle(length, red, red.branches[s], _chains=tuple(cids))


@dataclass(frozen=True)
class CycleSpectrum:
    lengths: tuple[int, ...]  # sorted multiset
    cycle_count: int
    truncated: bool

    def counts(self) -> Counter:
        return Counter(self.lengths)

    def to_dict(self) -> dict:
        return {"lengths": list(self.lengths), "cycle_count": self.cycle_count,
                "truncated": self.truncated}


def enumerate_cycles(graph: Graph, cap: int = DEFAULT_CYCLE_CAP) -> CycleSpectrum:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    lengths = []
    truncated = False
    for cyc in iter_cycles(graph):
        if len(lengths) == cap:
            truncated = True
            break
        lengths.append(cyc.length)
    return CycleSpectrum(tuple(sorted(lengths)), len(lengths), truncated)


@dataclass(frozen=True)
class DistinctVerdict:
    """``status`` is ``"yes"``, ``"no"`` (with two equal-length cycles) or ``"unknown"``."""

    status: str
    length: Optional[int] = None
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.status == "yes"

    def to_dict(self) -> dict:
        out: dict = {"distinct": self.status}
        if self.witness is not None:
            out["length"] = self.length
            out["witness"] = [list(c) for c in self.witness]
        return out


def has_distinct_cycle_lengths(graph: Graph, cap: int = DEFAULT_CYCLE_CAP) -> DistinctVerdict:
    seen: dict[int, Cycle] = {}
    for count, cyc in enumerate(iter_cycles(graph)):
        if count == cap:
            return DistinctVerdict("unknown")
        other = seen.get(cyc.length)
        if other is not None:
            return DistinctVerdict("no", cyc.length, (other.vertices(), cyc.vertices()))
        seen[cyc.length] = cyc
    return DistinctVerdict("yes")


def naive_cycle_lengths(graph: Graph) -> Counter:
    """Cycle-length multiset by brute force over vertex subsets.

    For every subset S and every v in S, counts paths that start at min(S),
    visit exactly S and end at v; closing edges back to min(S) give the
    Hamiltonian cycles of S, each counted twice.  Exponential; n <= 16.
    """
    n = graph.vertex_count
    if n > 16:
        raise OutOfRange("naive checker supports at most 16 vertices")
    nbr = [0] * n
    for u, v in graph.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    paths: dict[tuple[int, int], int] = {}
    for v in range(n):
        paths[(1 << v, v)] = 1
    twice = Counter()
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        size = bin(mask).count("1")
        for v in range(n):
            ways = paths.get((mask, v))
            if not ways:
                continue
            if size >= 3 and nbr[v] >> low & 1:
                twice[size] += ways
            free = nbr[v] & ~mask
            while free:
                bit = free & -free
                free ^= bit
                w = bit.bit_length() - 1
                if w > low:
                    key = (mask | bit, w)
                    paths[key] = paths.get(key, 0) + ways
    return Counter({k: c // 2 for k, c in twice.items()})


# -- exhaustive search for f(n) ------------------------------------------------

def _refine(n: int, adj: list[list[int]], colors: list[int]) -> list[int]:
    """Colour refinement; colour ids are ranks of invariant signatures."""
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def canonical_form(n: int, edges) -> tuple[tuple[int, int], ...]:
    """Canonical edge list under vertex relabelling.

    Individualization-refinement starting from degrees: branch on every
    vertex of the first non-singleton colour class until the colouring is
    discrete, and keep the lexicographically least relabelled edge list.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = None
    stack = [_refine(n, adj, [len(a) for a in adj])]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == n:
            code = tuple(sorted(tuple(sorted((colors[u], colors[v]))) for u, v in edges))
            if best is None or code < best:
                best = code
            continue
        counts = Counter(colors)
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                split = [2 * c for c in colors]
                split[v] -= 1
                stack.append(_refine(n, adj, split))
    return best if best is not None else ()


def _trees(n: int) -> list[tuple[tuple[int, int], ...]]:
    level = {()}
    for size in range(1, n):
        nxt = set()
        for tree in level:
            for v in range(size):
                nxt.add(canonical_form(size + 1, tree + ((v, size),)))
        level = nxt
    return sorted(level)


@dataclass
class ExtremalResult:
    n: int
    max_edges: int
    witness: Graph
    exhaustive: bool
    checks: int = 0
    level_sizes: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"n": self.n, "max_edges": self.max_edges, "exhaustive": self.exhaustive,
                "witness_edges": [list(e) for e in self.witness.edges],
                "checks": self.checks,
                "level_sizes": {str(k): v for k, v in self.level_sizes.items()}}


def max_edges_distinct_cycles(n: int, budget: Optional[int] = None) -> ExtremalResult:
    """Largest edge count of an n-vertex graph whose cycles have distinct lengths.

    A maximum graph can be taken connected (a bridge between components adds
    an edge and no cycle) and the property survives edge deletion, so every
    extremal graph is reached from a spanning tree by adding one edge at a
    time through graphs that keep the property.  The search walks those
    levels up to isomorphism.  ``budget`` caps the number of property checks;
    when it runs out the result is a lower bound with ``exhaustive=False``.
    """
    lo, hi = EXTREMAL_RANGE
    if not lo <= n <= hi:
        raise OutOfRange(f"exhaustive search supports {lo} <= n <= {hi}, got {n}")
    level = _trees(n)
    m = n - 1
    sizes = {m: len(level)}
    checks = 0
    rejected: set = set()
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        nxt: set = set()
        out_of_budget = False
        for g in level:
            present = set(g)
            for e in pairs:
                if e in present:
                    continue
                cand = canonical_form(n, g + (e,))
                if cand in nxt or cand in rejected:
                    continue
                if budget is not None and checks >= budget:
                    out_of_budget = True
                    break
                checks += 1
                if has_distinct_cycle_lengths(Graph(n, list(cand))):
                    nxt.add(cand)
                else:
                    rejected.add(cand)
            if out_of_budget:
                break
        if out_of_budget or not nxt:
            witness = Graph(n, list(min(level)))
            if nxt and out_of_budget:
                m, witness = m + 1, Graph(n, list(min(nxt)))
            return ExtremalResult(n, m, witness, not out_of_budget, checks, sizes)
        m += 1
        level = sorted(nxt)
        sizes[m] = len(level)
