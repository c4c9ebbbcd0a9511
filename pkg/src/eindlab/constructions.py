"""Host constructions.

Vertex numbering is deterministic throughout: parts follow base-vertex order,
copies inside a part are consecutive, clique / left parts come first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .fractional import VertexWeighting
from .graphs import Graph, Matching
from .local import (
    MINUS,
    PLUS,
    LocalDigraph,
    LocalEdge,
    blowup_local,
    is_ldag,
    ldg,
    topological_sort,
    with_matching,
)
from .quotient import INDEPENDENT, Quotient

H4T_MAX_DEPTH = 3


# --- elementary hosts ---------------------------------------------------------

def star(s: int) -> Graph:
    """K_{1,s}; the centre is vertex 0."""
    return Graph.from_edges(s + 1, [(0, i) for i in range(1, s + 1)])


def complete(t: int) -> Graph:
    return Graph.from_edges(t, itertools.combinations(range(t), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def matching_host(m: int) -> Graph:
    return Graph.from_edges(2 * m, [(2 * i, 2 * i + 1) for i in range(m)])


def join_clique_independent(a: int, b: int) -> Graph:
    """K_a joined to an independent set of size b; the clique is 0..a-1."""
    edges = list(itertools.combinations(range(a), 2))
    edges += [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(a + b, edges)


def corona(t: int, s: int) -> Graph:
    """K_t with s pendant leaves at each clique vertex.

    Clique vertices are 0..t-1; the leaves of clique vertex i are
    t + i*s .. t + (i+1)*s - 1.
    """
    edges = list(itertools.combinations(range(t), 2))
    for i in range(t):
        edges += [(i, t + i * s + j) for j in range(s)]
    return Graph.from_edges(t + t * s, edges)


def attach_pendants(g: Graph) -> tuple[Graph, Matching]:
    """Pendant vertex ``n + v`` hangs off ``v``; the pendant edges form the matching."""
    n = g.n
    pend = [(v, n + v) for v in range(n)]
    return Graph.from_edges(2 * n, g.edges() + pend), Matching.of(pend)


def weighted_blowup(g: Graph, alpha: VertexWeighting, m: int) -> Graph:
    """Blow vertex v up into floor((m / e(g))^alpha(v)) copies, complete between
    adjacent parts. The edge count stays within the budget m."""
    if not alpha.is_fractional_independent_set(g):
        raise ValueError("weights are not a fractional independent set")
    if g.isolated():
        raise ValueError("pattern has isolated vertices")
    if m < g.e:
        raise ValueError("budget m is below e(g)")
    ratio = Fraction(m, g.e)
    sizes = [_floor_power(ratio, Fraction(a)) for a in alpha.weights]
    out = BlowupSpec(g, tuple(sizes)).materialize()
    assert out.e <= m, (out.e, m)
    return out


def _floor_power(base: Fraction, exp: Fraction) -> int:
    """floor(base ** exp) for rational base >= 1 and exp in [0, 1], exactly."""
    p, q = exp.numerator, exp.denominator
    # want the largest x with x^q <= base^p
    target = base**p
    x = int(float(base) ** float(exp))
    while x > 0 and Fraction(x) ** q > target:
        x -= 1
    while Fraction(x + 1) ** q <= target:
        x += 1
    return x


def pinch(h: Graph) -> Graph:
    """One vertex per host edge; two disjoint edges are adjacent when some
    host edge meets both. Vertex i is the i-th edge in sorted order."""
    es = h.edges()
    out = []
    for i, j in itertools.combinations(range(len(es)), 2):
        (a, b), (c, d) = es[i], es[j]
        if {a, b} & {c, d}:
            continue
        if any(h.has_edge(x, y) for x in (a, b) for y in (c, d)):
            out.append((i, j))
    return Graph.from_edges(len(es), out)


# --- blowups ------------------------------------------------------------------

Base = Union[Graph, LocalDigraph]


@dataclass(frozen=True)
class BlowupSpec:
    """Every base vertex becomes an edge-free part of the given size; adjacent
    parts are joined completely (with signs copied for local digraphs)."""

    base: Base
    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if len(self.sizes) != self.base.n:
            raise ValueError("one size per base vertex is required")
        if any(s < 1 for s in self.sizes):
            raise ValueError("part sizes must be positive")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def e(self) -> int:
        if isinstance(self.base, Graph):
            return sum(self.sizes[u] * self.sizes[v] for u, v in self.base.edges())
        return sum(self.sizes[x.u] * self.sizes[x.v] for x in self.base.edges)

    def starts(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.sizes[:-1]))

    def part(self, v: int) -> range:
        s = self.starts()[v]
        return range(s, s + self.sizes[v])

    def to_quotient(self) -> Quotient:
        if not isinstance(self.base, Graph):
            raise TypeError("only graph blowups have a counting quotient")
        return Quotient(self.sizes, (INDEPENDENT,) * self.base.n, self.base.adj)

    def materialize(self) -> Base:
        starts = self.starts()
        if isinstance(self.base, Graph):
            edges = []
            for u, v in self.base.edges():
                for a in range(self.sizes[u]):
                    for b in range(self.sizes[v]):
                        edges.append((starts[u] + a, starts[v] + b))
            return Graph.from_edges(self.n, edges)
        out = []
        for x in self.base.edges:
            for a in range(self.sizes[x.u]):
                for b in range(self.sizes[x.v]):
                    out.append(LocalEdge(starts[x.u] + a, x.su, starts[x.v] + b, x.sv))
        return LocalDigraph(self.n, tuple(out))


def blowup(spec: BlowupSpec) -> Base:
    return spec.materialize()


def iterated_blowup(base: Base, depth: int) -> Base:
    """Depth 0 is the base; depth d puts a copy of depth d-1 inside every part."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    cur = base
    for _ in range(depth):
        cur = _substitute_all(base, cur)
    return cur


def _substitute_all(outer: Base, inner: Base) -> Base:
    k = inner.n
    if isinstance(outer, Graph):
        edges = []
        for u, v in outer.edges():
            edges += [(u * k + a, v * k + b) for a in range(k) for b in range(k)]
        for v in range(outer.n):
            edges += [(v * k + a, v * k + b) for a, b in inner.edges()]
        return Graph.from_edges(outer.n * k, edges)
    cur = outer
    for v in reversed(range(outer.n)):
        cur = blowup_local(cur, v, inner)
    return cur


# --- the LDAG reduction host ------------------------------------------------

def _forward_normalized(L: LocalDigraph) -> LocalDigraph:
    """Relabel along a topological sort and flip so every edge is + at its
    earlier endpoint."""
    ts = topological_sort(L)
    if ts is None:
        raise ValueError("local digraph is not acyclic")
    perm = [0] * L.n
    for i, v in enumerate(ts.order):
        perm[v] = i
    out = L
    for v, s in zip(ts.order, ts.signs):
        if s == MINUS:
            out = out.flip(v)
    return out.relabel(perm)


def ldag_host_blowup(L: LocalDigraph, part_pairs) -> tuple[BlowupSpec, LocalDigraph]:
    """Blowup of gr(L) plus its pairing matching, not materialized.

    ``L`` is first put in topological order with + at every earlier
    endpoint. Vertex i's plus copy (base vertex 2i) gets ``p_i`` copies,
    its minus copy (2i+1) gets ``q_i``. Returns the spec and the normalized
    local digraph it was built from.
    """
    pairs = [tuple(p) for p in part_pairs]
    if len(pairs) != L.n:
        raise ValueError("one (p, q) pair per vertex is required")
    if any(p < 1 or q < 1 for p, q in pairs):
        raise ValueError("part sizes must be positive")
    if len({p * q for p, q in pairs}) > 1:
        raise ValueError("all products p_i * q_i must be equal")
    if any(a[0] >= b[0] for a, b in zip(pairs, pairs[1:])):
        raise ValueError("plus-side sizes must be strictly increasing")
    if any(p >= q for p, q in pairs):
        raise ValueError("plus-side sizes must stay below minus-side sizes")
    N = _forward_normalized(L)
    g, _ = with_matching(N)
    sizes = []
    for p, q in pairs:
        sizes += [p, q]
    spec = BlowupSpec(g, tuple(sizes))
    k = pairs[0][0] * pairs[0][1] if pairs else 0
    cross = sum(
        pairs[i][0] * (pairs[j][0] + pairs[j][1])
        for i, j in itertools.combinations(range(L.n), 2)
    )
    assert spec.e <= L.n * k + cross
    return spec, N


def geometric_pairs(n: int, ratio: int) -> list[tuple[int, int]]:
    """p_i = ratio^i and q_i = ratio^(2n-1-i): increasing plus sides, all
    below sqrt of the common product ratio^(2n-1)."""
    return [(ratio**i, ratio ** (2 * n - 1 - i)) for i in range(n)]


def better_construction_host(
    g: Graph, m: Matching, depth: int, flips=(), ratio: int = 100
) -> BlowupSpec:
    """Reduction host over an iterated blowup of ldg(g, m).

    ``flips`` picks the sign representative that gets blown up: different
    representatives of the same local digraph give different blowups.
    """
    L = ldg(g, m)
    for v in flips:
        L = L.flip(v)
    B = iterated_blowup(L, depth)
    spec, _ = ldag_host_blowup(B, geometric_pairs(B.n, ratio))
    return spec


def ldag_host_graph(L: LocalDigraph, part_pairs) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Materialized reduction host and its blown-up matching edges (every
    plus-copy / minus-copy pair of the same vertex)."""
    spec, _ = ldag_host_blowup(L, part_pairs)
    host = spec.materialize()
    matched = []
    for i in range(L.n):
        for a in spec.part(2 * i):
            for b in spec.part(2 * i + 1):
                matched.append((a, b))
    return host, tuple(matched)


# --- the LDP3 constructions ---------------------------------------------------

def g_k(k: int) -> LocalDigraph:
    """LDAG on 4k vertices.

    v_1..v_{2k} are 0..2k-1; the k copies of u_1 are 2k..3k-1 and the k copies
    of u_2 are 3k..4k-1. v_i v_j is an edge when i - j is odd (+ at the
    smaller index); v_i meets the u-copies of the opposite parity (+ at v,
    - at u); every u_1 copy meets every u_2 copy with + at both ends.
    """
    if k < 1:
        raise ValueError("k must be positive")
    V = 2 * k
    u1 = range(2 * k, 3 * k)
    u2 = range(3 * k, 4 * k)
    edges = []
    for i in range(V):
        for j in range(i + 1, V):
            if (j - i) % 2:
                edges.append(LocalEdge(i, PLUS, j, MINUS))
    for i in range(V):
        # 1-based index i+1: odd v's pair with u_2 (index 2), even with u_1
        targets = u2 if (i + 1) % 2 else u1
        edges += [LocalEdge(i, PLUS, u, MINUS) for u in targets]
    edges += [LocalEdge(a, PLUS, b, PLUS) for a in u1 for b in u2]
    out = LocalDigraph(4 * k, tuple(edges))
    assert is_ldag(out)
    return out


def g_k_ldp3_formula(k: int) -> int:
    return sum((y // 2) * ((2 * k + 1 - y) // 2 + k) for y in range(1, 2 * k + 1)) + 2 * k**3


def h_4t(t: int) -> LocalDigraph:
    """H_1 = G_1; H_{4^t} is G_{4^t} with a copy of H_{4^(t-1)} placed on the
    u_1 copies and another on the u_2 copies."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t > H4T_MAX_DEPTH:
        raise ValueError(f"h_4t depth is capped at {H4T_MAX_DEPTH}")
    if t == 0:
        return g_k(1)
    k = 4**t
    inner = h_4t(t - 1)
    assert inner.n == k
    edges = list(g_k(k).edges)
    for base in (2 * k, 3 * k):
        edges += [LocalEdge(base + e.u, e.su, base + e.v, e.sv) for e in inner.edges]
    out = LocalDigraph(4 * k, tuple(edges))
    assert is_ldag(out)
    return out


def triple_fraction(count: int, n: int) -> float:
    return count / math.comb(n, 3)


# --- forward-edge DAGs --------------------------------------------------------

@dataclass(frozen=True)
class ForwardDAG:
    """DAG whose edges all point from lower to higher index; ``mask`` bit t
    covers the t-th pair (i, j), i < j, in lexicographic order."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask >> math.comb(self.n, 2):
            raise ValueError("mask has bits beyond C(n, 2)")

    def slot(self, i: int, j: int) -> int:
        # index of (i, j) in lexicographic pair order
        return i * (2 * self.n - i - 1) // 2 + (j - i - 1)

    def edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return bool(self.mask >> self.slot(i, j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in itertools.combinations(range(self.n), 2) if self.edge(i, j)]


def forward_dag(n: int, mask: int) -> ForwardDAG:
    return ForwardDAG(n, mask)


def forward_dag_from_edges(n: int, edges) -> ForwardDAG:
    d = ForwardDAG(n, 0)
    mask = 0
    for i, j in edges:
        if i >= j:
            raise ValueError("forward edges need i < j")
        mask |= 1 << d.slot(i, j)
    return ForwardDAG(n, mask)


def dp3_blowup(parts: tuple[int, int, int]) -> ForwardDAG:
    """Directed P3 with parts of the given sizes, in order."""
    a, b, c = parts
    A = range(a)
    B = range(a, a + b)
    C = range(a + b, a + b + c)
    edges = [(x, y) for x in A for y in B] + [(y, z) for y in B for z in C]
    return forward_dag_from_edges(a + b + c, edges)
