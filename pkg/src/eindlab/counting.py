"""Exact embedding counts, ratio statistics and closed-form bound evaluators.

All counting goes through a module quotient of the host (see ``quotient``):
a class assignment of pattern vertices decides every adjacency, and the
number of injective maps realizing an assignment is a product of falling
factorials of class sizes. This keeps counts exact on hosts with hundreds of
thousands of vertices, as long as they are built from few twin classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fractional import alpha_star
from .graphs import Graph, aut_order
from .local import PLUS, LocalDigraph
from .quotient import as_quotient

PATTERN_LIMIT = 8
PM_LIMIT = 10


def _search_order(g: Graph) -> list[int]:
    """Greedy order: each next vertex has the most already-placed neighbours."""
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = max(
            remaining,
            key=lambda x: ((g.adj[x] & placed).bit_count(), g.degree(x), -x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def _count(g: Graph, host, induced: bool) -> int:
    if g.n > PATTERN_LIMIT:
        raise ValueError(f"pattern has {g.n} vertices; counting supports at most {PATTERN_LIMIT}")
    q = as_quotient(host)
    if g.n == 0:
        return 1
    order = _search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    # for each position: earlier positions split by adjacency in the pattern
    before_adj = []
    before_non = []
    for i, v in enumerate(order):
        before_adj.append([pos[u] for u in g.neighbors(v) if pos[u] < i])
        before_non.append(
            [j for j in range(i) if not g.has_edge(v, order[j])] if induced else []
        )
    full = (1 << q.r) - 1
    closed = [q.closed_row(c) for c in range(q.r)]
    sizes = q.sizes
    used = [0] * q.r
    assigned = [0] * g.n
    k = g.n

    def rec(i: int) -> int:
        cand = full
        for j in before_adj[i]:
            cand &= closed[assigned[j]]
        for j in before_non[i]:
            cand &= ~closed[assigned[j]]
        total = 0
        while cand:
            low = cand & -cand
            c = low.bit_length() - 1
            cand ^= low
            room = sizes[c] - used[c]
            if room <= 0:
                continue
            if i + 1 == k:
                total += room
                continue
            used[c] += 1
            assigned[i] = c
            total += room * rec(i + 1)
            used[c] -= 1
        return total

    return rec(0)


def iter_induced_embeddings(g: Graph, h: Graph):
    """Yield every induced embedding of ``g`` in a materialized host as a
    tuple ``(image of 0, image of 1, ...)``."""
    if g.n == 0:
        yield ()
        return
    order = _search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    adj_before = [[pos[u] for u in g.neighbors(v) if pos[u] < i] for i, v in enumerate(order)]
    non_before = [
        [j for j in range(i) if not g.has_edge(v, order[j])] for i, v in enumerate(order)
    ]
    full = (1 << h.n) - 1
    image = [0] * g.n
    used = 0

    def rec(i: int):
        nonlocal used
        if i == g.n:
            out = [0] * g.n
            for j, v in enumerate(order):
                out[v] = image[j]
            yield tuple(out)
            return
        cand = full & ~used
        for j in adj_before[i]:
            cand &= h.adj[image[j]]
        for j in non_before[i]:
            cand &= ~h.adj[image[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            image[i] = low.bit_length() - 1
            used |= low
            yield from rec(i + 1)
            used ^= low

    yield from rec(0)


def count_embeddings(g: Graph, host) -> int:
    """Injective edge-preserving maps V(g) -> V(host)."""
    return _count(g, host, induced=False)


def count_induced_embeddings(g: Graph, host) -> int:
    """Injective maps preserving edges and non-edges (E_ind)."""
    return _count(g, host, induced=True)


def count_copies(g: Graph, host) -> int:
    return count_embeddings(g, host) // aut_order(g)


def count_induced(g: Graph, host) -> int:
    """Number of induced copies (N_ind)."""
    return count_induced_embeddings(g, host) // aut_order(g)


def host_edges(host) -> int:
    return host.e if isinstance(host, Graph) else as_quotient(host).e


def _check_pattern(g: Graph) -> None:
    if g.isolated():
        raise ValueError("edge inducibility is undefined for patterns with isolated vertices")


def eind_ratio_squared(g: Graph, host) -> Fraction:
    """Exact square of ``E_ind / (2m)^alpha*``; alpha* may be half-integral."""
    _check_pattern(g)
    m = host_edges(host)
    if m < 1:
        raise ValueError("host has no edges")
    a2 = int(2 * alpha_star(g))
    e = count_induced_embeddings(g, host)
    return Fraction(e * e, (2 * m) ** a2)


def sqrt_fraction(x: Fraction) -> float:
    """Correctly scaled float square root of a possibly huge rational."""
    num, den = x.numerator, x.denominator
    p = max(0, 64 - (num.bit_length() - den.bit_length()) // 2)
    root = math.isqrt((num << (2 * p)) // den)
    return math.ldexp(float(root), -p)


def eind_ratio(g: Graph, host) -> float:
    return sqrt_fraction(eind_ratio_squared(g, host))


def trivial_embedding_bound(g: Graph, m: int) -> float:
    """(2m)^alpha*, an upper bound on E_ind over m-edge hosts."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return float(2 * m) ** float(alpha_star(g))


def trivial_upper_bound(g: Graph, m: int) -> float:
    """(2m)^alpha* / |Aut(g)|, an upper bound on N_ind over m-edge hosts."""
    return trivial_embedding_bound(g, m) / aut_order(g)


def within_trivial_bound(g: Graph, m: int, n_ind: int) -> bool:
    """Exact check of ``n_ind * |Aut| <= (2m)^alpha*`` in squared integers."""
    e = n_ind * aut_order(g)
    return e * e <= (2 * m) ** int(2 * alpha_star(g))


def count_perfect_matchings(g: Graph) -> int:
    if g.n > PM_LIMIT:
        raise ValueError(f"perfect-matching count supports at most {PM_LIMIT} vertices")
    if g.n % 2:
        return 0

    @lru_cache(maxsize=None)
    def rec(free: int) -> int:
        if not free:
            return 1
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        total = 0
        cand = g.adj[v] & rest
        while cand:
            low = cand & -cand
            total += rec(rest & ~low)
            cand ^= low
        return total

    return rec((1 << g.n) - 1)


def pm_count_bound(g: Graph, m: int) -> Fraction:
    """C(m, n/2) / #perfect matchings of g: every induced copy picks a distinct
    set of n/2 host edges at least #pm times over."""
    if g.n % 2:
        raise ValueError("pattern has an odd number of vertices")
    k = count_perfect_matchings(g)
    if k == 0:
        raise ValueError("pattern has no perfect matching; the bound is vacuous")
    return Fraction(math.comb(m, g.n // 2), k)


# --- locally directed paths on three vertices -------------------------------

def count_ldp3(H: LocalDigraph) -> int:
    """Induced LDP3 copies, counted at their middle vertex.

    A triple induces LDP3 iff it carries exactly two edges, both single,
    meeting at a vertex where their signs differ.
    """
    mult = H.multiplicities()
    adj = [0] * H.n
    for (a, b) in mult:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    plus = [0] * H.n
    minus = [0] * H.n
    for e in H.edges:
        if mult[(min(e.u, e.v), max(e.u, e.v))] != 1:
            continue
        for x, s, y in ((e.u, e.su, e.v), (e.v, e.sv, e.u)):
            if s == PLUS:
                plus[x] |= 1 << y
            else:
                minus[x] |= 1 << y
    total = 0
    for u in range(H.n):
        p, q = plus[u], minus[u]
        total += p.bit_count() * q.bit_count()
        x = p
        while x:
            low = x & -x
            total -= (adj[low.bit_length() - 1] & q).bit_count()
            x ^= low
    return total


@dataclass(frozen=True)
class LDP3Bound:
    count: int
    a: int
    b: int
    bound: Fraction  # min(A, B/2)
    cube: Fraction  # n^3 / 9

    @property
    def holds(self) -> bool:
        return self.count <= self.bound <= self.cube


def ldp3_ab_bound(H: LocalDigraph) -> LDP3Bound:
    """Double-counting bound on induced LDP3 copies.

    A counts (centre, plus-neighbour, minus-neighbour); B counts (centre,
    neighbour, non-neighbour), in which every induced copy appears twice.
    Parallel edges are dropped first (first edge kept), which can only
    create copies.
    """
    count = count_ldp3(H)
    S = H.simple()
    n = S.n
    dplus = [0] * n
    dminus = [0] * n
    for e in S.edges:
        for x, s in ((e.u, e.su), (e.v, e.sv)):
            if s == PLUS:
                dplus[x] += 1
            else:
                dminus[x] += 1
    a = sum(p * q for p, q in zip(dplus, dminus))
    b = sum((p + q) * (n - 1 - p - q) for p, q in zip(dplus, dminus))
    result = LDP3Bound(count, a, b, min(Fraction(a), Fraction(b, 2)), Fraction(n**3, 9))
    assert result.holds, result
    return result


# --- directed P3 in forward-edge DAGs ----------------------------------------

@dataclass(frozen=True)
class DP3Stats:
    count: int
    forward: tuple[int, ...]  # f_s: earlier neighbours of vertex s
    backward: tuple[int, ...]  # b_s: later neighbours of vertex s
    triple_sum: int  # sum over triples of I + J + K
    aggregate: int  # sum_s (b_s - f_s)(n + 1 - 2s - (b_s - f_s))
    triples_ok: bool
    bound: Fraction  # (1/8) sum_s (n + 1 - 2s)^2

    @property
    def identity_ok(self) -> bool:
        return self.triple_sum == self.aggregate


def triple_indicators(dag, i: int, j: int, k: int) -> tuple[int, int, int]:
    """(I, J, K) for positions i < j < k: I and K flag the outer vertices that
    see exactly one of the other two, J is minus the same flag for the middle."""
    ij, jk, ik = dag.edge(i, j), dag.edge(j, k), dag.edge(i, k)
    return int(ij != ik), -int(ij != jk), int(ik != jk)


def dp3_bound(n: int) -> Fraction:
    return Fraction(sum((n + 1 - 2 * s) ** 2 for s in range(1, n + 1)), 8)


def dp3_stats(dag) -> DP3Stats:
    """Exact induced directed-P3 count in a DAG given by its forward edges.

    ``dag`` needs ``n`` and ``edge(i, j)`` for 0-based positions ``i < j``.
    """
    n = dag.n
    f = [sum(dag.edge(i, s) for i in range(s)) for s in range(n)]
    b = [sum(dag.edge(s, j) for j in range(s + 1, n)) for s in range(n)]
    count = 0
    total = 0
    ok = True
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                I, J, K = triple_indicators(dag, i, j, k)
                val = I + J + K
                total += val
                is_dp3 = dag.edge(i, j) and dag.edge(j, k) and not dag.edge(i, k)
                count += is_dp3
                if val < 0 or (is_dp3 and val != 2):
                    ok = False
    aggregate = 0
    for s in range(1, n + 1):
        d = b[s - 1] - f[s - 1]
        aggregate += d * (n + 1 - 2 * s - d)
    return DP3Stats(count, tuple(f), tuple(b), total, aggregate, ok, dp3_bound(n))
