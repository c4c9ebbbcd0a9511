"""Locally directed graphs.

A local digraph is a loopless multigraph where every (vertex, incident edge)
pair carries a sign. Signs are stored as +1 / -1. Two local digraphs are
isomorphic when a multigraph isomorphism preserves, at each vertex, which
incident edges share a sign; equivalently, up to flipping every sign at a
vertex at once.

Signed copies of vertex ``i`` live at ``2*i`` (plus) and ``2*i + 1`` (minus)
in graphifications and double covers.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .canon import canonical_labeling
from .graphs import (
    Graph,
    GraphFormatError,
    MalformedHeader,
    MalformedLine,
    Matching,
    SelfLoop,
    SizeLimitExceeded,
    VertexOutOfRange,
)

LOCAL_CANON_LIMIT = 8
PLUS, MINUS = 1, -1


def sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


def signed(v: int, s: int) -> int:
    return 2 * v if s > 0 else 2 * v + 1


class LocalEdge(NamedTuple):
    u: int
    su: int
    v: int
    sv: int

    def sign_at(self, x: int) -> int:
        if x == self.u:
            return self.su
        if x == self.v:
            return self.sv
        raise ValueError(f"vertex {x} is not an endpoint of {self}")

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def normalized(self) -> "LocalEdge":
        if self.u <= self.v:
            return self
        return LocalEdge(self.v, self.sv, self.u, self.su)


@dataclass(frozen=True)
class LocalDigraph:
    n: int
    edges: tuple[LocalEdge, ...] = ()

    def __post_init__(self):
        fixed = []
        for e in self.edges:
            e = LocalEdge(*e)
            if e.u == e.v:
                raise ValueError(f"self-loop at {e.u}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {e} out of range")
            if e.su not in (1, -1) or e.sv not in (1, -1):
                raise ValueError(f"bad sign in {e}")
            fixed.append(e)
        object.__setattr__(self, "edges", tuple(fixed))

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int, int, int]]) -> "LocalDigraph":
        return cls(n, tuple(LocalEdge(*e) for e in edges))

    @property
    def e(self) -> int:
        return len(self.edges)

    def incident(self, x: int) -> list[tuple[int, LocalEdge]]:
        return [(i, e) for i, e in enumerate(self.edges) if x in (e.u, e.v)]

    def degree(self, x: int) -> int:
        return sum(1 for e in self.edges if x in (e.u, e.v))

    def multiplicities(self) -> Counter:
        return Counter((min(e.u, e.v), max(e.u, e.v)) for e in self.edges)

    def is_simple(self) -> bool:
        return all(c == 1 for c in self.multiplicities().values())

    def simple(self) -> "LocalDigraph":
        """Keep the first edge of every parallel class."""
        seen = set()
        keep = []
        for e in self.edges:
            key = (min(e.u, e.v), max(e.u, e.v))
            if key not in seen:
                seen.add(key)
                keep.append(e)
        return LocalDigraph(self.n, tuple(keep))

    def flip(self, x: int) -> "LocalDigraph":
        out = []
        for e in self.edges:
            su = -e.su if e.u == x else e.su
            sv = -e.sv if e.v == x else e.sv
            out.append(LocalEdge(e.u, su, e.v, sv))
        return LocalDigraph(self.n, tuple(out))

    def relabel(self, perm: list[int]) -> "LocalDigraph":
        """Vertex ``x`` becomes ``perm[x]``."""
        return LocalDigraph(
            self.n, tuple(LocalEdge(perm[e.u], e.su, perm[e.v], e.sv) for e in self.edges)
        )

    def induced(self, vertices: Iterable[int]) -> "LocalDigraph":
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        out = []
        for e in self.edges:
            if e.u in pos and e.v in pos:
                out.append(LocalEdge(pos[e.u], e.su, pos[e.v], e.sv))
        return LocalDigraph(len(vs), tuple(out))

    def underlying(self) -> Graph:
        return Graph.from_edges(self.n, set(self.multiplicities()))

    def sorted_edges(self) -> list[LocalEdge]:
        return sorted(
            (e.normalized() for e in self.edges),
            key=lambda e: (e.u, e.v, sign_char(e.su), sign_char(e.sv)),
        )

    def __eq__(self, other):
        if not isinstance(other, LocalDigraph):
            return NotImplemented
        return self.n == other.n and self.sorted_edges() == other.sorted_edges()

    def __hash__(self):
        return hash((self.n, tuple(self.sorted_edges())))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{e.u}{sign_char(e.su)}{e.v}{sign_char(e.sv)}" for e in self.sorted_edges()
        )
        return f"LocalDigraph(n={self.n}, [{body}])"


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def multiplicities(self) -> Counter:
        return Counter((min(a, b), max(a, b)) for a, b in self.edges)

    def simple(self) -> Graph:
        return Graph.from_edges(self.n, set(self.multiplicities()))


@dataclass(frozen=True)
class MultiDigraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def topological_order(self) -> list[int] | None:
        indeg = [0] * self.n
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.arcs:
            out[a].append(b)
            indeg[b] += 1
        heap = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            a = heapq.heappop(heap)
            order.append(a)
            for b in out[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, b)
        return order if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None


@dataclass(frozen=True)
class TopologicalSort:
    order: tuple[int, ...]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class LocallyDirectedWalk:
    """Closed walk ``v[0] -e[0]-> v[1] ... v[t-1] -e[t-1]-> v[0]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def sequence(self) -> list[int]:
        return list(self.vertices) + [self.vertices[0]]


def graphify(L: LocalDigraph) -> MultiGraph:
    edges = tuple(
        tuple(sorted((signed(e.u, e.su), signed(e.v, e.sv)))) for e in L.edges
    )
    return MultiGraph(2 * L.n, tuple(sorted(edges)))


def ldg(g: Graph, m: Matching) -> LocalDigraph:
    """Local digraph on the matching edges whose graphification is ``g - m``.

    Matching edges are numbered in sorted order; within each, the smaller
    vertex id takes the plus sign.
    """
    m.check_perfect(g)
    where = {}
    for i, (a, b) in enumerate(m.pairs):
        where[a] = (i, PLUS)
        where[b] = (i, MINUS)
    in_m = set(m.pairs)
    out = []
    for x, y in g.edges():
        if (x, y) in in_m:
            continue
        (i, si), (j, sj) = where[x], where[y]
        out.append(LocalEdge(i, si, j, sj))
    return LocalDigraph(len(m), tuple(out))


def with_matching(L: LocalDigraph) -> tuple[Graph, Matching]:
    """Simple graph ``gr(L)`` plus the signed-copy matching."""
    pairs = [(2 * i, 2 * i + 1) for i in range(L.n)]
    g = Graph.from_edges(2 * L.n, set(graphify(L).multiplicities()) | set(pairs))
    return g, Matching.of(pairs)


def double_cover(L: LocalDigraph) -> MultiDigraph:
    arcs = []
    for e in L.edges:
        arcs.append((signed(e.u, e.su), signed(e.v, -e.sv)))
        arcs.append((signed(e.v, e.sv), signed(e.u, -e.su)))
    return MultiDigraph(2 * L.n, tuple(arcs))


def is_ldag(L: LocalDigraph) -> bool:
    return double_cover(L).is_acyclic()


def is_locally_directed_closed_walk(L: LocalDigraph, walk: LocallyDirectedWalk) -> bool:
    vs, es = walk.vertices, walk.edges
    t = len(vs)
    if t == 0 or len(es) != t:
        return False
    for i in range(t):
        e = L.edges[es[i]]
        a, b = vs[i], vs[(i + 1) % t]
        if {e.u, e.v} != {a, b}:
            return False
        if e.sign_at(a) == L.edges[es[i - 1]].sign_at(a):
            return False
    return True


def find_locally_directed_closed_walk(L: LocalDigraph) -> LocallyDirectedWalk | None:
    """Breadth-first search over (vertex, arrival sign) states.

    Works straight from the definition and never builds the double cover.
    Returned walks have length at most ``2n``.
    """
    incident: list[list[tuple[int, LocalEdge]]] = [[] for _ in range(L.n)]
    for i, e in enumerate(L.edges):
        incident[e.u].append((i, e))
        incident[e.v].append((i, e))
    for start in range(L.n):
        for e0, edge in incident[start]:
            s0 = edge.sign_at(start)
            w = edge.other(start)
            first = (w, edge.sign_at(w))
            parent = {first: None}
            via = {first: e0}
            queue = deque([(first, 1)])
            found = None
            while queue and found is None:
                (x, a), depth = queue.popleft()
                if x == start and a != s0:
                    found = (x, a)
                    break
                if depth >= 2 * L.n:
                    continue
                for ei, f in incident[x]:
                    if f.sign_at(x) == a:
                        continue
                    y = f.other(x)
                    nxt = (y, f.sign_at(y))
                    if nxt not in parent:
                        parent[nxt] = (x, a)
                        via[nxt] = ei
                        queue.append((nxt, depth + 1))
            if found is None:
                continue
            states = []
            cur = found
            while cur is not None:
                states.append(cur)
                cur = parent[cur]
            states.reverse()
            vertices = [start] + [x for x, _ in states[:-1]]
            edges = [via[s] for s in states]
            return LocallyDirectedWalk(tuple(vertices), tuple(edges))
    return None


def topological_sort(L: LocalDigraph) -> TopologicalSort | None:
    """Sort the double cover, then keep the earlier of each vertex's two copies."""
    order = double_cover(L).topological_order()
    if order is None:
        return None
    seen = set()
    verts, signs = [], []
    for c in order:
        v, s = c // 2, (PLUS if c % 2 == 0 else MINUS)
        if v in seen:
            continue
        seen.add(v)
        verts.append(v)
        signs.append(s)
    return TopologicalSort(tuple(verts), tuple(signs))


def is_topological_sort(L: LocalDigraph, ts: TopologicalSort) -> bool:
    if sorted(ts.order) != list(range(L.n)) or len(ts.signs) != L.n:
        return False
    pos = {v: i for i, v in enumerate(ts.order)}
    for e in L.edges:
        first = e.u if pos[e.u] < pos[e.v] else e.v
        if e.sign_at(first) != ts.signs[pos[first]]:
            return False
    return True


def align_for_blowup(L1: LocalDigraph, v: int, L2: LocalDigraph) -> LocalDigraph:
    """The sign representative of ``L2`` whose topological sort uses, at every
    vertex, the sign ``v`` carries toward later vertices in a sort of ``L1``.

    Placing this representative at ``v`` keeps the result acyclic: the two
    sorts splice together. A fixed representative placed as-is need not.
    """
    ts1, ts2 = topological_sort(L1), topological_sort(L2)
    if ts1 is None or ts2 is None:
        raise ValueError("both local digraphs must be acyclic")
    want = ts1.signs[ts1.order.index(v)]
    out = L2
    for u, s in zip(ts2.order, ts2.signs):
        if s != want:
            out = out.flip(u)
    return out


def blowup_local(
    L1: LocalDigraph, v: int, L2: LocalDigraph, align: bool = False
) -> LocalDigraph:
    """Replace vertex ``v`` of ``L1`` by a copy of ``L2``.

    Copies occupy ids ``v .. v + n2 - 1``; later vertices of ``L1`` shift up.
    Every edge at ``v`` is repeated at each copy with ``v``'s sign. With
    ``align`` the copy is first re-signed by ``align_for_blowup``.
    """
    if not 0 <= v < L1.n:
        raise ValueError(f"vertex {v} out of range")
    if align:
        L2 = align_for_blowup(L1, v, L2)
    n2 = L2.n

    def move(x: int) -> int:
        return x if x < v else x + n2 - 1

    out = []
    for e in L1.edges:
        if e.u == v or e.v == v:
            sv = e.sign_at(v)
            w = e.other(v)
            sw = e.sign_at(w)
            for c in range(n2):
                out.append(LocalEdge(v + c, sv, move(w), sw))
        else:
            out.append(LocalEdge(move(e.u), e.su, move(e.v), e.sv))
    for e in L2.edges:
        out.append(LocalEdge(v + e.u, e.su, v + e.v, e.sv))
    return LocalDigraph(L1.n - 1 + n2, tuple(out))


def _local_matrix(L: LocalDigraph) -> list[list[int]]:
    size = 2 * L.n
    w = [[0] * size for _ in range(size)]
    for i in range(L.n):
        w[2 * i][2 * i + 1] = w[2 * i + 1][2 * i] = 1
    for e in L.edges:
        a, b = signed(e.u, e.su), signed(e.v, e.sv)
        w[a][b] = w[b][a] = (w[a][b] or 1) + 1
    return w


def canonical_local_form(L: LocalDigraph, limit: int = LOCAL_CANON_LIMIT) -> bytes:
    """Invariant under relabeling and per-vertex sign flips.

    Canonizes ``gr(L)`` together with the pairing of signed copies; an
    isomorphism of that two-coloured multigraph is exactly a local
    isomorphism.
    """
    if L.n > limit:
        raise SizeLimitExceeded(f"canonical_local_form supports at most {limit} vertices")
    return _canonical_local_form(L)


def _canonical_local_form(L: LocalDigraph) -> bytes:
    _, cert = canonical_labeling(_local_matrix(L))
    return repr((L.n, cert[1])).encode()


def local_iso(L1: LocalDigraph, L2: LocalDigraph, limit: int = LOCAL_CANON_LIMIT) -> bool:
    if L1.n != L2.n or L1.e != L2.e:
        return False
    return canonical_local_form(L1, limit) == canonical_local_form(L2, limit)


def count_induced_local(P: LocalDigraph, H: LocalDigraph) -> int:
    """Vertex subsets of ``H`` whose induced local digraph is isomorphic to ``P``."""
    k = P.n
    if k > LOCAL_CANON_LIMIT:
        raise SizeLimitExceeded("pattern too large")
    if k > H.n:
        return 0
    target = _canonical_local_form(P)
    target_e = P.e
    pair_signs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in H.edges:
        a, b = (e.u, e.v) if e.u < e.v else (e.v, e.u)
        pair_signs.setdefault((a, b), []).append(
            (e.su, e.sv) if e.u < e.v else (e.sv, e.su)
        )
    mult = {p: len(s) for p, s in pair_signs.items()}
    memo: dict[tuple, bool] = {}
    count = 0
    chosen: list[int] = []

    def leaf() -> bool:
        key = []
        edges = []
        for i, j in itertools.combinations(range(k), 2):
            signs = pair_signs.get((chosen[i], chosen[j]))
            if signs:
                ss = tuple(sorted(signs))
                key.append((i, j, ss))
                edges.extend(LocalEdge(i, a, j, b) for a, b in ss)
        key = tuple(key)
        hit = memo.get(key)
        if hit is None:
            hit = _canonical_local_form(LocalDigraph(k, tuple(edges))) == target
            memo[key] = hit
        return hit

    def rec(start: int, edges_so_far: int) -> None:
        nonlocal count
        if len(chosen) == k:
            if edges_so_far == target_e and leaf():
                count += 1
            return
        for x in range(start, H.n - (k - len(chosen)) + 1):
            add = sum(mult.get((y, x), 0) for y in chosen)
            if edges_so_far + add > target_e:
                continue
            chosen.append(x)
            rec(x + 1, edges_so_far + add)
            chosen.pop()

    rec(0, 0)
    return count


def edge_localdigraph(h: Graph) -> LocalDigraph:
    """One vertex per edge of ``h``; a signed edge for every host edge crossing
    between two disjoint host edges. Within each host edge the smaller id is +."""
    es = h.edges()
    out = []
    for i, j in itertools.combinations(range(len(es)), 2):
        e1, e2 = es[i], es[j]
        if set(e1) & set(e2):
            continue
        for x in e1:
            for y in e2:
                if h.has_edge(x, y):
                    sx = PLUS if x == e1[0] else MINUS
                    sy = PLUS if y == e2[0] else MINUS
                    out.append(LocalEdge(i, sx, j, sy))
    return LocalDigraph(len(es), tuple(out))


def uniform_signs(g: Graph, sign: int = PLUS) -> LocalDigraph:
    return LocalDigraph(g.n, tuple(LocalEdge(u, sign, v, sign) for u, v in g.edges()))


def ldp(k: int) -> LocalDigraph:
    """Locally directed path on ``k`` vertices: each edge is - at its lower end
    and + at its upper end, so consecutive edges disagree at inner vertices."""
    return LocalDigraph(k, tuple(LocalEdge(i, MINUS, i + 1, PLUS) for i in range(k - 1)))


def parse_ldg(text: str) -> LocalDigraph:
    lines = [ln.strip() for ln in text.split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise MalformedHeader("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "ldg" or not head[1].isdigit():
        raise MalformedHeader(f"bad header: {lines[0]!r}")
    n = int(head[1])
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 5 or parts[0] != "e" or parts[2] not in "+-" or parts[4] not in "+-":
            raise MalformedLine(f"line {lineno}: expected 'e <u> <+|-> <v> <+|->', got {line!r}")
        try:
            u, v = int(parts[1]), int(parts[3])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer vertex id") from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at {u}")
        su = PLUS if parts[2] == "+" else MINUS
        sv = PLUS if parts[4] == "+" else MINUS
        edges.append(LocalEdge(u, su, v, sv))
    return LocalDigraph(n, tuple(edges))


def serialize_ldg(L: LocalDigraph) -> str:
    out = [f"ldg {L.n}"]
    out.extend(
        f"e {e.u} {sign_char(e.su)} {e.v} {sign_char(e.sv)}" for e in L.sorted_edges()
    )
    return "\n".join(out) + "\n"


__all__ = [
    "GraphFormatError",
    "LocalDigraph",
    "LocalEdge",
    "LocallyDirectedWalk",
    "MultiDigraph",
    "MultiGraph",
    "TopologicalSort",
    "align_for_blowup",
    "blowup_local",
    "canonical_local_form",
    "count_induced_local",
    "double_cover",
    "edge_localdigraph",
    "find_locally_directed_closed_walk",
    "graphify",
    "is_ldag",
    "is_locally_directed_closed_walk",
    "is_topological_sort",
    "ldg",
    "ldp",
    "local_iso",
    "parse_ldg",
    "serialize_ldg",
    "topological_sort",
    "uniform_signs",
    "with_matching",
]
