"""Simple undirected graphs on dense vertex ids, with bitset adjacency rows."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .canon import canonical_labeling, refined_partition

CANON_LIMIT = 12
AUT_LIMIT = 10


class GraphFormatError(ValueError):
    pass


class MalformedHeader(GraphFormatError):
    pass


class MalformedLine(GraphFormatError):
    pass


class VertexOutOfRange(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class SizeLimitExceeded(ValueError):
    pass


class InvalidMatching(ValueError):
    pass


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if row >> self.n:
                raise ValueError(f"neighbour of {v} out of range")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def _trusted(cls, n: int, rows) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(rows))
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def e(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in _bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def isolated(self) -> list[int]:
        return [v for v, row in enumerate(self.adj) if not row]

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        rows = [0] * len(vs)
        for i, v in enumerate(vs):
            for u in _bits(self.adj[v]):
                j = pos.get(u)
                if j is not None:
                    rows[i] |= 1 << j
        return Graph._trusted(len(vs), rows)

    def relabel(self, perm: list[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def without_isolated(self) -> "Graph":
        return self.induced(v for v in range(self.n) if self.adj[v])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph.from_edges(
            self.n + other.n,
            self.edges() + [(u + shift, v + shift) for u, v in other.edges()],
        )

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def matrix(self) -> list[list[int]]:
        return [[row >> u & 1 for u in range(self.n)] for row in self.adj]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise MalformedHeader("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "graph" or not head[1].isdigit():
        raise MalformedHeader(f"bad header: {lines[0]!r}")
    n = int(head[1])
    seen = set()
    rows = [0] * n
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3 or parts[0] != "e":
            raise MalformedLine(f"line {lineno}: expected 'e <u> <v>', got {line!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer vertex id") from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, rows)


def serialize_graph(g: Graph) -> str:
    out = [f"graph {g.n}"]
    out.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        return cls(tuple(sorted((min(p), max(p)) for p in pairs)))

    @classmethod
    def parse(cls, text: str) -> "Matching":
        pairs = []
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            a, _, b = tok.partition("-")
            pairs.append((int(a), int(b)))
        return cls.of(pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def vertices(self) -> set[int]:
        return {v for p in self.pairs for v in p}

    def partner(self) -> dict[int, int]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def is_matching_of(self, g: Graph) -> bool:
        used = set()
        for u, v in self.pairs:
            if u in used or v in used or u == v:
                return False
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                return False
            used.update((u, v))
        return True

    def is_perfect(self, g: Graph) -> bool:
        return self.is_matching_of(g) and 2 * len(self.pairs) == g.n

    def check_perfect(self, g: Graph) -> None:
        if not self.is_perfect(g):
            raise InvalidMatching(f"{self.pairs} is not a perfect matching of {g}")

    def __str__(self) -> str:
        return ",".join(f"{u}-{v}" for u, v in self.pairs)


def canonical_form(g: Graph, limit: int = CANON_LIMIT) -> bytes:
    """Isomorphism-invariant byte string; equal iff the graphs are isomorphic."""
    if g.n > limit:
        raise SizeLimitExceeded(f"canonical_form supports at most {limit} vertices, got {g.n}")
    return _canonical_form(g)


def _canonical_form(g: Graph) -> bytes:
    parts = []
    for comp in g.components():
        sub = g.induced(comp)
        _, cert = canonical_labeling(sub.matrix())
        parts.append((sub.n, cert[1]))
    parts.sort()
    return repr((g.n, parts)).encode()


def canonical_relabel(g: Graph) -> Graph:
    """A fixed representative of the isomorphism class of ``g``."""
    order, _ = canonical_labeling(g.matrix())
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.e != h.e or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return _canonical_form(g) == _canonical_form(h)


def _extends_to_automorphism(g: Graph, pairs: list[tuple[int, int]]) -> bool:
    """Is there an automorphism mapping ``a -> b`` for every ``(a, b)`` in pairs?"""
    w = g.matrix()
    src = refined_partition(w, [a for a, _ in pairs])
    dst = refined_partition(w, [b for _, b in pairs])
    if [len(c) for c in src] != [len(c) for c in dst]:
        return False
    allowed = {}
    for cs, cd in zip(src, dst):
        for v in cs:
            allowed[v] = cd
    order = [v for cell in src for v in cell]
    image: dict[int, int] = {}
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        for t in allowed[v]:
            if used >> t & 1:
                continue
            ok = True
            for u, tu in image.items():
                if g.has_edge(u, v) != g.has_edge(tu, t):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = t
            used |= 1 << t
            if extend(i + 1):
                return True
            del image[v]
            used &= ~(1 << t)
        return False

    return extend(0)


def aut_order(g: Graph, limit: int = AUT_LIMIT) -> int:
    """Order of the automorphism group, via orbit-stabilizer over a base."""
    if g.n > limit:
        raise SizeLimitExceeded(f"aut_order supports at most {limit} vertices, got {g.n}")
    w = g.matrix()
    fixed: list[int] = []
    order = 1
    while True:
        cells = refined_partition(w, fixed)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            return order
        v = target[0]
        orbit = 1
        for t in target[1:]:
            if _extends_to_automorphism(g, [(f, f) for f in fixed] + [(v, t)]):
                orbit += 1
        order *= orbit
        fixed.append(v)


def automorphism_count_bruteforce(g: Graph) -> int:
    edges = set(g.edges())
    count = 0
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges for u, v in edges):
            count += 1
    return count


# Named small graphs used as patterns throughout.

def path(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def triangle_plus() -> Graph:
    """K3 with a pendant edge: triangle 0-1-2, pendant 0-3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def k4_minus() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
