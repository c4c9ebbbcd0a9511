"""Hosts described as modules: classes that are independent sets or cliques,
with complete-or-empty adjacency between any two classes.

Every graph has such a description (its twin classes); blowups have one by
construction. Embedding counts only depend on this description, which lets
counting run on hosts far too large to materialize.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, _bits

INDEPENDENT, CLIQUE = "I", "K"


@dataclass(frozen=True)
class Quotient:
    sizes: tuple[int, ...]
    kinds: tuple[str, ...]
    adj: tuple[int, ...]  # bitset rows over classes, no self bits

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def e(self) -> int:
        total = 0
        for i in range(self.r):
            if self.kinds[i] == CLIQUE:
                total += self.sizes[i] * (self.sizes[i] - 1) // 2
            for j in _bits(self.adj[i] >> (i + 1)):
                total += self.sizes[i] * self.sizes[i + 1 + j]
        return total

    def closed_row(self, i: int) -> int:
        """Classes a vertex of class ``i`` can see, including its own class if
        that class is a clique."""
        return self.adj[i] | (1 << i if self.kinds[i] == CLIQUE else 0)

    def materialize(self) -> Graph:
        starts = []
        acc = 0
        for s in self.sizes:
            starts.append(acc)
            acc += s
        edges = []
        for i in range(self.r):
            block = range(starts[i], starts[i] + self.sizes[i])
            if self.kinds[i] == CLIQUE:
                edges.extend((a, b) for a in block for b in block if a < b)
            for j in _bits(self.adj[i] >> (i + 1)):
                j += i + 1
                other = range(starts[j], starts[j] + self.sizes[j])
                edges.extend((a, b) for a in block for b in other)
        return Graph.from_edges(acc, edges)


def twin_quotient(g: Graph) -> Quotient:
    """Group false twins (equal open neighbourhoods) and true twins (equal
    closed neighbourhoods)."""
    cls = [-1] * g.n
    groups: list[list[int]] = []
    by_open: dict[int, list[int]] = {}
    for v in range(g.n):
        by_open.setdefault(g.adj[v], []).append(v)
    singles = []
    for members in by_open.values():
        if len(members) > 1:
            for v in members:
                cls[v] = len(groups)
            groups.append(members)
        else:
            singles.append(members[0])
    kinds = [INDEPENDENT] * len(groups)
    by_closed: dict[int, list[int]] = {}
    for v in singles:
        by_closed.setdefault(g.adj[v] | (1 << v), []).append(v)
    for members in by_closed.values():
        for v in members:
            cls[v] = len(groups)
        groups.append(members)
        kinds.append(CLIQUE if len(members) > 1 else INDEPENDENT)
    rows = []
    for gi, members in enumerate(groups):
        row = 0
        for u in _bits(g.adj[members[0]]):
            if cls[u] != gi:
                row |= 1 << cls[u]
        rows.append(row)
    return Quotient(tuple(len(m) for m in groups), tuple(kinds), tuple(rows))


def as_quotient(host) -> Quotient:
    if isinstance(host, Quotient):
        return host
    if isinstance(host, Graph):
        return twin_quotient(host)
    to_q = getattr(host, "to_quotient", None)
    if to_q is not None:
        return to_q()
    raise TypeError(f"cannot count in a host of type {type(host).__name__}")
