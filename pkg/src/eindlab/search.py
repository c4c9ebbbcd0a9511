"""Exhaustive small-scale oracles and random instance generators."""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .constructions import forward_dag
from .counting import count_induced, dp3_bound
from .graphs import Graph, Matching, _canonical_form
from .local import LocalDigraph, LocalEdge, _canonical_local_form

HOST_EDGE_LIMIT = 7
PATTERN_VERTEX_LIMIT = 6
DP3_LIMIT = 7
LOCAL_N_LIMIT = 4
LOCAL_PARALLEL_LIMIT = 2


class SearchLimitExceeded(ValueError):
    pass


def default_threads() -> int:
    raw = os.environ.get("EINDLAB_THREADS", "")
    return int(raw) if raw.isdigit() and int(raw) > 0 else 1


# --- m-edge hosts -------------------------------------------------------------

def _connected_by_edges(m: int) -> list[list[Graph]]:
    """levels[j] = connected graphs with j edges, one per isomorphism class."""
    levels: list[list[Graph]] = [[], [Graph.from_edges(2, [(0, 1)])]]
    for j in range(2, m + 1):
        seen = {}
        for g in levels[j - 1]:
            kids = []
            for u, v in itertools.combinations(range(g.n), 2):
                if not g.has_edge(u, v):
                    kids.append(Graph.from_edges(g.n, g.edges() + [(u, v)]))
            for u in range(g.n):
                kids.append(Graph.from_edges(g.n + 1, g.edges() + [(u, g.n)]))
            for h in kids:
                seen.setdefault(_canonical_form(h), h)
        levels.append(list(seen.values()))
    return levels


def _partitions(m: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = m if largest is None else largest
    if m == 0:
        yield []
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield [first] + rest


def _union(parts: list[Graph]) -> Graph:
    out = Graph.empty(0)
    for g in parts:
        out = out.disjoint_union(g)
    return out


def enumerate_hosts(m: int, max_n: int | None = None, force: bool = False) -> Iterator[Graph]:
    """Every graph with exactly ``m`` edges and no isolated vertices, once
    per isomorphism class.

    Hosts are disjoint unions of connected graphs, so classes correspond to
    multisets of connected classes whose edge counts sum to ``m``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > HOST_EDGE_LIMIT and not force:
        raise SearchLimitExceeded(
            f"m = {m} exceeds the default limit {HOST_EDGE_LIMIT}; pass force=True"
        )
    max_n = 2 * m if max_n is None else max_n
    levels = _connected_by_edges(m)
    for parts in _partitions(m):
        sizes = sorted(set(parts), reverse=True)
        pools = [
            itertools.combinations_with_replacement(levels[s], parts.count(s)) for s in sizes
        ]
        for combo in itertools.product(*[list(p) for p in pools]):
            comps = [g for group in combo for g in group]
            if sum(g.n for g in comps) <= max_n:
                yield _union(comps)


@dataclass(frozen=True)
class OracleResult:
    pattern: Graph
    m: int
    max_nind: int
    witness: Graph

    def as_json(self) -> dict:
        return {
            "pattern": self.pattern.edges(),
            "m": self.m,
            "max_nind": self.max_nind,
            "witness": {"n": self.witness.n, "edges": self.witness.edges()},
        }


def _count_chunk(args) -> list[int]:
    g, hosts = args
    return [count_induced(g, h) for h in hosts]


def eind_oracle(
    g: Graph,
    m: int,
    max_n: int | None = None,
    force: bool = False,
    threads: int | None = None,
) -> OracleResult:
    """Maximum N_ind(g, H) over m-edge hosts H without isolated vertices.
    Ties go to the host enumerated first."""
    if g.n > PATTERN_VERTEX_LIMIT:
        raise SearchLimitExceeded(f"pattern has more than {PATTERN_VERTEX_LIMIT} vertices")
    hosts = list(enumerate_hosts(m, max_n, force))
    threads = default_threads() if threads is None else threads
    if threads > 1 and len(hosts) > 64:
        size = math.ceil(len(hosts) / threads)
        shards = [hosts[i : i + size] for i in range(0, len(hosts), size)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            counts = [c for part in ex.map(_count_chunk, [(g, s) for s in shards]) for c in part]
    else:
        counts = _count_chunk((g, hosts))
    best = max(range(len(hosts)), key=lambda i: (counts[i], -i))
    return OracleResult(g, m, counts[best], hosts[best])


# --- directed P3 over forward-edge DAGs --------------------------------------

def dp3_dag_max(n: int, force: bool = False, chunk: int = 1 << 22) -> tuple[int, int]:
    """Exact maximum induced directed-P3 count over all forward-edge DAGs on n
    vertices; returns (max, smallest mask achieving it)."""
    if n > DP3_LIMIT and not force:
        raise SearchLimitExceeded(
            f"n = {n} means 2^{math.comb(n, 2)} masks; pass force=True"
        )
    slots = math.comb(n, 2)
    d = forward_dag(n, 0)
    triples = [
        (d.slot(i, j), d.slot(j, k), d.slot(i, k))
        for i, j, k in itertools.combinations(range(n), 3)
    ]
    best, arg = -1, 0
    total = 1 << slots
    for lo in range(0, total, chunk):
        masks = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        counts = np.zeros(masks.shape, dtype=np.int16)
        for a, b, c in triples:
            counts += ((masks >> a) & (masks >> b) & ~(masks >> c) & 1).astype(np.int16)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best, arg = int(counts[i]), lo + i
    assert best <= math.floor(dp3_bound(n)), (n, best)
    return best, arg


# --- local digraph catalog ----------------------------------------------------

SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def enumerate_local_digraphs(n: int, max_parallel: int = 1) -> Iterator[LocalDigraph]:
    """All local digraphs on n vertices with at most ``max_parallel`` edges per
    pair, once per local-isomorphism class. Grown one edge at a time."""
    if n > LOCAL_N_LIMIT or max_parallel > LOCAL_PARALLEL_LIMIT:
        raise SearchLimitExceeded(
            f"catalog supports n <= {LOCAL_N_LIMIT} and max_parallel <= {LOCAL_PARALLEL_LIMIT}"
        )
    if n < 0 or max_parallel < 0:
        raise ValueError("sizes must be nonnegative")
    level = [LocalDigraph(n, ())]
    while level:
        yield from level
        seen: dict[bytes, LocalDigraph] = {}
        for L in level:
            mult = L.multiplicities()
            for u, v in itertools.combinations(range(n), 2):
                if mult.get((u, v), 0) >= max_parallel:
                    continue
                for su, sv in SIGN_PAIRS:
                    child = LocalDigraph(n, L.edges + (LocalEdge(u, su, v, sv),))
                    seen.setdefault(_canonical_local_form(child), child)
        level = list(seen.values())


# --- random instances ---------------------------------------------------------

def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    )


def random_graph_with_edges(rng: random.Random, max_n: int, m: int) -> Graph:
    """Uniform m-subset of pairs on ``max_n`` vertices, isolated vertices dropped."""
    pairs = list(itertools.combinations(range(max_n), 2))
    return Graph.from_edges(max_n, rng.sample(pairs, min(m, len(pairs)))).without_isolated()


def random_local_digraph(
    rng: random.Random, n: int, p: float, max_parallel: int = 1
) -> LocalDigraph:
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        for _ in range(max_parallel):
            if rng.random() < p:
                edges.append(LocalEdge(u, rng.choice((1, -1)), v, rng.choice((1, -1))))
    return LocalDigraph(n, tuple(edges))


def random_graph_with_pm(rng: random.Random, n: int, p: float) -> tuple[Graph, Matching]:
    """Random graph on even ``n`` vertices containing a random perfect matching."""
    if n % 2:
        raise ValueError("n must be even")
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[2 * i], perm[2 * i + 1]) for i in range(n // 2)]
    m = Matching.of(pairs)
    extra = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, set(m.pairs) | set(extra)), m
