"""Fractional matchings and fractional independent sets, in exact rationals.

The fractional matching number is half the matching number of the bipartite
double cover (left copy ``v``, right copy ``v``, both ``uv`` orientations as
edges). The fractional independence number is its LP dual complement,
``n - mu*``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Graph, Matching
from .local import is_ldag, ldg

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FractionalWeighting:
    weights: dict = field(default_factory=dict)

    def get(self, u: int, v: int) -> Fraction:
        return self.weights.get((min(u, v), max(u, v)), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def loads(self, g: Graph) -> list[Fraction]:
        load = [Fraction(0)] * g.n
        for (u, v), x in self.weights.items():
            load[u] += x
            load[v] += x
        return load

    def _valid_support(self, g: Graph) -> bool:
        return all(
            g.has_edge(u, v) and 0 <= x <= 1 for (u, v), x in self.weights.items()
        )

    def is_fractional_matching(self, g: Graph) -> bool:
        return self._valid_support(g) and all(x <= 1 for x in self.loads(g))

    def is_perfect(self, g: Graph) -> bool:
        return self._valid_support(g) and all(x == 1 for x in self.loads(g))

    def is_indicator_of(self, m: Matching) -> bool:
        ones = {p for p, x in self.weights.items() if x == 1}
        rest = [x for p, x in self.weights.items() if x not in (0, 1)]
        return not rest and ones == set(m.pairs)


@dataclass(frozen=True)
class VertexWeighting:
    weights: tuple[Fraction, ...]

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def is_fractional_independent_set(self, g: Graph) -> bool:
        if any(not 0 <= x <= 1 for x in self.weights):
            return False
        return all(self.weights[u] + self.weights[v] <= 1 for u, v in g.edges())


def _bipartite_max_matching(g: Graph) -> tuple[list[int], list[int]]:
    """Hopcroft-Karp on the double cover. Returns (match_left, match_right)."""
    n = g.n
    adj = [g.neighbors(v) for v in range(n)]
    match_l = [-1] * n
    match_r = [-1] * n
    inf = n + 1

    while True:
        dist = [inf] * n
        queue = deque()
        for v in range(n):
            if match_l[v] == -1:
                dist[v] = 0
                queue.append(v)
        found = False
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                w = match_r[u]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        if not found:
            return match_l, match_r

        def augment(v: int) -> bool:
            for u in adj[v]:
                w = match_r[u]
                if w == -1 or (dist[w] == dist[v] + 1 and augment(w)):
                    match_l[v] = u
                    match_r[u] = v
                    return True
            dist[v] = inf
            return False

        for v in range(n):
            if match_l[v] == -1:
                augment(v)


def max_fractional_matching(g: Graph) -> tuple[Fraction, FractionalWeighting]:
    match_l, _ = _bipartite_max_matching(g)
    weights: dict[tuple[int, int], Fraction] = {}
    for v, u in enumerate(match_l):
        if u != -1:
            key = (min(u, v), max(u, v))
            weights[key] = weights.get(key, Fraction(0)) + HALF
    size = sum(1 for u in match_l if u != -1)
    return Fraction(size, 2), FractionalWeighting(weights)


def max_fractional_independent_set(g: Graph) -> tuple[Fraction, VertexWeighting]:
    """Optimal half-integral fractional independent set from a Konig cover."""
    match_l, match_r = _bipartite_max_matching(g)
    adj = [g.neighbors(v) for v in range(g.n)]
    # Konig: Z = reachable from free left vertices by alternating paths;
    # cover = (L \ Z) + (R & Z).
    z_left = [False] * g.n
    z_right = [False] * g.n
    queue = deque(v for v in range(g.n) if match_l[v] == -1)
    for v in queue:
        z_left[v] = True
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if not z_right[u]:
                z_right[u] = True
                w = match_r[u]
                if w != -1 and not z_left[w]:
                    z_left[w] = True
                    queue.append(w)
    alpha = []
    for v in range(g.n):
        cover = (not z_left[v]) + z_right[v]
        alpha.append(1 - Fraction(cover, 2))
    weighting = VertexWeighting(tuple(alpha))
    return weighting.total(), weighting


def alpha_star(g: Graph) -> Fraction:
    mu, _ = max_fractional_matching(g)
    return g.n - mu


def alpha_star_bruteforce(g: Graph) -> Fraction:
    """Max over half-integral vertex weights in {0, 1/2, 1}; exact by
    half-integrality of the fractional independent set polytope."""
    n = g.n
    nbrs = [[u for u in g.neighbors(v) if u < v] for v in range(n)]
    vals = [Fraction(0)] * n
    best = [Fraction(-1)]

    def rec(v: int, acc: Fraction) -> None:
        if acc + (n - v) <= best[0]:
            return
        if v == n:
            best[0] = acc
            return
        cap = min((1 - vals[u] for u in nbrs[v]), default=Fraction(1))
        for x in (Fraction(1), HALF, Fraction(0)):
            if x <= cap:
                vals[v] = x
                rec(v + 1, acc + x)
        vals[v] = Fraction(0)

    rec(0, Fraction(0))
    return best[0]


def is_unique_fpm(g: Graph, m: Matching) -> bool:
    m.check_perfect(g)
    return is_ldag(ldg(g, m))


def alternating_closed_walk(g: Graph, m: Matching) -> list[int] | None:
    """Closed walk ``u1 w1 u2 w2 ... ut wt (u1)`` with ``ui wi`` in ``m`` and
    ``wi u(i+1)`` outside ``m``, found by depth-first search; length <= 4n."""
    m.check_perfect(g)
    partner = m.partner()
    succ = {}
    for u in range(g.n):
        w = partner[u]
        succ[u] = [x for x in g.neighbors(w) if x != u]
    color = dict.fromkeys(range(g.n), 0)
    stack_pos: dict[int, int] = {}
    path: list[int] = []

    def dfs(u: int) -> list[int] | None:
        color[u] = 1
        stack_pos[u] = len(path)
        path.append(u)
        for x in succ[u]:
            if color[x] == 1:
                return path[stack_pos[x]:]
            if color[x] == 0:
                found = dfs(x)
                if found:
                    return found
        color[u] = 2
        path.pop()
        del stack_pos[u]
        return None

    for s in range(g.n):
        if color[s] == 0:
            cyc = dfs(s)
            if cyc:
                walk = []
                for u in cyc:
                    walk.extend((u, partner[u]))
                assert len(walk) <= 4 * g.n
                return walk
    return None


def perturbation_witness(g: Graph, m: Matching) -> FractionalWeighting | None:
    """A second fractional perfect matching, or None when ``m`` is the only one.

    Shifts weight ``eps * c(e)`` along an alternating closed walk, where
    ``c(e)`` counts traversals and ``eps = 1 / max c``.
    """
    walk = alternating_closed_walk(g, m)
    if walk is None:
        return None
    counts: dict[tuple[int, int], int] = {}
    t = len(walk)
    for i in range(t):
        a, b = walk[i], walk[(i + 1) % t]
        key = (min(a, b), max(a, b))
        counts[key] = counts.get(key, 0) + 1
    eps = Fraction(1, max(counts.values()))
    in_m = set(m.pairs)
    weights = {}
    for e in g.edges():
        c = counts.get(e, 0)
        weights[e] = 1 - eps * c if e in in_m else eps * c
    return FractionalWeighting(weights)
