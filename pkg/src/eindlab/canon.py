"""Canonical labeling of small weighted graphs.

A graph is handed over as a symmetric integer weight matrix (0 = no edge).
The engine does colour refinement to an equitable partition, then branches
on the first smallest non-singleton cell and keeps the lexicographically
smallest certificate over all leaves. Cells whose members are pairwise
twins are branched on a single representative, which keeps cliques,
independent sets and complete multipartite pieces cheap. Two leaves with the
same certificate give an automorphism; children in one orbit of the
automorphisms found so far that fix the current branch point are explored
once.
"""

from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _refine(w: Matrix, cells: list[list[int]]) -> list[list[int]]:
    cells = [list(c) for c in cells]
    while True:
        index = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                index[v] = ci
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sigs = {}
            for v in cell:
                row = w[v]
                counts: dict[tuple[int, int], int] = {}
                for u in range(len(row)):
                    x = row[u]
                    if x:
                        key = (index[u], x)
                        counts[key] = counts.get(key, 0) + 1
                sigs[v] = tuple(sorted(counts.items()))
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sigs[v], []).append(v)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _individualize(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for cell in cells:
        if v in cell:
            out.append([v])
            rest = [u for u in cell if u != v]
            if rest:
                out.append(rest)
        else:
            out.append(cell)
    return out


def _twin_cell(w: Matrix, cell: list[int]) -> bool:
    n = len(w)
    first = cell[0]
    inner = w[first][cell[1]]
    for a in cell:
        for b in cell:
            if a != b and w[a][b] != inner:
                return False
    members = set(cell)
    outside = [u for u in range(n) if u not in members]
    ref = [w[first][u] for u in outside]
    return all([w[v][u] for u in outside] == ref for v in cell[1:])


def _certificate(w: Matrix, order: list[int]) -> tuple[int, ...]:
    n = len(order)
    return tuple(w[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))


def canonical_labeling(
    w: Matrix, colors: Sequence[int] | None = None
) -> tuple[list[int], tuple]:
    """Return ``(order, certificate)`` where ``order[i]`` is the vertex placed
    at canonical position ``i``.

    Two inputs are isomorphic (respecting ``colors``) iff their certificates
    are equal.
    """
    n = len(w)
    if n == 0:
        return [], ((), ())
    if colors is None:
        colors = [0] * n
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    start = _refine(w, [groups[c] for c in sorted(groups)])
    best: list = [None, None]
    autos: list[list[int]] = []

    def orbit_of(v: int, fixed: list[int]) -> set[int]:
        gens = [g for g in autos if all(g[x] == x for x in fixed)]
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                if g[x] not in seen:
                    seen.add(g[x])
                    stack.append(g[x])
        return seen

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        target = None
        for cell in cells:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(w, order)
            if best[0] is None or cert < best[0]:
                best[0] = cert
                best[1] = order
            elif cert == best[0]:
                g = [0] * n
                for a, b in zip(order, best[1]):
                    g[a] = b
                autos.append(g)
            return
        choices = target[:1] if _twin_cell(w, target) else target
        done: list[int] = []
        for v in choices:
            if done and v in set().union(*(orbit_of(u, fixed) for u in done)):
                continue
            done.append(v)
            search(_refine(w, _individualize(cells, v)), fixed + [v])

    search(start, [])
    order = best[1]
    color_sig = tuple(colors[v] for v in order)
    return order, (color_sig, best[0])


def refined_partition(w: Matrix, fixed: Sequence[int] = ()) -> list[list[int]]:
    """Equitable partition after individualizing ``fixed`` in order."""
    cells = _refine(w, [list(range(len(w)))])
    for v in fixed:
        cells = _refine(w, _individualize(cells, v))
    return cells
