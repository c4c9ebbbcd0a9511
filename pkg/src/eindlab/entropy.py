"""Shannon entropy of uniformly random induced embeddings.

Probabilities are exact rationals; the only floating point step is the final
logarithm, summed with ``math.fsum``. Coordinates are numbered 1..k so that
coordinate i is the random vertex X_i.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .counting import iter_induced_embeddings
from .graphs import Graph, cycle

TOL = 1e-9


@dataclass(frozen=True)
class FiniteDistribution:
    probs: dict = field(default_factory=dict)

    def __post_init__(self):
        probs = {k: Fraction(v) for k, v in self.probs.items()}
        if not probs:
            raise ValueError("empty distribution")
        if any(p <= 0 for p in probs.values()):
            raise ValueError("probabilities must be positive")
        if sum(probs.values()) != 1:
            raise ValueError("probabilities must sum to 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, outcomes: Iterable) -> "FiniteDistribution":
        outs = list(outcomes)
        return cls({o: Fraction(1, len(outs)) for o in outs})

    def support(self) -> set:
        return set(self.probs)


@dataclass(frozen=True)
class EmbeddingDistribution:
    k: int
    support: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.support:
            raise ValueError("no embeddings")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support tuples must be distinct")

    def projection(self, coords: Sequence[int]) -> Counter:
        idx = _indices(coords, self.k)
        return Counter(tuple(t[i] for i in idx) for t in self.support)


def _indices(coords: Sequence[int], k: int) -> list[int]:
    cs = sorted(set(coords))
    if not cs:
        raise ValueError("index set must be nonempty")
    if cs[0] < 1 or cs[-1] > k:
        raise ValueError(f"coordinates must lie in 1..{k}")
    return [c - 1 for c in cs]


def embedding_distribution(g: Graph, h: Graph) -> EmbeddingDistribution:
    support = tuple(iter_induced_embeddings(g, h))
    if not support:
        raise ValueError("the host has no induced embedding of the pattern")
    return EmbeddingDistribution(g.n, support)


def _counts_entropy(counts: Iterable[int]) -> float:
    """Entropy of the distribution with masses c / sum(c)."""
    cs = list(counts)
    total = sum(cs)
    return math.log2(total) - math.fsum(c * math.log2(c) for c in cs) / total


def entropy(d: FiniteDistribution) -> float:
    return math.fsum(-float(p) * math.log2(p) for p in d.probs.values())


def projection_entropy(E: EmbeddingDistribution, coords: Sequence[int]) -> float:
    return _counts_entropy(E.projection(coords).values())


def conditional_entropy(
    E: EmbeddingDistribution, A: Sequence[int], B: Sequence[int] = ()
) -> float:
    """H(X_A | X_B) = H(X_A, X_B) - H(X_B)."""
    _indices(A, E.k)
    joint = projection_entropy(E, list(A) + list(B))
    if not B:
        return joint
    return joint - projection_entropy(E, B)


@dataclass(frozen=True)
class InequalityRecord:
    """``lhs <= rhs`` in bits."""

    claim: str
    lhs_bits: float
    rhs_bits: float

    @property
    def slack_bits(self) -> float:
        return self.rhs_bits - self.lhs_bits

    @property
    def holds(self) -> bool:
        return self.slack_bits >= -TOL

    def as_json(self) -> dict:
        return {
            "claim": self.claim,
            "lhs_bits": self.lhs_bits,
            "rhs_bits": self.rhs_bits,
            "slack_bits": self.slack_bits,
        }


@dataclass(frozen=True)
class Report:
    records: tuple[InequalityRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.records)

    def by_claim(self) -> dict:
        return {r.claim: r for r in self.records}

    def as_json(self) -> list[dict]:
        return [r.as_json() for r in self.records]


def _mixture_entropy_bits(supports: list[Counter]) -> float:
    """Entropy of the mixture of uniform-over-multiset laws with weights
    proportional to 2^H; disjoint supports are assumed."""
    hs = [_counts_entropy(c.values()) for c in supports]
    weights = [2.0**h for h in hs]
    total = math.fsum(weights)
    terms = []
    for w, c in zip(weights, supports):
        size = sum(c.values())
        for x in c.values():
            p = (w / total) * x / size
            terms.append(-p * math.log2(p))
    return math.fsum(terms)


def verify_c5_claims(h: Graph) -> Report:
    """The three entropy inequalities for a uniform induced C5 embedding
    (X_1, ..., X_5) of ``h``, plus the swap-mixture cross-check of the first."""
    E = embedding_distribution(cycle(5), h)
    H = lambda *cs: projection_entropy(E, cs)  # noqa: E731
    h1_2 = H(1, 2) - H(2)
    records = [
        InequalityRecord(
            "cond_x1_given_x2x3x5",
            H(1, 2, 3, 5) - H(2, 3, 5),
            h1_2 - 1.0,
        ),
        InequalityRecord(
            "cond_x1_given_x2x3x4",
            H(1, 2, 3, 4) - H(2, 3, 4),
            H(1) - math.log2(5),
        ),
        InequalityRecord(
            "final_two_full_plus_log250",
            2 * H(1, 2, 3, 4, 5) + math.log2(250),
            5 * H(1, 2),
        ),
    ]
    # The first claim via the disjoint-support mixture of (X1,X2,X3,X4) and
    # (X1,X2,X4,X3): X2X3 is always an edge, X2X4 never is.
    straight = E.projection((1, 2, 3, 4))
    swapped = Counter({(a, b, d, c): n for (a, b, c, d), n in straight.items()})
    if set(straight) & set(swapped):
        raise AssertionError("swap supports overlap")
    mix = _mixture_entropy_bits([straight, swapped])
    records.append(
        InequalityRecord("swap_mixture_lower", H(1, 2, 3, 4) + 1.0, mix)
    )
    records.append(
        InequalityRecord("swap_mixture_upper", mix, H(1, 3, 4) + h1_2)
    )
    return Report(tuple(records))


def mixture_entropy_check(parts: Sequence[FiniteDistribution]) -> InequalityRecord:
    """log2 sum 2^H(X_i) <= H(Z) for the mixture Z weighted by 2^H(X_i)."""
    seen: set = set()
    for d in parts:
        if seen & d.support():
            raise ValueError("supports overlap")
        seen |= d.support()
    hs = [entropy(d) for d in parts]
    weights = [2.0**x for x in hs]
    total = math.fsum(weights)
    terms = []
    for w, d in zip(weights, parts):
        for p in d.probs.values():
            q = w / total * float(p)
            terms.append(-q * math.log2(q))
    return InequalityRecord("mixture", math.log2(total), math.fsum(terms))
