"""Self-contained verification suites behind ``eindlab verify``.

Every suite is deterministic (fixed seeds) and returns a ``SuiteResult``
holding one ``Check`` per assertion. Checks carry the measured value and the
target so that failures are diagnosable from the JSON output alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from importlib import resources

from . import constructions as C
from .counting import (
    count_induced,
    count_induced_embeddings,
    count_ldp3,
    dp3_bound,
    dp3_stats,
    eind_ratio,
    ldp3_ab_bound,
    pm_count_bound,
    within_trivial_bound,
)
from .entropy import verify_c5_claims
from .fractional import alternating_closed_walk, is_unique_fpm, perturbation_witness
from .graphs import (
    Graph,
    Matching,
    aut_order,
    cycle,
    is_isomorphic,
    k4_minus,
    parse_graph,
    path,
    petersen,
    triangle_plus,
)
from .local import (
    count_induced_local,
    edge_localdigraph,
    find_locally_directed_closed_walk,
    is_ldag,
    is_locally_directed_closed_walk,
    ldg,
    ldp,
    local_iso,
    parse_ldg,
)
from .search import (
    dp3_dag_max,
    eind_oracle,
    enumerate_local_digraphs,
    random_graph_with_edges,
    random_graph_with_pm,
    random_local_digraph,
)

SEED = 20240611


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.as_json() for c in self.checks],
        }


def fixture_text(name: str) -> str:
    return resources.files("eindlab").joinpath("fixtures", name).read_text()


def fixture_graph(name: str) -> Graph:
    return parse_graph(fixture_text(name))


def fixture_ldg(name: str):
    return parse_ldg(fixture_text(name))


# Patterns with a unique fractional perfect matching used across suites.
UNIQUE_FPM_PATTERNS = {
    "P4": (path(4), Matching.parse("0-1,2-3")),
    "K3+": (triangle_plus(), Matching.parse("0-3,1-2")),
    "P6": (path(6), Matching.parse("0-1,2-3,4-5")),
}


def _relative(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol * target


# --- table1 -----------------------------------------------------------------

def table1_ratio_checks() -> list[tuple[str, float, float, str, float]]:
    """(name, value, target, mode, tolerance) for the small-graph host families."""
    k12 = Graph.from_edges(3, [(0, 1), (0, 2)])
    k13 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    rows = [
        ("K_{1,2} in star(200)", eind_ratio(k12, C.star(200)), 1 / 4, "rel", 0.05),
        ("K_{1,3} in star(200)", eind_ratio(k13, C.star(200)), 1 / 8, "rel", 0.05),
        ("C4 in K_{30,30}", eind_ratio(cycle(4), C.complete_bipartite(30, 30)), 1 / 2, "rel", 0.05),
        ("2K2 in matching(200)", eind_ratio(two_k2, C.matching_host(200)), 1.0, "rel", 0.02),
    ]
    K60 = C.complete(60)
    for t in (2, 3, 4):
        rows.append((f"K{t} in K_60", eind_ratio(C.complete(t), K60), 1.0, "rel", 0.02))
    rows.append(("P4 in corona(50, 5000)", eind_ratio(path(4), C.corona(50, 5000)), 0.24, "min", 0.0))
    rows.append(
        (
            "K4- in join(20, 2000)",
            eind_ratio(k4_minus(), C.join_clique_independent(20, 2000)),
            1 / 4,
            "rel",
            0.05,
        )
    )
    return rows


def oracle_checks(result: SuiteResult) -> None:
    k12 = Graph.from_edges(3, [(0, 1), (0, 2)])
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    for name, g, witness in (("K_{1,2}", k12, C.star), ("2K2", two_k2, C.matching_host)):
        for m in range(2, 6):
            res = eind_oracle(g, m)
            want = math.comb(m, 2)
            ok = (
                res.max_nind == want
                and is_isomorphic(res.witness, witness(m))
                and within_trivial_bound(g, m, res.max_nind)
                and (g.n % 2 or res.max_nind <= pm_count_bound(g, m))
            )
            result.add(f"oracle {name} m={m}", ok, value=res.max_nind, target=want)


def suite_table1() -> SuiteResult:
    result = SuiteResult("table1")
    for name, value, target, mode, tol in table1_ratio_checks():
        ok = value >= target if mode == "min" else _relative(value, target, tol)
        result.add(name, ok, value=value, target=target, mode=mode, tolerance=tol)
    oracle_checks(result)
    return result


# --- p4 / k3plus / p6 -----------------------------------------------------------

def better_construction_target(g: Graph, k: int) -> float:
    return 0.9 * aut_order(g) / (2**k * (k**k - k))


def p4_construction_ratio() -> float:
    g, m = UNIQUE_FPM_PATTERNS["P4"]
    return eind_ratio(g, C.better_construction_host(g, m, depth=5, flips=(0,)))


def p6_construction_ratio() -> float:
    g, m = UNIQUE_FPM_PATTERNS["P6"]
    return eind_ratio(g, C.better_construction_host(g, m, depth=2))


def suite_p4() -> SuiteResult:
    result = SuiteResult("p4")
    g, m = UNIQUE_FPM_PATTERNS["P4"]
    result.add("unique fPM", is_unique_fpm(g, m))
    result.add("ldg is the single-edge fixture", local_iso(ldg(g, m), fixture_ldg("fig9.ldg")))
    r = p4_construction_ratio()
    target = better_construction_target(g, 2)
    result.add("iterated-blowup host ratio", r >= target, value=r, target=target)
    corona = eind_ratio(g, C.corona(50, 5000))
    result.add("corona(50, 5000) ratio", corona >= 0.24, value=corona, target=0.24)
    small = count_induced_embeddings(g, C.corona(3, 4))
    result.add("corona(3, 4) embeddings", small == 2 * math.comb(3, 2) * 16, value=small, target=96)
    return result


def suite_k3plus() -> SuiteResult:
    result = SuiteResult("k3plus")
    g, m = UNIQUE_FPM_PATTERNS["K3+"]
    L = ldg(g, m)
    result.add("unique fPM", is_unique_fpm(g, m))
    result.add("ldg matches the two-edge fixture", local_iso(L, fixture_ldg("fig10.ldg")), edges=L.e)
    result.add("ldg is acyclic", is_ldag(L))
    rng = random.Random(SEED + 3)
    bad = 0
    for _ in range(100):
        h = random_graph_with_edges(rng, rng.randint(4, 9), rng.randint(1, 9))
        if count_induced_local(L, edge_localdigraph(h)) < count_induced(g, h):
            bad += 1
    result.add("edge-local-digraph reduction on 100 random hosts", bad == 0, failures=bad)
    return result


def ldp3_fraction(count: int, n: int) -> float:
    return count / math.comb(n, 3)


def suite_p6() -> SuiteResult:
    result = SuiteResult("p6")
    for k in range(1, 7):
        brute = count_induced_local(ldp(3), C.g_k(k))
        formula = C.g_k_ldp3_formula(k)
        result.add(f"g_k({k}) count", brute == formula == count_ldp3(C.g_k(k)), brute=brute, formula=formula)
    g50 = C.g_k(50)
    frac = ldp3_fraction(count_ldp3(g50), g50.n)
    result.add("g_k(50) triple fraction", frac >= 0.295, value=frac, target=0.295)
    fracs = []
    for t in range(3):
        h = C.h_4t(t)
        fracs.append(ldp3_fraction(count_ldp3(h), h.n))
    result.add(
        "h_4t triple fraction increasing for t = 0, 1, 2",
        fracs[0] <= fracs[1] <= fracs[2],
        values=fracs,
        limit=10 / 31,
    )
    hosts = [C.g_k(k) for k in range(1, 7)] + [C.h_4t(t) for t in range(3)]
    result.add("A/B bound on constructions", all(ldp3_ab_bound(h).holds for h in hosts))
    g, m = UNIQUE_FPM_PATTERNS["P6"]
    r = p6_construction_ratio()
    target = better_construction_target(g, 3)
    result.add("iterated-blowup host ratio", r >= target, value=r, target=target)
    host, _ = C.ldag_host_graph(ldp(3), [(1, 12), (2, 6), (3, 4)])
    n6 = count_induced(g, host)
    result.add("k = 12 reduction host", n6 >= 12**3, value=n6, target=12**3)
    return result


# --- c5-entropy ----------------------------------------------------------------

def c5_hosts() -> dict[str, Graph]:
    return {
        "C5": cycle(5),
        "C5 blowup 2": C.blowup(C.BlowupSpec(cycle(5), (2,) * 5)),
        "C5 blowup 3": C.blowup(C.BlowupSpec(cycle(5), (3,) * 5)),
        "Petersen": petersen(),
    }


def suite_c5_entropy() -> SuiteResult:
    result = SuiteResult("c5-entropy")
    for name, h in c5_hosts().items():
        rep = verify_c5_claims(h)
        result.add(f"claims on {name}", rep.passed, records=rep.as_json())
        if name == "C5":
            recs = rep.by_claim()
            tight = all(
                abs(recs[c].slack_bits) <= 1e-9
                for c in ("cond_x1_given_x2x3x5", "cond_x1_given_x2x3x4")
            )
            result.add("first two claims tight on C5", tight)
    for s in (1, 2, 3):
        r = eind_ratio(cycle(5), C.BlowupSpec(cycle(5), (s,) * 5))
        result.add(f"C5 blowup ratio s={s}", abs(r - 10**-1.5) <= 1e-12, value=r, target=10**-1.5)
    return result


# --- prop-double-cover / prop-unique-fpm -------------------------------------------

def _walk_agrees(L) -> bool:
    walk = find_locally_directed_closed_walk(L)
    if walk is not None and not is_locally_directed_closed_walk(L, walk):
        return False
    return is_ldag(L) == (walk is None)


def suite_prop_double_cover() -> SuiteResult:
    result = SuiteResult("prop-double-cover")
    total = bad = 0
    for n in range(1, 5):
        for L in enumerate_local_digraphs(n, 2):
            total += 1
            bad += not _walk_agrees(L)
    result.add("catalog n <= 4, two parallel edges", bad == 0, cases=total, failures=bad)
    rng = random.Random(SEED + 1)
    bad = 0
    for _ in range(1000):
        L = random_local_digraph(rng, rng.randint(2, 7), rng.uniform(0.1, 0.6), rng.randint(1, 2))
        bad += not _walk_agrees(L)
    result.add("1000 random local digraphs", bad == 0, failures=bad)
    verdicts = {"fig2-left.ldg": True, "fig2-right.ldg": True, "fig6.ldg": True,
                "fig7.ldg": False, "fig8.ldg": False}
    for name, want in verdicts.items():
        result.add(f"{name} acyclic = {want}", is_ldag(fixture_ldg(name)) == want)
    return result


def suite_prop_unique_fpm() -> SuiteResult:
    result = SuiteResult("prop-unique-fpm")
    rng = random.Random(SEED + 2)
    disagree = bad_witness = nonunique = 0
    for _ in range(1000):
        g, m = random_graph_with_pm(rng, 2 * rng.randint(1, 6), rng.uniform(0.05, 0.5))
        via_ldag = is_unique_fpm(g, m)
        via_walk = alternating_closed_walk(g, m) is None
        disagree += via_ldag != via_walk
        if not via_walk:
            nonunique += 1
            w = perturbation_witness(g, m)
            if w is None or not w.is_perfect(g) or w.is_indicator_of(m):
                bad_witness += 1
    result.add("ldag test agrees with alternating walks", disagree == 0, failures=disagree)
    result.add("perturbation witnesses valid", bad_witness == 0, nonunique=nonunique, failures=bad_witness)
    return result


# --- thm-reduction -----------------------------------------------------------------

def suite_thm_reduction() -> SuiteResult:
    result = SuiteResult("thm-reduction")
    rng = random.Random(SEED + 4)
    hosts = [random_graph_with_edges(rng, rng.randint(3, 10), rng.randint(1, 9)) for _ in range(300)]
    for name, (g, m) in UNIQUE_FPM_PATTERNS.items():
        L = ldg(g, m)
        bad = sum(
            count_induced_local(L, edge_localdigraph(h)) < count_induced(g, h) for h in hosts
        )
        result.add(f"{name}: ldg copies dominate N_ind on 300 hosts", bad == 0, failures=bad)
    host, _ = C.ldag_host_graph(ldp(3), [(1, 12), (2, 6), (3, 4)])
    n6 = count_induced(path(6), host)
    result.add("P6 in the k = 12 LDP3 host", n6 >= 12**3, value=n6, target=12**3)
    return result


# --- appendix-dp3 -------------------------------------------------------------------

def suite_appendix_dp3(max_n: int = 7) -> SuiteResult:
    result = SuiteResult("appendix-dp3")
    for n in range(3, max_n + 1):
        best, mask = dp3_dag_max(n)
        bound = math.floor(dp3_bound(n))
        result.add(f"dp3 max n={n}", best <= bound, value=best, bound=bound, mask=mask)
        if n == 6:
            blow = dp3_stats(C.dp3_blowup((2, 2, 2))).count
            result.add("n=6 max is 8, met by the (2,2,2) blowup", best == 8 == blow, value=best)
    bad = 0
    for n in range(3, 6):
        for mask in range(1 << math.comb(n, 2)):
            st = dp3_stats(C.forward_dag(n, mask))
            bad += not (st.triples_ok and st.identity_ok)
    result.add("per-triple identity, all masks n <= 5", bad == 0, failures=bad)
    rng = random.Random(SEED + 5)
    bad = 0
    for _ in range(1000):
        n = rng.randint(3, 9)
        st = dp3_stats(C.forward_dag(n, rng.getrandbits(math.comb(n, 2))))
        bad += not st.identity_ok
    result.add("aggregate identity on 1000 random masks", bad == 0, failures=bad)
    return result


SUITES = {
    "table1": suite_table1,
    "p4": suite_p4,
    "k3plus": suite_k3plus,
    "p6": suite_p6,
    "c5-entropy": suite_c5_entropy,
    "prop-double-cover": suite_prop_double_cover,
    "prop-unique-fpm": suite_prop_unique_fpm,
    "thm-reduction": suite_thm_reduction,
    "appendix-dp3": suite_appendix_dp3,
}


def run_suite(name: str) -> list[SuiteResult]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    return [SUITES[name]()]
