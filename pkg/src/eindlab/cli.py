"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or no result, e.g. a cyclic
input to ``toposort``), 2 usage or input error. ``--json`` switches every
command to a single JSON document on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from .counting import (
    count_embeddings,
    count_induced_embeddings,
    eind_ratio,
    pm_count_bound,
    trivial_upper_bound,
)
from .entropy import FiniteDistribution, mixture_entropy_check, verify_c5_claims
from .fractional import VertexWeighting, is_unique_fpm, perturbation_witness
from .graphs import Graph, Matching, aut_order, cycle, parse_graph, path, petersen, serialize_graph
from .local import (
    LocalDigraph,
    count_induced_local,
    double_cover,
    find_locally_directed_closed_walk,
    graphify,
    is_ldag,
    ldg,
    ldp,
    parse_ldg,
    serialize_ldg,
    sign_char,
    topological_sort,
)
from .search import eind_oracle
from .verify import run_suite

FIXTURES = Path(__file__).parent / "fixtures"


class UsageError(Exception):
    pass


def _resolve(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    q = FIXTURES / name
    if q.exists():
        return q
    raise UsageError(f"file not found: {name}")


def read_graph(name: str) -> Graph:
    return parse_graph(_resolve(name).read_text())


def read_ldg(name: str) -> LocalDigraph:
    return parse_ldg(_resolve(name).read_text())


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, default=str))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_or_print(args, text: str, payload) -> None:
    if args.output:
        Path(args.output).write_text(text)
        _emit(args, {"written": args.output}, f"wrote {args.output}")
    else:
        _emit(args, payload, text)


# --- construct ------------------------------------------------------------------

def _ints(args, k: int) -> list[int]:
    if len(args.params) != k:
        raise UsageError(f"{args.name} takes {k} integer parameter(s)")
    try:
        return [int(x) for x in args.params]
    except ValueError:
        raise UsageError("parameters must be integers") from None


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.split(","):
        p, _, q = tok.partition(":")
        out.append((int(p), int(q)))
    return out


def _base(args):
    if args.graph:
        return read_graph(args.graph)
    if args.ldg:
        return read_ldg(args.ldg)
    raise UsageError(f"{args.name} needs --graph or --ldg")


def build(args):
    name = args.name
    simple = {
        "star": (C.star, 1),
        "complete": (C.complete, 1),
        "complete-bipartite": (C.complete_bipartite, 2),
        "matching": (C.matching_host, 1),
        "join": (C.join_clique_independent, 2),
        "corona": (C.corona, 2),
        "path": (path, 1),
        "cycle": (cycle, 1),
        "g-k": (C.g_k, 1),
        "h-4t": (C.h_4t, 1),
        "ldp": (ldp, 1),
    }
    if name in simple:
        fn, k = simple[name]
        return fn(*_ints(args, k))
    if name == "petersen":
        return petersen()
    if name == "attach-pendants":
        return C.attach_pendants(read_graph(args.graph))[0]
    if name == "pinch":
        return C.pinch(read_graph(args.graph))
    if name == "weighted-blowup":
        g = read_graph(args.graph)
        w = VertexWeighting(tuple(Fraction(x) for x in args.weights.split(",")))
        return C.weighted_blowup(g, w, args.budget)
    if name == "blowup":
        sizes = tuple(int(x) for x in args.sizes.split(","))
        return C.blowup(C.BlowupSpec(_base(args), sizes))
    if name == "iterated-blowup":
        return C.iterated_blowup(_base(args), args.depth)
    if name == "ldag-host":
        return C.ldag_host_graph(read_ldg(args.ldg), _pairs(args.pairs))[0]
    if name == "forward-dag":
        n, mask = _ints(args, 2)
        d = C.forward_dag(n, mask)
        return Graph.from_edges(n, d.edges())
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(args) -> int:
    obj = build(args)
    text = serialize_graph(obj) if isinstance(obj, Graph) else serialize_ldg(obj)
    _write_or_print(args, text, {"format": text})
    return 0


# --- count ------------------------------------------------------------------------

def cmd_count(args) -> int:
    if args.pattern.endswith(".ldg") or args.host.endswith(".ldg"):
        n = count_induced_local(read_ldg(args.pattern), read_ldg(args.host))
        _emit(args, {"induced_copies": n}, f"induced copies: {n}")
        return 0
    g, h = read_graph(args.pattern), read_graph(args.host)
    aut = aut_order(g)
    out = {
        "aut": aut,
        "embeddings": count_embeddings(g, h),
        "induced_embeddings": count_induced_embeddings(g, h),
    }
    out["copies"] = out["embeddings"] // aut
    out["induced_copies"] = out["induced_embeddings"] // aut
    if h.e and not g.isolated():
        out["eind_ratio"] = eind_ratio(g, h)
        out["trivial_upper_bound"] = trivial_upper_bound(g, h.e)
        if g.n % 2 == 0:
            try:
                out["pm_count_bound"] = str(pm_count_bound(g, h.e))
            except ValueError:
                pass
    keys = ["induced_embeddings", "induced_copies"] if args.induced else ["embeddings", "copies"]
    keys += [k for k in ("eind_ratio", "trivial_upper_bound", "pm_count_bound") if k in out]
    _emit(args, out, "\n".join(f"{k}: {out[k]}" for k in keys))
    return 0


# --- local digraph commands -------------------------------------------------------------

def cmd_ldg(args) -> int:
    L = ldg(read_graph(args.graph), Matching.parse(args.matching))
    text = serialize_ldg(L)
    _emit(args, {"ldg": text}, text)
    return 0


def _walk_text(walk) -> str:
    return " ".join(str(v) for v in walk.sequence())


def cmd_check(args) -> int:
    L = read_ldg(args.ldg)
    if is_ldag(L):
        _emit(args, {"acyclic": True}, "acyclic")
        return 0
    walk = find_locally_directed_closed_walk(L)
    payload = {"acyclic": False, "walk": list(walk.vertices), "edges": list(walk.edges)}
    _emit(args, payload, f"cyclic\nwalk: {_walk_text(walk)}")
    return 0


def cmd_toposort(args) -> int:
    ts = topological_sort(read_ldg(args.ldg))
    if ts is None:
        _emit(args, {"toposort": None}, "cyclic: no topological sort")
        return 1
    text = " ".join(f"{v}{sign_char(s)}" for v, s in zip(ts.order, ts.signs))
    _emit(args, {"order": list(ts.order), "signs": [sign_char(s) for s in ts.signs]}, text)
    return 0


def cmd_double_cover(args) -> int:
    D = double_cover(read_ldg(args.ldg))
    lines = [f"digraph {D.n}"] + [f"a {a} {b}" for a, b in sorted(D.arcs)]
    _emit(args, {"n": D.n, "arcs": sorted(D.arcs)}, "\n".join(lines))
    return 0


def cmd_graphify(args) -> int:
    G = graphify(read_ldg(args.ldg))
    if all(c == 1 for c in G.multiplicities().values()):
        text = serialize_graph(G.simple())
    else:
        text = "\n".join([f"multigraph {G.n}"] + [f"e {a} {b}" for a, b in G.edges]) + "\n"
    _emit(args, {"n": G.n, "edges": list(G.edges)}, text)
    return 0


def cmd_fpm(args) -> int:
    g, m = read_graph(args.graph), Matching.parse(args.matching)
    if args.action == "unique":
        u = is_unique_fpm(g, m)
        _emit(args, {"unique": u}, "unique" if u else "not unique")
        return 0
    w = perturbation_witness(g, m)
    if w is None:
        _emit(args, {"witness": None}, "none: the matching is the unique fractional perfect matching")
        return 0
    rows = {f"{u}-{v}": str(x) for (u, v), x in sorted(w.weights.items()) if x}
    _emit(args, {"witness": rows}, "\n".join(f"{k} {v}" for k, v in rows.items()))
    return 0


def cmd_oracle(args) -> int:
    res = eind_oracle(read_graph(args.pattern), args.edges, args.max_n, args.force)
    _emit(args, res.as_json(), f"{res.max_nind}\n{serialize_graph(res.witness)}")
    return 0


def cmd_entropy(args) -> int:
    if args.action == "c5":
        if not args.host:
            raise UsageError("entropy c5 needs --host")
        rep = verify_c5_claims(read_graph(args.host))
        lines = [
            f"{r.claim}: lhs={r.lhs_bits:.9f} rhs={r.rhs_bits:.9f} slack={r.slack_bits:.9f}"
            for r in rep.records
        ]
        _emit(args, {"passed": rep.passed, "records": rep.as_json()}, "\n".join(lines))
        return 0 if rep.passed else 1
    if not args.dists:
        raise UsageError("entropy mixture needs --dists")
    raw = json.loads(_resolve(args.dists).read_text())
    parts = [FiniteDistribution({k: Fraction(v) for k, v in d.items()}) for d in raw]
    rec = mixture_entropy_check(parts)
    _emit(args, rec.as_json(), f"lhs={rec.lhs_bits:.9f} rhs={rec.rhs_bits:.9f} slack={rec.slack_bits:.9f}")
    return 0 if rec.holds else 1


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"passed": ok, "suites": [r.as_json() for r in results]}, default=str))
    else:
        for r in results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}")
            for c in r.checks:
                extra = ", ".join(f"{k}={v}" for k, v in c.detail.items() if k != "records")
                print(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}" + (f" ({extra})" if extra else ""))
    return 0 if ok else 1


# --- parser -------------------------------------------------------------------------------

SUITE_NAMES = [
    "table1", "p4", "k3plus", "p6", "c5-entropy", "prop-double-cover",
    "prop-unique-fpm", "thm-reduction", "appendix-dp3", "all",
]


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eindlab", description="Edge inducibility toolkit")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--threads", type=int, default=None, help="worker cap for search")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named host")
    c.add_argument("name")
    c.add_argument("params", nargs="*")
    c.add_argument("-o", "--output")
    c.add_argument("--graph")
    c.add_argument("--ldg")
    c.add_argument("--sizes")
    c.add_argument("--depth", type=int, default=1)
    c.add_argument("--pairs", help='part pairs "p:q,p:q,..."')
    c.add_argument("--weights", help='vertex weights "1/2,1/2,..."')
    c.add_argument("--budget", type=int)
    c.set_defaults(fn=cmd_construct)

    c = sub.add_parser("count", help="count (induced) copies and ratios")
    c.add_argument("--induced", action="store_true")
    c.add_argument("--pattern", required=True)
    c.add_argument("--host", required=True)
    c.set_defaults(fn=cmd_count)

    c = sub.add_parser("ldg", help="local digraph of a graph and perfect matching")
    c.add_argument("--graph", required=True)
    c.add_argument("--matching", required=True)
    c.set_defaults(fn=cmd_ldg)

    c = sub.add_parser("check", help="check a property of a local digraph")
    c.add_argument("property", choices=["acyclic"])
    c.add_argument("--ldg", required=True)
    c.set_defaults(fn=cmd_check)

    for name, fn in (("toposort", cmd_toposort), ("double-cover", cmd_double_cover), ("graphify", cmd_graphify)):
        c = sub.add_parser(name)
        c.add_argument("--ldg", required=True)
        c.set_defaults(fn=fn)

    c = sub.add_parser("fpm", help="fractional perfect matching uniqueness")
    c.add_argument("action", choices=["unique", "witness"])
    c.add_argument("--graph", required=True)
    c.add_argument("--matching", required=True)
    c.set_defaults(fn=cmd_fpm)

    c = sub.add_parser("oracle", help="exhaustive max over m-edge hosts")
    c.add_argument("--pattern", required=True)
    c.add_argument("--edges", type=int, required=True)
    c.add_argument("--max-n", type=int, default=None)
    c.add_argument("--force", action="store_true")
    c.set_defaults(fn=cmd_oracle)

    c = sub.add_parser("entropy", help="entropy inequality checks")
    c.add_argument("action", choices=["c5", "mixture"])
    c.add_argument("--host")
    c.add_argument("--dists")
    c.set_defaults(fn=cmd_entropy)

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("suite", choices=SUITE_NAMES)
    c.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be positive")
        os.environ["EINDLAB_THREADS"] = str(args.threads)
    try:
        return args.fn(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"eindlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
