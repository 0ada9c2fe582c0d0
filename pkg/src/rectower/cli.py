"""Command-line driver: reproducible JSON workflows over the library.

Every subcommand prints JSON on stdout (DOT with --dot on the graph
command).  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures, genus, search, series, tgraph
from .errors import TowerError
from .ff import FieldCtx, legendre


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return [int(c) for c in text.split(",")]
    except ValueError as exc:
        raise TowerError(f"modulus must be comma-separated integer coefficients "
                         f"(ascending), got {text!r}") from exc


def _graph_ctx(args):
    ext = args.ext
    modulus = _parse_modulus(getattr(args, "modulus", None))
    return FieldCtx(args.p, ext, modulus) if ext > 1 else FieldCtx(args.p)


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_series(args) -> int:
    values = [series.coeff_a(i) for i in range(args.n)]
    if args.plain:
        print(", ".join(str(v) for v in values))
        return 0
    out = {"n": args.n, "a": values}
    if args.p:
        hp = series.truncate_H_mod_p(args.p)
        out["p"] = args.p
        out["H_p"] = [c.coeffs[0] for c in hp.coeffs]
    _emit(out)
    return 0


def cmd_chi(args) -> int:
    ctx = _graph_ctx(args)
    bound = fixtures.load_fixture(args.fixture, args.p, ctx=ctx, check=False)
    graph = tgraph.TowerGraph(bound.f, bound.g, ctx)
    chi = fixtures.chi_from_graph(graph)
    coeffs = [c.coeffs[0] for c in chi.coeffs]
    out = {
        "p": args.p,
        "fixture": args.fixture,
        "chi": coeffs,
        "degree": chi.degree,
        "legendre_minus3": legendre(-3, args.p),
    }
    if args.fixture == "new-tower":
        hp = series.truncate_H_mod_p(args.p)
        out["series_bridge"] = (chi * out["legendre_minus3"]) == hp
    _emit(out)
    return 0


def cmd_graph(args) -> int:
    ctx = _graph_ctx(args)
    bound = fixtures.load_fixture(args.fixture, args.p, ctx=ctx, check=False)
    graph = tgraph.TowerGraph(bound.f, bound.g, ctx)
    if args.dot:
        print(tgraph.graph_export(graph, "dot"))
    else:
        _emit(tgraph.graph_json_obj(graph, include_edges=args.edges))
    return 0


def cmd_search(args) -> int:
    solutions = search.search(args.p)
    _emit({"p": args.p, "solutions": [s.to_json_obj() for s in solutions]})
    return 0


def cmd_feq_check(args) -> int:
    if args.fixture == "new-tower":
        holds, constant = series.poly_feq_check(args.p)
    else:
        ctx = _graph_ctx(args)
        bound = fixtures.load_fixture(args.fixture, args.p, ctx=ctx, check=False)
        graph = tgraph.TowerGraph(bound.f, bound.g, ctx)
        chi = fixtures.chi_from_graph(graph)
        holds, constant = series.functional_equation_holds(
            [c.coeffs[0] for c in chi.coeffs], [1, 0, 1], [0, 2], args.p)
    _emit({"fixture": args.fixture, "p": args.p, "holds": holds,
           "constant": None if constant is None else str(constant)})
    return 0 if holds else 1


def cmd_genus(args) -> int:
    if args.p:
        ctx = _graph_ctx(args)
        bound = fixtures.load_fixture("new-tower", args.p, ctx=ctx, check=False)
        graph = tgraph.TowerGraph(bound.f, bound.g, ctx)
        rows = genus.asymptotic_report(args.p, args.n_max, graph)
        _emit({"p": args.p, "ext": ctx.r,
               "note": "splitting over this extension degree is experimental",
               "rows": [r.to_json_obj() for r in rows]})
    else:
        rows = [{"n": n,
                 "delta": genus.delta(n) if n >= 2 else None,
                 "genus": genus.genus_closed(n)}
                for n in range(1, args.n_max + 1)]
        _emit({"rows": rows})
    return 0


def cmd_verify(args) -> int:
    report = fixtures.verify_fixture(args.fixture, args.p, ext=args.ext,
                                     modulus=_parse_modulus(args.modulus))
    _emit(report)
    return 0 if report["ok"] else 1


def cmd_conjugate(args) -> int:
    report = fixtures.conjugate_check(args.p)
    _emit(report)
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rectower",
        description="recursive towers over finite fields: graphs, splitting "
                    "certificates, series identities, and equation search")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        s = sub.add_parser(name, **kwargs)
        s.set_defaults(func=func)
        return s

    s = add("series", cmd_series, help="integer coefficients a_n and their mod-p truncations")
    s.add_argument("--n", type=int, required=True, help="number of terms")
    s.add_argument("--p", type=int, default=None, help="also print H_p for this prime")
    s.add_argument("--plain", action="store_true", help="plain comma-separated list")

    s = add("chi", cmd_chi, help="splitting polynomial from the graph over F_{p^ext}")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--fixture", default="new-tower", choices=sorted(fixtures.FIXTURES))
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--modulus", default=None,
                   help="extension modulus, ascending integer coefficients, e.g. 2,-1,1")

    s = add("graph", cmd_graph, help="build and export the correspondence graph")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--fixture", default="new-tower", choices=sorted(fixtures.FIXTURES))
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--modulus", default=None)
    s.add_argument("--dot", action="store_true", help="DOT output instead of JSON")
    s.add_argument("--edges", action="store_true", help="include the edge list in JSON")

    s = add("search", cmd_search, help="scan P^5(F_p) for towers with the prescribed singular graph")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--json", action="store_true", help="JSON output (the default)")

    s = add("feq-check", cmd_feq_check, help="polynomial functional equation check")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--fixture", default="new-tower", choices=["new-tower", "gs-tower"])
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--modulus", default=None)

    s = add("series-check", cmd_series_check, help="series-level identities at a given order")
    s.add_argument("--order", type=int, default=60)
    s.add_argument("--p", type=int, default=5)

    s = add("genus", cmd_genus, help="genus table, optionally with point-count ratios")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--modulus", default=None)

    s = add("verify", cmd_verify, help="run the full fixture pipeline")
    s.add_argument("--fixture", required=True, choices=sorted(fixtures.FIXTURES))
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ext", type=int, default=2)
    s.add_argument("--modulus", default=None)

    s = add("conjugate", cmd_conjugate, help="check the modular model conjugacy")
    s.add_argument("--p", type=int, required=True)

    return parser


def cmd_series_check(args) -> int:
    n = args.order
    out = {
        "order": n,
        "hypergeometric_identity": series.hypergeom_identity_check(n),
        "ode": series.ode_check(n),
        "series_functional_equation": series.series_feq_check(n),
        "li_trick": series.li_trick_check(args.p, n),
        "p": args.p,
    }
    _emit(out)
    return 0 if all(v for k, v in out.items() if isinstance(v, bool)) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
