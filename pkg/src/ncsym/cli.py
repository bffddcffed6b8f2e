"""Command-line front end: ``ncsym <command> [graph flags] [options]``.

Every flag can also be set through an environment variable named after it,
e.g. ``NCSYM_FORMAT=json`` or ``NCSYM_GUARD_DEGREE=8``; flags win.

Exit codes: 0 success, 1 verification failure or nothing found,
2 usage or parse error, 3 guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from . import chromatic, config, graphs
from .algebra import Basis, NCExpr, act, amalgamate
from .config import Guards, GuardExceeded
from .graphs import Graph, parse_graph
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

FAMILIES = ("path", "cycle", "complete", "complete-minus-edge", "empty", "star",
            "chain", "diamond", "indifference")


@dataclass(frozen=True)
class RunConfig:
    guards: Guards
    format: str = "text"
    seed: int = 0
    budget: int | None = None

    def __post_init__(self):
        if self.format not in ("text", "json"):
            raise ValueError(f"format must be text or json, not {self.format!r}")
        for f in fields(self.guards):
            if getattr(self.guards, f.name) <= 0:
                raise ValueError(f"guard {f.name} must be positive")


class UsageError(ValueError):
    pass


def _env(name: str, default=None):
    return os.environ.get("NCSYM_" + name.upper().replace("-", "_"), default)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _intervals(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.replace(" ", "").split(","):
        a, _, b = chunk.partition("-")
        out.append((int(a), int(b)))
    return out


def family_graph(name: str, d: int | None = None, alpha: str | None = None,
                 intervals: str | None = None) -> Graph:
    def need_d() -> int:
        if d is None:
            raise UsageError(f"family {name} needs --d")
        return d

    if name == "path":
        return graphs.path(need_d())
    if name == "cycle":
        return graphs.cycle(need_d())
    if name == "complete":
        return graphs.complete(need_d())
    if name == "complete-minus-edge":
        return graphs.complete_minus_edge(need_d())
    if name == "empty":
        return graphs.empty(need_d())
    if name == "star":
        return graphs.star(need_d())
    if name == "diamond":
        return graphs.diamond()
    if name == "chain":
        if not alpha:
            raise UsageError("family chain needs --alpha, e.g. --alpha 3,2,2")
        return graphs.k_alpha_chain(_int_list(alpha))
    if name == "indifference":
        if not intervals:
            raise UsageError("family indifference needs --intervals, e.g. --intervals 1-3,2-4")
        return graphs.indifference(_intervals(intervals), d)
    raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def load_graph(args) -> Graph:
    if args.graph and args.family:
        raise UsageError("give either --graph or --family, not both")
    if args.graph:
        text = sys.stdin.read() if args.graph == "-" else open(args.graph).read()
        return parse_graph(text)
    if args.family:
        return family_graph(args.family, args.d, args.alpha, args.intervals)
    raise UsageError("a graph is required: --graph FILE or --family NAME")


def _emit(cfg: RunConfig, text: str, data) -> None:
    if cfg.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


# commands ------------------------------------------------------------------------

def cmd_expand(args, cfg: RunConfig) -> int:
    G = load_graph(args)
    res = chromatic.compute_y(G, Basis.parse(args.basis), args.route)
    data = res.to_json()
    lines = [str(res.expr)]
    status = EXIT_OK
    if args.check_all:
        agree = chromatic.routes_agree(G, edge_orders=3)
        data["routes_agree"] = agree
        lines.append("routes agree" if agree else "routes DISAGREE")
        status = EXIT_OK if agree else EXIT_FAIL
    _emit(cfg, "\n".join(lines), data)
    return status


def cmd_positivity(args, cfg: RunConfig) -> int:
    G = load_graph(args)
    if args.mod_index is not None:
        if not 1 <= args.mod_index <= G.d:
            raise UsageError(f"--mod-index must lie in 1..{G.d}")
        delta, i, tried = None, args.mod_index, 1
        found = chromatic.is_e_class_positive(G, i)
    else:
        res = chromatic.search_positive_labeling(G, cfg.budget)
        found, tried = res.witness is not None, res.tried
        delta, i = res.witness if found else (None, G.d)
    classes = chromatic.e_class_expansion(G, i) if delta is None else \
        amalgamate(act(delta, chromatic.y_e(G)), i)
    rows = [f"  {('e(' + ','.join(map(str, lam)) + '|' + str(b) + ')'):<20} {c}"
            for (lam, b), c in classes.items()]
    relabel = "" if delta is None or list(delta.images) == list(range(1, G.d + 1)) \
        else f" after relabeling {list(delta.images)}"
    verdict = (f"positive mod {i}{relabel}" if found
               else f"no positive labeling found (tried {tried})")
    data = {"graph": G.to_json(), "classes": classes.to_json(), "positive": found,
            "marked": i, "relabeling": list(delta.images) if delta else None, "tried": tried}
    _emit(cfg, "\n".join([f"classes mod {i}:"] + rows + [verdict]), data)
    return EXIT_OK if found else EXIT_FAIL


def cmd_orientations(args, cfg: RunConfig) -> int:
    G = load_graph(args)
    v0 = args.vertex
    if not 1 <= v0 <= G.d:
        raise UsageError(f"--vertex must lie in 1..{G.d}")
    n_acyclic = sum(1 for _ in graphs.acyclic_orientations(G))
    unique = graphs.count_unique_sink(G, v0)
    via_e = chromatic.unique_sink_count_via_e(G)
    dist = graphs.sink_distribution(G)
    dist_e = chromatic.sink_distribution_via_e(G)
    text = f"acyclic: {n_acyclic}; unique-sink@v{v0}: {unique}; via-e: {via_e}"
    text += "\nsinks: " + ", ".join(f"{j}: {c}" for j, c in sorted(dist.items()))
    text += "\nsinks via e: " + ", ".join(f"{j}: {c}" for j, c in sorted(dist_e.items()))
    data = {"acyclic": n_acyclic, "vertex": v0, "unique_sink": unique, "unique_sink_via_e": str(via_e),
            "sink_distribution": {str(j): c for j, c in dist.items()},
            "sink_distribution_via_e": {str(j): str(c) for j, c in dist_e.items()}}
    _emit(cfg, text, data)
    return EXIT_OK if via_e == unique and dist == dist_e else EXIT_FAIL


def cmd_chromatic(args, cfg: RunConfig) -> int:
    G = load_graph(args)
    poly = chromatic.chromatic_polynomial(G)
    coeffs = [str(poly.coefficient(i)) for i in range(G.d + 1)]
    text = str(poly) + "\n" + "  ".join(f"a_{i}={c}" for i, c in enumerate(coeffs))
    _emit(cfg, text, {"polynomial": str(poly), "coefficients": coeffs})
    return EXIT_OK


def cmd_reconstruct(args, cfg: RunConfig) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    try:
        y = NCExpr.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read expansion: {exc}") from exc
    try:
        G = chromatic.reconstruct_from_y(y)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(cfg, G.to_text().rstrip(), G.to_json())
    return EXIT_OK


def cmd_trees(args, cfg: RunConfig) -> int:
    if args.d is None:
        raise UsageError("trees needs --d")
    r = chromatic.tree_experiment(args.d, with_classes=args.classes)
    lines = [f"trees on {r.d} vertices: {len(r.trees)}",
             f"X distinct: {r.x_distinct}" + (f" collisions {r.x_collisions}" if r.x_collisions else ""),
             f"Y distinct: {r.y_distinct}",
             f"reconstructed: {r.reconstructed}"]
    if r.class_collisions is not None:
        lines.append(f"class-signature collisions: {r.class_collisions or 'none'}")
    _emit(cfg, "\n".join(lines), r.to_json())
    return EXIT_OK if r.x_distinct and r.y_distinct and r.reconstructed else EXIT_FAIL


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all")
    results = run_suite(args.suite, cfg.seed)
    failed = [n for n, ok in results if not ok]
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in results)
    text += f"\n{len(results) - len(failed)}/{len(results)} passed"
    _emit(cfg, text, {"suite": args.suite, "results": [{"check": n, "passed": ok} for n, ok in results]})
    return EXIT_FAIL if failed else EXIT_OK


# parser -----------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("graph")
    g.add_argument("--graph", default=_env("graph"), help="graph file (JSON or text format); '-' for stdin")
    g.add_argument("--family", default=_env("family"), choices=FAMILIES)
    g.add_argument("--d", type=int, default=_env("d"))
    g.add_argument("--alpha", default=_env("alpha"), help="clique sizes for --family chain, e.g. 3,2,2")
    g.add_argument("--intervals", default=_env("intervals"), help="for --family indifference, e.g. 1-3,2-4")
    o = p.add_argument_group("options")
    o.add_argument("--format", default=_env("format", "text"), choices=("text", "json"))
    o.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    o.add_argument("--budget", type=int, default=_env("budget"))
    defaults = Guards()
    for f in fields(Guards):
        o.add_argument(f"--guard-{f.name}", type=int, default=int(_env(f"guard_{f.name}", getattr(defaults, f.name))))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="ncsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="Y_G in a chosen basis")
    p.add_argument("--basis", default=_env("basis", "m"), choices=("m", "p", "e"))
    p.add_argument("--route", default=_env("route", "delcon"), choices=chromatic.ROUTES)
    p.add_argument("--check-all", action="store_true", help="cross-check all four routes")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("positivity", parents=[common], help="congruence-class e-expansion and verdict")
    p.add_argument("--mod-index", type=int, default=_env("mod_index"))
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("orientations", parents=[common], help="acyclic orientations and sinks")
    p.add_argument("--vertex", type=int, default=int(_env("vertex", 1)))
    p.set_defaults(func=cmd_orientations)

    p = sub.add_parser("chromatic", parents=[common], help="chromatic polynomial")
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("reconstruct", parents=[common], help="recover a simple graph from a Y expansion file")
    p.add_argument("file", help="expansion JSON as written by 'expand --format json'; '-' for stdin")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("trees", parents=[common], help="tree-distinguishing experiment")
    p.add_argument("--classes", action="store_true", help="also compare congruence-class signatures")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        budget = None if args.budget is None else int(args.budget)
        d = None if args.d is None else int(args.d)
        args.d = d
        if getattr(args, "mod_index", None) is not None:
            args.mod_index = int(args.mod_index)
        guards = Guards(**{f.name: getattr(args, f"guard_{f.name}") for f in fields(Guards)})
        cfg = RunConfig(guards, args.format, args.seed, budget)
        with config.use_guards(**{f.name: getattr(guards, f.name) for f in fields(Guards)}):
            return args.func(args, cfg)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
