"""Command-line front end: draw, verify, generate, optimize, probe, render.

Subcommands read stdin and write stdout when paths are omitted, so they
compose into pipelines such as

    ttdraw gen-lb --k 1 | ttdraw draw --epsilon 0.1 | ttdraw verify --max-local 4.1

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 numerical collapse.
"""

from __future__ import annotations

import argparse
import json
import sys

from .drawing import DrawConfig, Drawing, draw_two_tree, dumps_drawing
from .errors import NumericalCollapse, TTDrawError
from .graphs import (
    dumps_graph,
    generate_lower_bound_family,
    graph_from_json,
    random_two_tree,
)
from .layering import components_to_json, compute_layers, extract_tree_components
from .optimize import SearchConfig, minimize_ratio, probe_growth
from .render import drawing_to_svg
from .verify import verification_report

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_COLLAPSE = 3


def _read_json(path: str | None) -> dict:
    if path is None or path == "-":
        data = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            data = fh.read()
    return json.loads(data)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ttdraw",
        description="Planar drawings of 2-trees with bounded local edge-length ratio",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen-lb", help="generate a lower-bound family graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("random", help="generate a random 2-tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("draw", help="draw a 2-tree (graph JSON -> drawing JSON)")
    p.add_argument("-i", "--input", default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify", help="check planarity and measure ratios")
    p.add_argument("-d", "--drawing", default=None, help="drawing JSON (default stdin)")
    p.add_argument("-g", "--graph", default=None, help="optional graph JSON")
    p.add_argument("--max-local", type=float, default=None)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("optimize", help="anneal a drawing toward a lower ratio")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-d", "--drawing", default=None, help="initial drawing (default: draw)")
    p.add_argument("--objective", choices=["global_ratio", "local_ratio"],
                   default="global_ratio")
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--trace", default=None, help="CSV path for the best-ratio trace")

    p = sub.add_parser("probe", help="best-found ratio trend over the family")
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("render", help="drawing JSON -> SVG")
    p.add_argument("-d", "--drawing", default=None)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("inspect", help="dump layers and tree-components")
    p.add_argument("-i", "--input", default=None)
    p.add_argument("-o", "--output", default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except NumericalCollapse as exc:
        print(f"numerical collapse: {exc}", file=sys.stderr)
        return EXIT_COLLAPSE
    except TTDrawError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace) -> int:
    if args.cmd == "gen-lb":
        g = generate_lower_bound_family(args.k)
        _write_text(args.output, dumps_graph(g) + "\n")
        return EXIT_OK

    if args.cmd == "random":
        t = random_two_tree(args.n, args.seed)
        _write_text(args.output, dumps_graph(t) + "\n")
        return EXIT_OK

    if args.cmd == "draw":
        t = graph_from_json(_read_json(args.input))
        d = draw_two_tree(t, DrawConfig(epsilon=args.epsilon))
        _write_text(args.output, dumps_drawing(d) + "\n")
        return EXIT_OK

    if args.cmd == "verify":
        d = Drawing.from_json(_read_json(args.drawing))
        t = graph_from_json(_read_json(args.graph)) if args.graph else None
        report = verification_report(d, t, args.max_local)
        _write_text(args.output, json.dumps(report, sort_keys=True) + "\n")
        ok = report["planar"] and report.get("within_bound", True)
        return EXIT_OK if ok else EXIT_VERIFY

    if args.cmd == "optimize":
        t = graph_from_json(_read_json(args.graph))
        if args.drawing:
            init = Drawing.from_json(_read_json(args.drawing))
        else:
            init = draw_two_tree(t, DrawConfig(epsilon=args.epsilon))
        cfg = SearchConfig(
            objective=args.objective,
            budget=args.budget,
            seed=args.seed,
            restarts=args.restarts,
        )
        res = minimize_ratio(t, init, cfg)
        _write_text(args.output, dumps_drawing(res.best) + "\n")
        if args.trace:
            rows = "\n".join(f"{i},{r!r}" for i, r in enumerate(res.trace))
            _write_text(args.trace, "epoch,best_ratio\n" + rows + "\n")
        print(f"best {args.objective}: {res.ratio!r}", file=sys.stderr)
        return EXIT_OK

    if args.cmd == "probe":
        cfg = SearchConfig(budget=args.budget, seed=args.seed, restarts=args.restarts)
        rows = probe_growth(args.k_max, cfg)
        text = "k,best_ratio\n" + "\n".join(f"{k},{r!r}" for k, r in rows) + "\n"
        _write_text(args.output, text)
        return EXIT_OK

    if args.cmd == "render":
        d = Drawing.from_json(_read_json(args.drawing))
        _write_text(args.output, drawing_to_svg(d, width=args.width))
        return EXIT_OK

    if args.cmd == "inspect":
        t = graph_from_json(_read_json(args.input))
        lay = compute_layers(t)
        comps = extract_tree_components(t, lay)
        dump = {
            "layers": [list(layer) for layer in lay.layers],
            "components": components_to_json(comps),
        }
        _write_text(args.output, json.dumps(dump, sort_keys=True) + "\n")
        return EXIT_OK

    raise AssertionError(f"unhandled subcommand {args.cmd}")


if __name__ == "__main__":
    sys.exit(main())
