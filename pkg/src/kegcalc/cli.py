"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (bad input, invalid graph,
composite knot, negative answer for ``equiv``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .codec import ParseError, emit_keg, parse_keg, parse_tree
from .engine import Caps, Engine, MAX_BUDGET
from .keg import EmbeddingError, KnotEulerianGraph, component_count, faces, validate
from .plumbing import NotAKnot, tree_to_graph, tree_to_recipe
from .projection import emit_gauss, from_projection, parse_gauss, to_projection
from .reducer import canonical_key, equivalent, reduce
from .solver import CompositeInput, crosscap, emit_recipe, surface_recipe


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e.strerror}") from None


def _load_graph(path: str) -> KnotEulerianGraph:
    """A KEG document, or a Gauss code when the text has no KEG header."""
    text = _read(path)
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if body and body[0].split() == ["keg", "1"]:
        g = parse_keg(text)
        problems = validate(g)
        if problems:
            raise DomainError(f"{path}: " + "; ".join(problems))
        return g
    return from_projection(parse_gauss(" ".join(body)))


def _caps(args) -> Caps:
    if args.budget > MAX_BUDGET:
        raise DomainError(f"--budget is capped at {MAX_BUDGET}")
    return Caps(budget=args.budget, max_level=args.max_level, max_crossings=args.max_crossings)


def _table_dir(args) -> Path:
    return Path(args.table_dir or os.environ.get("CROSSCAP_TABLE_DIR") or "crosscap-table")


# --- subcommands ----------------------------------------------------------


def cmd_validate(args) -> int:
    g = parse_keg(_read(args.file))
    problems = validate(g)
    if problems:
        for p in problems:
            print(p)
        return 1
    n = component_count(g)
    try:
        f = len(faces(g))
    except EmbeddingError as e:
        print(f"invalid: {e}")
        return 1
    print(f"valid, {n} component{'s' if n != 1 else ''}, {f} faces")
    return 0


def cmd_reduce(args) -> int:
    g = reduce(_load_graph(args.file))
    sys.stdout.write(emit_keg(g))
    print(f"# key {canonical_key(g, args.mirror)}")
    return 0


def cmd_equiv(args) -> int:
    same = equivalent(_load_graph(args.a), _load_graph(args.b), args.mirror)
    print("equivalent" if same else "not equivalent")
    return 0 if same else 1


def cmd_crosscap(args) -> int:
    g = _load_graph(args.file)
    r = crosscap(g, _caps(args), jobs=args.jobs)
    if args.tsv:
        print("value\tstatus\tbudget\tmax_level")
        print(f"{'' if r.value is None else r.value}\t{r.status}\t{args.budget}\t{args.max_level}")
    else:
        print(r)
    return 0


def cmd_generate(args) -> int:
    caps = _caps(args)
    engine = Engine(caps, jobs=args.jobs)
    table = engine.extend(args.level)
    out = _table_dir(args)
    table.save(out)
    print("level\tprime\tcomposite")
    for lvl in range(table.levels_done + 1):
        everything = table.at_level(lvl, prime_only=False)
        prime = sum(1 for r in everything if not r.composite)
        print(f"{lvl}\t{prime}\t{len(everything) - prime}")
    print(f"# {engine.diagrams} diagrams, table written to {out}")
    if table.incomplete:
        print(f"# incomplete: {table.incomplete}")
    return 0


def cmd_surface(args) -> int:
    if args.tree:
        recipe = tree_to_recipe(parse_tree(args.file))
    else:
        r = crosscap(_load_graph(args.file), _caps(args), jobs=args.jobs)
        if r.witness is None:
            raise DomainError(f"no derivation found within the caps ({r.status})")
        print(f"# {r}")
        recipe = surface_recipe(r)
    sys.stdout.write(emit_recipe(recipe) or "# disk\n")
    return 0


def cmd_from_gauss(args) -> int:
    text = args.code if args.code is not None else _read(args.file)
    sys.stdout.write(emit_keg(from_projection(parse_gauss(text))))
    return 0


def cmd_to_gauss(args) -> int:
    print(emit_gauss(to_projection(_load_graph(args.file)), bare=args.bare))
    return 0


def cmd_from_tree(args) -> int:
    sys.stdout.write(emit_keg(tree_to_graph(parse_tree(args.tree))))
    return 0


def render_dot(g: KnotEulerianGraph) -> str:
    lines = ["digraph keg {", "  node [shape=box];"]
    for v in g.vertices:
        label = v.parity if v.real else "empty"
        lines.append(f'  "{v.id}" [label="{v.id}: {label}"];')
    for e in g.edges:
        t, h = e.tail[1][0] or "none", e.head[1][0] or "none"
        lines.append(f'  "{e.tail[0]}" -> "{e.head[0]}" [label="{t}→{h}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_render(args) -> int:
    sys.stdout.write(render_dot(_load_graph(args.file)))
    return 0


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kegcalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def search_flags(p):
        p.add_argument("--budget", type=int, default=4, help="curl budget of the seeds")
        p.add_argument("--max-level", type=int, default=3)
        p.add_argument("--max-crossings", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--table-dir", default=None)

    p = sub.add_parser("validate", help="check a KEG document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("reduce", help="print the reduced graph and its key")
    p.add_argument("file")
    p.add_argument("--mirror", action="store_true", help="identify mirror images")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("equiv", help="compare two graphs up to reduction")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mirror", action="store_true")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("crosscap", help="crosscap number by Move-1 search")
    p.add_argument("file")
    p.add_argument("--tsv", action="store_true")
    search_flags(p)
    p.set_defaults(fn=cmd_crosscap)

    p = sub.add_parser("generate", help="build the class table up to a level")
    p.add_argument("level", type=int)
    search_flags(p)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("surface", help="spanning-surface recipe")
    p.add_argument("file", help="graph file, or a tree with --tree")
    p.add_argument("--tree", action="store_true", help="read FILE as a plumbing tree")
    search_flags(p)
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("from-gauss", help="graph of a Gauss code")
    p.add_argument("code", nargs="?")
    p.add_argument("--file", default="-")
    p.set_defaults(fn=cmd_from_gauss)

    p = sub.add_parser("to-gauss", help="Gauss code of a representative projection")
    p.add_argument("file")
    p.add_argument("--bare", action="store_true")
    p.set_defaults(fn=cmd_to_gauss)

    p = sub.add_parser("from-tree", help="graph of a plumbing tree")
    p.add_argument("tree")
    p.set_defaults(fn=cmd_from_tree)

    p = sub.add_parser("render", help="DOT rendering of a graph")
    p.add_argument("file")
    p.set_defaults(fn=cmd_render)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, ParseError, CompositeInput, NotAKnot, EmbeddingError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
