"""Command-line front end. Every result is one JSON object per line.

Exit status: 0 on success, 1 when the input is well-formed but the operation
fails (bad expression, invalid diagram, missing file), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .census import CensusError, load_census, verify_census
from .codec import read_diagram, serialize_diagram
from .constructions import close, tangle_diagram, theta_from_knotoid
from .diagram import DiagramError, closed_strand_count
from .expr import ClosureExpr, ExprError, format_expr, parse_expr
from .invariants import (
    InvariantError,
    determinant,
    identify_knot,
    jones,
    knot_table,
    load_table,
    writhe_normalized_bracket,
    yamada,
)
from .search import SearchBudget, arc_change_distance, certify, diagram_type, f_distance, rtr_scan, u1_scan
from .tangles import ParameterError, closure, connectivity_class, evaluate, is_integral


@dataclass
class RunConfig:
    budget: SearchBudget = field(default_factory=SearchBudget)
    fixture_dir: Path | None = None
    table_path: Path | None = None
    output: TextIO | None = None
    seed: int = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _options() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("search budget and configuration")
    d = SearchBudget()
    g.add_argument("--max-crossings", type=int, default=d.max_crossings)
    g.add_argument("--max-depth", type=int, default=d.max_depth)
    g.add_argument("--max-states", type=int, default=d.max_states)
    g.add_argument("--fraction-bound", type=int, default=d.fraction_bound)
    g.add_argument("--framing-bound", type=int, default=d.framing_bound)
    g.add_argument("--fixture-dir", type=Path, default=None, help="directory for census constructions")
    g.add_argument("--table", type=Path, default=None, help="knot table used for identification")
    g.add_argument("--output", type=Path, default=None, help="write JSON lines here instead of stdout")
    g.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _options()
    parser = _Parser(prog="thetatangle", description="Rational tangles, theta-curves and knotoids.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("eval", parents=[common], help="Conway number and closure of a tangle expression")
    p.add_argument("expr")
    p = sub.add_parser("build", parents=[common], help="write the diagram of a tangle expression")
    p.add_argument("expr")
    p.add_argument("-o", dest="file", type=Path, default=None)
    p = sub.add_parser("invariant", parents=[common], help="Yamada or Jones polynomial of a diagram file")
    p.add_argument("which", choices=["yamada", "jones"])
    p.add_argument("file", type=Path)
    p = sub.add_parser("certify", parents=[common], help="decide triviality within budget")
    p.add_argument("file", type=Path)
    p = sub.add_parser("scan", parents=[common], help="single-operation unknotting scans")
    p.add_argument("which", choices=["u1", "rtr"])
    p.add_argument("file", type=Path)
    p = sub.add_parser("knotoid", parents=[common], help="theta-curve of a knotoid or its f-distance")
    p.add_argument("which", choices=["theta", "fdist"])
    p.add_argument("file", type=Path)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("-o", dest="out_file", type=Path, default=None)
    p = sub.add_parser("census", parents=[common], help="census consistency check")
    p.add_argument("which", choices=["verify"])
    p.add_argument("file", type=Path)
    return parser


def _poly(v) -> list[list[int]]:
    return [[e, c] for e, c in v.terms]


def _table(config: RunConfig):
    return load_table(config.table_path) if config.table_path else knot_table()


# ---------------------------------------------------------------- commands

def cmd_eval(args, config):
    node = parse_expr(args.expr)
    out = {"expr": format_expr(node)}
    inner = node.child if isinstance(node, ClosureExpr) else node
    value = evaluate(inner)
    out["conway"] = None if value is None else str(value)
    out["integral"] = is_integral(inner)
    out["connectivity"] = None if value is None else connectivity_class(value).value
    if isinstance(node, ClosureExpr):
        if value is not None:
            tb = closure(node.kind, value)
            out["twobridge"] = {"p": tb.p, "q": tb.q, "name": str(tb), "components": tb.components}
        else:
            d = close(node.kind, tangle_diagram(inner))
            out["twobridge"] = None
            out["components"] = closed_strand_count(d) + d.loops
            out["normalized_bracket"] = _poly(writhe_normalized_bracket(d))
    yield out


def cmd_build(args, config):
    node = parse_expr(args.expr)
    if isinstance(node, ClosureExpr):
        d = close(node.kind, tangle_diagram(node.child))
    else:
        d = tangle_diagram(node)
    d = d.replace(label=format_expr(node).replace(" ", ""))
    text = serialize_diagram(d)
    out = {"expr": format_expr(node), "crossings": d.n_crossings(), "type": diagram_type(d)}
    if args.file is None:
        out["diagram"] = text
    else:
        args.file.write_text(text, encoding="utf-8")
        out["file"] = str(args.file)
    yield out


def cmd_invariant(args, config):
    d = read_diagram(args.file)
    out = {"file": str(args.file), "invariant": args.which, "type": diagram_type(d)}
    if args.which == "yamada":
        v = yamada(d)
        out.update(variable="A", value=v.format("A"), terms=_poly(v))
    else:
        if diagram_type(d) != "link":
            raise InvariantError("the Jones polynomial needs a knot or link diagram")
        comps = closed_strand_count(d) + d.loops
        if comps == 1:
            v = jones(d)
            out.update(variable="t", value=v.format("t"), terms=_poly(v), determinant=determinant(v))
            rec = identify_knot(d, _table(config))
            out["identified"] = None if rec is None else rec.name
        else:
            v = writhe_normalized_bracket(d)
            out.update(variable="A", value=v.format("A"), terms=_poly(v), identified=None)
        out["components"] = comps
    yield out


def cmd_certify(args, config):
    d = read_diagram(args.file)
    v = certify(d, config.budget)
    out = {"file": str(args.file), "type": diagram_type(d), "crossings": d.n_crossings()}
    out.update(verdict=v.status, witness_length=len(v.witness), explored=v.explored)
    out["witness"] = [m.describe() for m in v.witness]
    out["certificate"] = v.certificate
    yield out


def cmd_scan(args, config):
    d = read_diagram(args.file)
    hits = u1_scan(d, config.budget) if args.which == "u1" else rtr_scan(d, budget=config.budget)
    out = {"file": str(args.file), "scan": args.which, "crossings": d.n_crossings()}
    out["hits"] = [h.describe() for h in hits]
    out["note"] = "one witness per hit" if hits else "no witness within budget"
    yield out


def cmd_knotoid(args, config):
    k = read_diagram(args.file)
    if diagram_type(k) != "knotoid":
        raise DiagramError("expected a knotoid diagram: two endpoints, crossings only")
    if args.which == "theta":
        th = theta_from_knotoid(k)
        text = serialize_diagram(th)
        out = {"file": str(args.file), "crossings": th.n_crossings()}
        if args.out_file is None:
            out["diagram"] = text
        else:
            args.out_file.write_text(text, encoding="utf-8")
            out["theta_file"] = str(args.out_file)
        yield out
    else:
        f = f_distance(k, args.bound, config.budget)
        a = arc_change_distance(k, args.bound, config.budget)
        yield {"file": str(args.file), "bound": args.bound, "f_distance": f, "arc_change_distance": a}


def cmd_census(args, config):
    entries = load_census(args.file)
    fixture_dir = config.fixture_dir or args.file.parent
    yield from verify_census(entries, fixture_dir, config.budget)


COMMANDS = {
    "eval": cmd_eval,
    "build": cmd_build,
    "invariant": cmd_invariant,
    "certify": cmd_certify,
    "scan": cmd_scan,
    "knotoid": cmd_knotoid,
    "census": cmd_census,
}

DOMAIN_ERRORS = (ExprError, DiagramError, InvariantError, CensusError, ParameterError, OSError, ValueError)


def _emit(obj, stream):
    stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n")


def run(argv, config: RunConfig | None = None) -> int:
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, err)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    budget = SearchBudget(args.max_crossings, args.max_depth, args.max_states, args.fraction_bound, args.framing_bound)
    if min(budget.describe().values()) <= 0:
        _emit({"error": "usage", "message": "budget fields must be positive"}, err)
        return 2
    if config is None:
        config = RunConfig(budget, args.fixture_dir, args.table, None, args.seed)
    stream, opened = config.output, None
    try:
        if stream is None and args.output is not None:
            opened = stream = open(args.output, "w", encoding="utf-8")
        if stream is None:
            stream = sys.stdout
        for obj in COMMANDS[args.command](args, config):
            _emit(obj, stream)
        return 0
    except DOMAIN_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, err)
        return 1
    finally:
        if opened is not None:
            opened.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))
