"""Command-line front end.

Exit status: 0 success, 1 curve rejected by validation, 2 usage error
(bad flags, unparsable expression, unsupported format), 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import render
from .jetgraph import build_graph, expand_jsc, jsc_walk
from .lattice import sc_continued_fraction, staircase_walk
from .poly import PolyParseError, parse
from .polygon import (
    CurveData,
    ValidationError,
    all_rays_below_diagonal,
    format_univariate,
    normalize,
    validate,
)
from .series import (
    enumerate_series,
    poles,
    product_form_cone_pieces,
    series_G,
    series_H,
    series_H_pieces,
    series_R,
    series_R_pieces,
    truncate,
)
from .topo import invariant, same_topological_type

SCHEMA = "newtonjet.report/1"
FORMATS = ("text", "json", "dot", "tikz")
MAX_ORDER = 10_000
ORACLE_MISMATCH = 3


class UsageError(Exception):
    pass


@dataclass
class AnalysisReport:
    """Everything a command computed, in JSON-ready form."""

    command: str
    input: list[str] = field(default_factory=list)
    swapped: bool | None = None
    polygon: dict | None = None
    rays: list | None = None
    walk: dict | None = None
    components: dict | None = None
    graph: dict | None = None
    staircase: dict | None = None
    invariant: dict | None = None
    series: dict | None = None
    poles: dict | None = None
    oracle: dict | None = None
    verdict: str | None = None

    def to_json(self) -> dict:
        out = {"schema": SCHEMA}
        out.update({k: v for k, v in asdict(self).items() if v is not None})
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AnalysisReport":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**{k: v for k, v in data.items() if k != "schema"})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


# -- argument helpers ----------------------------------------------------------

def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"must lie in 1..{MAX_ORDER}")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def read_expression(arg: str) -> str:
    """The argument itself, or the contents of the file it names (``#`` comments allowed)."""
    path = Path(arg)
    if path.is_file():
        lines = [ln.split("#", 1)[0].strip() for ln in path.read_text().splitlines()]
        return " ".join(ln for ln in lines if ln)
    return arg


def load_curve(arg: str) -> tuple[str, CurveData]:
    text = read_expression(arg)
    try:
        f = parse(text)
    except PolyParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc
    return text, validate(f)


def _polygon_json(curve: CurveData) -> dict:
    return curve.polygon.to_json()


def _rays_json(curve: CurveData) -> list:
    return [r.to_json() for r in curve.rays]


def _need(fmt: str, allowed: tuple[str, ...], command: str) -> None:
    if fmt not in allowed:
        raise UsageError(f"format {fmt} is not available for {command}")


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "check")
    text, curve = load_curve(args.expr)
    rep = AnalysisReport(
        "check",
        [text],
        swapped=all_rays_below_diagonal(curve),
        polygon=_polygon_json(curve),
        rays=_rays_json(curve),
        verdict="accepted",
    )
    out = (
        f"accepted: {curve.poly}\n"
        f"Newton non-degenerate, singular at the origin, {curve.t} ray(s), "
        f"{sum(r.branch_count for r in curve.rays)} branch(es)\n"
    )
    return rep, out


def cmd_polygon(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "polygon")
    text, curve = load_curve(args.expr)
    swap = all_rays_below_diagonal(curve)
    rep = AnalysisReport(
        "polygon", [text], swapped=swap, polygon=_polygon_json(curve), rays=_rays_json(curve)
    )
    lines = ["vertices: " + " ".join(f"({x},{y})" for x, y in curve.vertices)]
    for r in curve.rays:
        p, q = r.primitive
        lines.append(
            f"ray {r.index}: primitive ({p},{q}), branches {r.branch_count}, "
            f"nu {r.nu_on_ray}, face polynomial {format_univariate(r.face_poly)}"
        )
    lines.append("normalization: " + ("swap x <-> y" if swap else "none"))
    return rep, "\n".join(lines) + "\n"


def cmd_walk(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json", "tikz"), "walk")
    p, q = args.p, args.q
    flip = q < p
    a, b = (q, p) if flip else (p, q)
    try:
        sc = sc_continued_fraction(a, b)
        walk = staircase_walk(a, b, (args.base * a, args.base * b))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if flip:
        from .lattice import Step, Walk

        swap = {Step.H: Step.V, Step.V: Step.H}
        walk = Walk(walk.start.swapped(), tuple(swap[s] for s in walk.steps))
    data = walk.to_json()
    data.update(ray=[p, q], digits=list(sc.digits), remainders=list(sc.remainders), swapped=flip)
    rep = AnalysisReport("walk", [f"{p} {q}"], walk=data)
    if args.format == "tikz":
        return rep, render.walk_tikz(walk, (p, q))
    return rep, render.walk_text(walk) + "\n"


def cmd_graph(args) -> tuple[AnalysisReport, str]:
    text, curve = load_curve(args.expr)
    m = args.max_level
    if args.route == "walk":
        graph = expand_jsc(jsc_walk(curve, m), m)
    else:
        graph = build_graph(curve, m)
    rep = AnalysisReport(
        "graph",
        [text],
        components={str(k): [list(w) for w in ws] for k, ws in graph.weight_table().items()},
        graph=graph.to_json(),
    )
    if args.format == "dot":
        return rep, render.graph_dot(graph)
    if args.format == "tikz":
        return rep, render.graph_tikz(graph)
    return rep, render.graph_text(graph, show_edges=not args.no_edges)


def cmd_staircase(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json", "tikz"), "staircase")
    text, curve = load_curve(args.expr)
    st = jsc_walk(curve, args.bound)
    rep = AnalysisReport("staircase", [text], staircase=st.to_json())
    if args.format == "tikz":
        return rep, render.staircase_tikz(st)
    return rep, render.staircase_text(st)


def cmd_series(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "series")
    text, curve = load_curve(args.expr)
    norm = normalize(curve)
    g = series_G(norm)
    data = {
        "G": g.to_json(),
        "H": series_H(norm).to_json(),
        "R": series_R(norm).to_json(),
        "H_pieces": [p.to_json() for p in series_H_pieces(norm)],
        "R_pieces": [p.to_json() for p in series_R_pieces(norm)],
        "product_form_cones": [p.to_json() for p in product_form_cone_pieces(norm)],
    }
    lines = [f"G = {g}", f"H = {data['H']['text']}"]
    lines += [f"  {p['name']}: {p['value']['text']}" for p in data["H_pieces"]]
    lines.append(f"R = {data['R']['text']}")
    lines += [f"  {p['name']}: {p['value']['text']}" for p in data["R_pieces"]]
    for p in data["product_form_cones"]:
        lines.append(f"  {p['name']} [{p['note']}]: {p['value']['text']}")
    if args.truncate is not None:
        t = truncate(g, args.truncate)
        data["truncation"] = {"order": args.truncate, "terms": t.to_json(), "text": str(t)}
        lines.append(f"G mod v^{args.truncate + 1} = {t}")
    rep = AnalysisReport("series", [text], swapped=norm.swapped, series=data)
    return rep, "\n".join(lines) + "\n"


def cmd_poles(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "poles")
    text, curve = load_curve(args.expr)
    norm = normalize(curve)
    report = poles(norm)
    rep = AnalysisReport("poles", [text], swapped=norm.swapped, poles=report.to_json())
    lines = [f"reduced denominator: {report.series.denominator_text()}"]
    for fam in report.families:
        if fam.kind == "diagonal":
            head = "diagonal uv = 1"
        else:
            a, s = fam.alpha, fam.vertex
            e = fam.exponent
            head = (
                f"ray {fam.ray}: alpha ({a[0]},{a[1]}), vertex ({s[0]},{s[1]}), "
                f"exponent ({e[0]},{e[1]}), Delta {fam.delta}"
            )
        lines.append(head)
        for pf in fam.factors:
            lines.append(
                f"  {pf.factor} multiplicity {pf.multiplicity}; "
                f"numerator remainder has {pf.remainder_terms} term(s)"
            )
    for pf in report.unexplained:
        lines.append(f"unexplained factor {pf.factor} multiplicity {pf.multiplicity}")
    return rep, "\n".join(lines) + "\n"


def cmd_compare(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "compare")
    t1, c1 = load_curve(args.expr1)
    t2, c2 = load_curve(args.expr2)
    same = same_topological_type(c1, c2)
    verdict = "same embedded topological type" if same else "different embedded topological type"
    rep = AnalysisReport(
        "compare",
        [t1, t2],
        invariant={"first": invariant(c1).to_json(), "second": invariant(c2).to_json()},
        verdict=verdict,
    )
    out = f"{verdict}\nfirst:  {_rays_line(c1)}\nsecond: {_rays_line(c2)}\n"
    return rep, out


def _rays_line(curve: CurveData) -> str:
    return ", ".join(
        f"({p},{q})x{r}" for (p, q), r in invariant(curve).rays
    )


def cmd_oracle(args) -> tuple[AnalysisReport, str]:
    _need(args.format, ("text", "json"), "oracle")
    text, curve = load_curve(args.expr)
    norm = normalize(curve)
    M = args.truncate
    closed = truncate(series_G(norm), M)
    brute = enumerate_series(norm, M)
    series_ok = closed == brute
    L = args.max_level
    graph_ok = build_graph(curve, L).canonical() == expand_jsc(jsc_walk(curve, L), L).canonical()
    data = {
        "series": {"order": M, "agree": series_ok},
        "graph": {"max_level": L, "agree": graph_ok},
    }
    if not series_ok:
        diff = closed - brute
        data["series"]["difference"] = diff.to_json()
    rep = AnalysisReport("oracle", [text], swapped=norm.swapped, oracle=data,
                         verdict="agree" if series_ok else "mismatch")
    out = (
        f"series closed form vs enumeration mod v^{M + 1}: {'agree' if series_ok else 'MISMATCH'}\n"
        f"graph definition vs walk up to level {L}: {'agree' if graph_ok else 'MISMATCH'}\n"
    )
    return rep, out


COMMANDS = {
    "check": cmd_check,
    "polygon": cmd_polygon,
    "walk": cmd_walk,
    "graph": cmd_graph,
    "staircase": cmd_staircase,
    "series": cmd_series,
    "poles": cmd_poles,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("NEWTONJET_FORMAT", "text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=FORMATS,
        default=default_format,
        help="output format (default: $NEWTONJET_FORMAT or text)",
    )
    ap = argparse.ArgumentParser(
        prog="newtonjet",
        description="Jet schemes, contact loci and generating series of "
        "Newton non-degenerate plane curve singularities.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    expr_help = "polynomial in x, y, or a file containing one"

    p = sub.add_parser("check", parents=[common], help="validate a curve")
    p.add_argument("expr", help=expr_help)
    p = sub.add_parser("polygon", parents=[common], help="Newton polygon and tropical rays")
    p.add_argument("expr", help=expr_help)
    p = sub.add_parser("walk", parents=[common], help="staircase walk towards the ray (p, q)")
    p.add_argument("p", type=_positive)
    p.add_argument("q", type=_positive)
    p.add_argument("--base", type=int, default=0, help="start from base*(p,q) + (1,1)")
    p = sub.add_parser("graph", parents=[common], help="graph of jet-scheme components")
    p.add_argument("expr", help=expr_help)
    p.add_argument("--max-level", type=_order, default=8)
    p.add_argument("--route", choices=("definition", "walk"), default="definition")
    p.add_argument("--no-edges", action="store_true", help="text output: weights only")
    p = sub.add_parser("staircase", parents=[common], help="weighted staircase representation")
    p.add_argument("expr", help=expr_help)
    p.add_argument("--bound", type=_order, default=12, help="largest level shown")
    p = sub.add_parser("series", parents=[common], help="generating series G = H + R")
    p.add_argument("expr", help=expr_help)
    p.add_argument("--truncate", type=_order, default=None, metavar="M")
    p = sub.add_parser("poles", parents=[common], help="poles of the generating series")
    p.add_argument("expr", help=expr_help)
    p = sub.add_parser("compare", parents=[common], help="compare embedded topological types")
    p.add_argument("expr1", help=expr_help)
    p.add_argument("expr2", help=expr_help)
    p = sub.add_parser("oracle", parents=[common], help="closed forms against brute force")
    p.add_argument("expr", help=expr_help)
    p.add_argument("--truncate", type=_order, default=40, metavar="M")
    p.add_argument("--max-level", type=_order, default=40)
    return ap


def main(argv=None) -> int:
    env_format = os.environ.get("NEWTONJET_FORMAT")
    if env_format is not None and env_format not in FORMATS:
        print(f"newtonjet: NEWTONJET_FORMAT must be one of {', '.join(FORMATS)}", file=sys.stderr)
        return 2
    args = build_parser().parse_args(argv)
    try:
        rep, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"newtonjet: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        if args.format == "json":
            err = AnalysisReport(args.command, [getattr(args, "expr", "")], verdict="rejected")
            data = err.to_json()
            data["error"] = {"code": exc.code, "message": str(exc), "datum": _jsonable(exc.datum)}
            sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            datum = "" if exc.datum is None else f" [datum: {_jsonable(exc.datum)}]"
            print(f"rejected: {exc}{datum}")
        return 1
    sys.stdout.write(rep.dumps() if args.format == "json" else text)
    if args.command == "oracle" and rep.verdict != "agree":
        return ORACLE_MISMATCH
    return 0


def _jsonable(x):
    if isinstance(x, tuple):
        return list(x)
    return x


if __name__ == "__main__":
    sys.exit(main())
