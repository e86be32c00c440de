"""Text, DOT and TikZ writers for walks, jet graphs and staircase pictures."""

from __future__ import annotations

from .jetgraph import HYPERPLANE, JUMP, JetComponent, JetGraph, StaircaseRepr
from .lattice import Walk


def _node_id(c: JetComponent) -> str:
    x, y = c.point
    if c.kind == HYPERPLANE:
        return f"H_{x}_{y}_{c.level}"
    return f"F_{x}_{y}_{c.ray}_{c.branch}_{c.level}"


# -- walks -------------------------------------------------------------------

def walk_text(walk: Walk) -> str:
    return ",".join(f"({x},{y})" for x, y in walk.points)


def walk_tikz(walk: Walk, ray: tuple[int, int]) -> str:
    pts = walk.points
    w = max(x for x, _ in pts) + 1
    h = max(y for _, y in pts) + 1
    p, q = ray
    t = min(w / p, h / q)
    lines = [
        r"\begin{tikzpicture}[scale=0.8]",
        rf"  \draw[very thin, gray!40] (0,0) grid ({w},{h});",
        rf"  \draw[->] (0,0) -- ({w},0) node[right] {{$x$}};",
        rf"  \draw[->] (0,0) -- (0,{h}) node[above] {{$y$}};",
        rf"  \draw[thick, blue] (0,0) -- ({t * p:g},{t * q:g}) node[above right] {{$({p},{q})$}};",
        "  \\draw[thick] " + " -- ".join(f"({x},{y})" for x, y in pts) + ";",
    ]
    for x, y in pts:
        lines.append(rf"  \fill ({x},{y}) circle (2pt);")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


# -- jet graphs --------------------------------------------------------------

def _by_weight(comps):
    return sorted(comps, key=lambda cw: (tuple(cw[1]), cw[0]))


def graph_text(graph: JetGraph, show_edges: bool = True) -> str:
    lines = []
    for m, comps in sorted(graph.levels.items()):
        cells = [f"({w.d},{w.e}) {c.label().split('@')[0]}" for c, w in _by_weight(comps)]
        lines.append(f"level {m}: " + "; ".join(cells))
    if show_edges and graph.edges:
        lines.append("edges:")
        for child, parent in sorted(graph.edges):
            lines.append(f"  {child.label()} -> {parent.label()}")
    return "\n".join(lines) + "\n"


def graph_dot(graph: JetGraph, name: str = "jets") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for m, comps in sorted(graph.levels.items()):
        ids = []
        for c, w in sorted(comps):
            color = "black" if c.kind == HYPERPLANE else "red"
            lines.append(
                f'  {_node_id(c)} [label="({w.d},{w.e})", tooltip="{c.label()}", fontcolor={color}];'
            )
            ids.append(_node_id(c))
        lines.append(f"  {{ rank=same; {' '.join(ids)} }}")
    for child, parent in sorted(graph.edges):
        lines.append(f"  {_node_id(parent)} -> {_node_id(child)} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_tikz(graph: JetGraph) -> str:
    """Levels bottom to top, one column per component, weights as labels."""
    lines = [r"\begin{tikzpicture}[xscale=1.4, yscale=0.9]"]
    for m, comps in sorted(graph.levels.items()):
        n = len(comps)
        for k, (c, w) in enumerate(_by_weight(comps)):
            x = k - (n - 1) / 2
            style = "" if c.kind == HYPERPLANE else "[red]"
            lines.append(
                rf"  \node{style} ({_node_id(c)}) at ({x:g},{m}) {{$({w.d},{w.e})$}};"
            )
        lines.append(rf"  \node[gray, left] at ({-(n + 1) / 2:g},{m}) {{\small $m={m}$}};")
    for child, parent in sorted(graph.edges):
        lines.append(rf"  \draw ({_node_id(parent)}) -- ({_node_id(child)});")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


# -- staircase representation ------------------------------------------------

def staircase_text(rep: StaircaseRepr) -> str:
    on_ray = {a for a, _, _ in rep.arrows}
    lines = ["points (x,y) weight:"]
    for (x, y), w in sorted(rep.weights.items()):
        mark = " *" if (x, y) in on_ray else ""
        lines.append(f"  ({x},{y}) {w}{mark}")
    if rep.arrows:
        lines.append("arrows (point, branches, ray):")
        for a, r, i in sorted(rep.arrows):
            lines.append(f"  ({a[0]},{a[1]}) x{r} on ray {i}")
    return "\n".join(lines) + "\n"


def staircase_tikz(rep: StaircaseRepr) -> str:
    """Weighted lattice points, blue on-ray points and red arrows."""
    on_ray = {a: r for a, r, _ in rep.arrows}
    w = max((x for x, _ in rep.weights), default=1) + 1
    h = max((y for _, y in rep.weights), default=1) + 1
    lines = [
        r"\begin{tikzpicture}[scale=0.9]",
        rf"  \draw[very thin, gray!40] (0,0) grid ({w},{h});",
        rf"  \draw[->] (0,0) -- ({w},0);",
        rf"  \draw[->] (0,0) -- (0,{h});",
    ]
    for a, b, kind in sorted(rep.moves):
        style = "dashed" if kind == JUMP else "thick"
        lines.append(rf"  \draw[{style}] ({a[0]},{a[1]}) -- ({b[0]},{b[1]});")
    for (x, y), wt in sorted(rep.weights.items()):
        color = "blue" if (x, y) in on_ray else "black"
        lines.append(
            rf"  \fill[{color}] ({x},{y}) circle (2pt) node[below right, {color}] {{\scriptsize ${wt}$}};"
        )
    for (x, y), r in sorted(on_ray.items()):
        lines.append(
            rf"  \draw[->, red, thick] ({x},{y}) -- ({x + 0.35},{y + 0.6}) node[above] {{\scriptsize ${r}$}};"
        )
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"
