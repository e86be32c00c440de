"""Write the walk, jet-graph and staircase pictures for the reference curves.

Usage: python3 scripts/reproduce_figures.py [--out figures]
"""

import argparse
from pathlib import Path

from newtonjet import render
from newtonjet.jetgraph import build_graph, jsc_walk
from newtonjet.lattice import staircase_walk
from newtonjet.polygon import curve_from_text

FIGURES = (
    ("walk_2_3", "walk", (2, 3)),
    ("cusp_graph", "graph", ("y^2 - x^3", 8)),
    ("cusp_staircase", "staircase", ("y^2 - x^3", 12)),
    ("transversal_cusps_staircase", "staircase", ("(y^2 - x^3)*(y^3 - x^2)", 12)),
    ("two_rays_staircase", "staircase", ("(y^2 - x^3)*(y^3 - x^5)", 24)),
    ("two_rays_graph", "graph", ("(y^2 - x^3)*(y^3 - x^5)", 16)),
)


def build(kind, arg):
    """Return ``{suffix: text}`` for one figure."""
    if kind == "walk":
        walk = staircase_walk(*arg)
        return {"txt": render.walk_text(walk) + "\n", "tex": render.walk_tikz(walk, arg)}
    text, level = arg
    curve = curve_from_text(text)
    if kind == "graph":
        g = build_graph(curve, level)
        return {"txt": render.graph_text(g), "dot": render.graph_dot(g), "tex": render.graph_tikz(g)}
    rep = jsc_walk(curve, level)
    return {"txt": render.staircase_text(rep), "tex": render.staircase_tikz(rep)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, kind, arg in FIGURES:
        for suffix, body in build(kind, arg).items():
            path = args.out / f"{name}.{suffix}"
            path.write_text(body)
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
