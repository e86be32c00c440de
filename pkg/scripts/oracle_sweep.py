"""Check the closed forms against brute force on many random curves.

For every curve: the closed-form series truncated at v^M against direct
enumeration, and the jet graph built from frontiers against the one expanded
from the walk representation.  Prints one line per curve and a summary; exits
nonzero on the first disagreement.

Usage: python3 scripts/oracle_sweep.py [--count 200] [--seed 0] [--order 40]
"""

import argparse
import random
import sys
import time

from newtonjet.corpus import CORPUS, random_curve
from newtonjet.jetgraph import build_graph, expand_jsc, jsc_walk
from newtonjet.polygon import curve_from_text, normalize
from newtonjet.series import enumerate_series, series_G, truncate


def check(text: str, order: int, level: int) -> tuple[bool, bool]:
    curve = curve_from_text(text)
    norm = normalize(curve)
    series_ok = truncate(series_G(norm), order) == enumerate_series(norm, order)
    graph_ok = build_graph(curve, level).canonical() == expand_jsc(jsc_walk(curve, level), level).canonical()
    return series_ok, graph_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200, help="random curves after the corpus")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--order", type=int, default=40, help="series truncation order M")
    ap.add_argument("--level", type=int, default=40, help="largest jet level compared")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    texts = [e.text for e in CORPUS] + [random_curve(rng) for _ in range(args.count)]
    start = time.perf_counter()
    for i, text in enumerate(texts, 1):
        series_ok, graph_ok = check(text, args.order, args.level)
        if not args.quiet or not (series_ok and graph_ok):
            print(f"{i:4d} series={'ok' if series_ok else 'MISMATCH'} "
                  f"graph={'ok' if graph_ok else 'MISMATCH'}  {text}")
        if not (series_ok and graph_ok):
            return 1
    print(f"{len(texts)} curves agree ({time.perf_counter() - start:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
