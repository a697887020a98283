"""Scan a graph6 file and tabulate the almost distance-regularity indices.

Also looks for graphs that are (m+2, m)-walk-regular while c_{m+1} is not
well-defined, and for graphs whose m-walk-regularity exceeds D/2 + 1.

    python3 scripts/census_check.py fixtures/all.g6
    python3 scripts/census_check.py --random 300 --n 10 30
"""

import argparse
import sys

import networkx as nx
import numpy as np

from adrg.classify import GraphAnalysis
from adrg.errors import AdrgError
from adrg.graph import Graph, parse_graph6


def graphs_from_file(path):
    with open(path) as fh:
        for k, line in enumerate(fh, 1):
            parts = line.split()
            if parts:
                yield parse_graph6(parts[0], parts[1] if len(parts) > 1 else f"line{k}")


def random_cubic(count, lo, hi, seed):
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        n = 2 * int(rng.integers(lo // 2, hi // 2 + 1))
        h = nx.random_regular_graph(3, n, seed=int(rng.integers(2**31)))
        if nx.is_connected(h):
            made += 1
            yield Graph(nx.to_numpy_array(h, dtype=np.int8), f"cubic-{n}-{made}")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("path", nargs="?")
    p.add_argument("--random", type=int, default=0, help="number of random cubic graphs instead of a file")
    p.add_argument("--n", type=int, nargs=2, default=(10, 30))
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if not args.path and not args.random:
        p.error("give a graph6 file or --random N")
    source = random_cubic(args.random, *args.n, args.seed) if args.random else graphs_from_file(args.path)

    print(f"{'name':<14}{'n':>5}{'D':>4}{'d':>4}{'m_pdr':>7}{'m_wr':>6}  frontier")
    odd = []
    for g in source:
        try:
            an = GraphAnalysis(g)
        except AdrgError as exc:
            print(f"{g.name:<14} rejected: {exc}")
            continue
        m_wr = an.walk_regular_m()
        front = " ".join(f"({ell},{m})" for ell, m in an.lm_frontier_pairs())
        print(f"{g.name:<14}{an.n:>5}{an.D:>4}{an.d:>4}{an.partially_distance_regular():>7}{str(m_wr):>6}  {front}")
        ia = an.intersection
        for m in range(an.D - 1):
            if m + 2 <= an.d and an.lm_walk_regular(m + 2, m) and ia.c[m + 1] is None:
                odd.append(f"{g.name}: ({m + 2},{m})-walk-regular but c_{m + 1} is not well-defined")
        if m_wr is not None and not an.distance_regular and m_wr > an.D / 2 + 1:
            odd.append(f"{g.name}: m_wr = {m_wr} > D/2 + 1 = {an.D / 2 + 1} without distance-regularity")
        if an.mismatches:
            odd.append(f"{g.name}: cross-check mismatches {an.mismatches}")
    print()
    print("\n".join(odd) if odd else "nothing unusual")
    return 0


if __name__ == "__main__":
    sys.exit(main())
