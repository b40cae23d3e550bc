#!/usr/bin/env python3
"""Search join pairs in increasing order of size for the smallest failures
of the edge-deletion theorem and its corollary, and print them."""

import argparse

from lap2.exact import char_poly
from lap2.graph import one_edge_connect
from lap2.harness import Corpus, SuiteConfig, check_edge_deletion_thm


def describe(g1, g2, u, v) -> str:
    G = one_edge_connect(g1, g2, u, v)
    p = char_poly(G)
    a, m = p.count_roots_above(2), p.root_multiplicity(2)
    return (
        f"n={G.n} g1={list(g1.edges)} g2={list(g2.edges)} u={u} v={v}\n"
        f"    m(2)={m}, indices of 2: {list(range(a + 1, a + m + 1))}"
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=14)
    args = ap.parse_args()
    pairs = sorted(Corpus(SuiteConfig().capped(args.nmax)).pm_pairs(), key=lambda t: t[0].n + t[1].n)
    need = {"T4.4", "C4.5"}
    for g1, g2, u, v in pairs:
        for r in check_edge_deletion_thm(g1, g2, u, v):
            if r.theorem in need and r.verdict == "Fail":
                need.discard(r.theorem)
                print(f"{r.theorem}: {describe(g1, g2, u, v)}")
        if not need:
            break
    for t in sorted(need):
        print(f"{t}: no failure with n <= {args.nmax}")


if __name__ == "__main__":
    main()
