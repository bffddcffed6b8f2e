"""Congruence-class e-expansions for the standard families.

Prints, for each graph, the classes of Y_G modulo its last vertex and
whether they are all nonnegative.
"""
import argparse

from ncsym.chromatic import e_class_expansion
from ncsym.graphs import complete_minus_edge, cycle, k_alpha_chain, path
from ncsym.lattice import compositions


def show(name, G):
    cls = e_class_expansion(G)
    flag = "positive" if cls.is_nonneg() else "NOT positive"
    print(f"{name:<22} mod {G.d}: {flag}")
    for (lam, b), c in cls.items():
        print(f"    e({','.join(map(str, lam))}|{b})  {c}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--chains", action="store_true", help="include every clique chain with sum(alpha) <= max-d")
    args = ap.parse_args()
    for d in range(2, args.max_d + 1):
        show(f"path {d}", path(d))
    for d in range(3, args.max_d + 1):
        show(f"cycle {d}", cycle(d))
    for d in range(2, args.max_d + 1):
        show(f"K_{d} minus an edge", complete_minus_edge(d))
    if args.chains:
        for n in range(2, args.max_d + 1):
            for alpha in compositions(n):
                if len(alpha) > 1 and min(alpha) > 1:
                    show(f"chain {alpha}", k_alpha_chain(alpha))


if __name__ == "__main__":
    main()
