"""Do X_T or the congruence-class data separate non-isomorphic trees?

    python scripts/tree_experiment.py --max-d 8 --classes
"""
import argparse
import time

from ncsym.chromatic import tree_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=8)
    ap.add_argument("--classes", action="store_true",
                    help="also compare class expansions over every marked vertex (slow past d=7)")
    args = ap.parse_args()

    print(f"{'d':>3} {'trees':>6} {'X distinct':>11} {'Y distinct':>11} {'rebuilt':>8} {'class coll.':>12} {'sec':>7}")
    for d in range(1, args.max_d + 1):
        t0 = time.perf_counter()
        r = tree_experiment(d, with_classes=args.classes)
        cls = "-" if r.class_collisions is None else str(len(r.class_collisions))
        print(f"{d:>3} {len(r.trees):>6} {str(r.x_distinct):>11} {str(r.y_distinct):>11} "
              f"{str(r.reconstructed):>8} {cls:>12} {time.perf_counter() - t0:>7.2f}")
        for a, b in r.x_collisions:
            print(f"    X collision: {r.trees[a].pairs()}  vs  {r.trees[b].pairs()}")


if __name__ == "__main__":
    main()
