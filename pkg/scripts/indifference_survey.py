"""Class-positivity of every indifference graph on up to d vertices.

Each indifference graph is taken in its natural labeling and marked at
its last vertex.  The run also records, for each graph and its last edge,
the coefficient ratios between Y_{G-e} and the induced Y_{G/e}, which is
raw material for looking at how deletion and contraction interact.

    python scripts/indifference_survey.py --max-d 7 [--json out.json]
"""
import argparse
import json
import time

from ncsym.algebra import Basis, amalgamate, induce_at, to_basis
from ncsym.chromatic import e_class_expansion, y_delcon
from ncsym.graphs import contract_edge, delete_edge, indifference_graphs


def dc_parts(G):
    """Classes of Y_{G-e} and of Y_{G/e} induced, for the last edge e."""
    e = G.edges[-1]
    dele = amalgamate(y_delcon(delete_edge(G, e.id), Basis.E), G.d)
    con = y_delcon(contract_edge(G, e.id), Basis.P)
    con = amalgamate(to_basis(induce_at(con, e.u, e.v), Basis.E), G.d)
    return dele, con


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=7)
    ap.add_argument("--json", help="write per-graph records here")
    args = ap.parse_args()

    records = []
    print(f"{'d':>3} {'graphs':>7} {'positive':>9} {'sec':>7}")
    for d in range(1, args.max_d + 1):
        t0 = time.perf_counter()
        n = pos = 0
        for G in indifference_graphs(d):
            n += 1
            cls = e_class_expansion(G)
            pos += cls.is_nonneg()
            rec = {"graph": G.to_json(), "classes": cls.to_json(), "positive": cls.is_nonneg()}
            if args.json and G.edges:
                dele, con = dc_parts(G)
                rec["deleted"], rec["contracted_induced"] = dele.to_json(), con.to_json()
            records.append(rec)
        print(f"{d:>3} {n:>7} {pos:>9} {time.perf_counter() - t0:>7.2f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(records, fh, indent=1)


if __name__ == "__main__":
    main()
