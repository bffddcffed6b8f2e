"""Named invariant suites, small enough to run from the command line.

Each suite returns a list of ``(check name, passed)`` pairs.  The pytest
suite covers the same ground at larger sizes.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra import (
    Basis,
    basis_element,
    expand_words,
    induce,
    to_basis,
)
from .chromatic import (
    attach_km_closed_form,
    chromatic_polynomial,
    closed_form_kd_minus_e,
    closed_form_x_kd_minus_e,
    e_class_expansion,
    is_e_class_positive,
    path_cycle_relation_check,
    reconstruct_from_y,
    routes_agree,
    sink_distribution_via_e,
    tree_experiment,
    unique_sink_count_via_e,
    x_commutative,
    y_stable,
)
from .graphs import (
    all_graphs,
    attach_complete,
    complete,
    complete_minus_edge,
    count_unique_sink,
    cycle,
    k_alpha_chain,
    path,
    proper_coloring_count,
    random_graph,
    sink_distribution,
)
from .lattice import (
    SetPartition,
    compositions,
    enumerate_Palpha,
    enumerate_partitions,
    insert_into_block_of_last,
    leq,
    new_singleton,
)

Result = list[tuple[str, bool]]


def induced_block_sums_hold(pi: SetPartition) -> bool:
    """Amalgamated coefficients of e_pi induced, summed over each P(alpha)."""
    d = pi.degree
    up = induce(basis_element(Basis.E, pi))
    top = insert_into_block_of_last(pi)
    if any(not leq(tau, top) for tau in up.terms):
        return False
    b = len(pi.block_of(d))
    single, joined = new_singleton(pi), top
    for alpha in compositions(d + 1):
        P = set(enumerate_Palpha(pi, alpha))
        total = sum((up.coeff(tau) for tau in P), Fraction(0))
        if P == {single}:
            want = Fraction(1, b)
        elif P == {joined}:
            want = Fraction(-1, b)
        else:
            want = Fraction(0)
        if total != want:
            return False
    return True


def suite_bases(max_d: int = 4) -> Result:
    out = []
    for d in range(1, max_d + 1):
        ok = True
        for pi in enumerate_partitions(d):
            for a in Basis:
                x = basis_element(a, pi)
                for b in Basis:
                    ok &= to_basis(to_basis(x, b), a) == x
        out.append((f"round trips d={d}", ok))
    for d in range(1, 4):
        ok = True
        for pi in enumerate_partitions(d):
            for a in Basis:
                x = basis_element(a, pi)
                ok &= all(expand_words(to_basis(x, b), 3) == expand_words(x, 3) for b in Basis)
        out.append((f"word oracle d={d}", ok))
    for d in range(1, max_d + 1):
        ok = all(induce(basis_element(Basis.E, pi)) == induce(basis_element(Basis.E, pi), route="changeup")
                 for pi in enumerate_partitions(d))
        out.append((f"induction routes d={d}", ok))
        out.append((f"induced block sums d={d}", all(induced_block_sums_hold(pi) for pi in enumerate_partitions(d))))
    return out


def suite_delcon(seed: int = 0) -> Result:
    out = []
    for d in range(1, 4):
        graphs = all_graphs(d, 4, loops=True, multi=True)
        out.append((f"four routes, all multigraphs d={d} |E|<=4",
                    all(routes_agree(G, edge_orders=2) for G in graphs)))
    rng = random.Random(seed)
    sample = [random_graph(rng, rng.choice([4, 5]), 8) for _ in range(20)]
    out.append(("four routes, 20 random graphs d in {4,5}",
                all(routes_agree(G, edge_orders=3, rng=rng) for G in sample)))
    return out


def suite_sinks(max_d: int = 4) -> Result:
    out = []
    for d in range(1, max_d + 1):
        graphs = all_graphs(d, d * (d - 1) // 2, connected=True)
        ok_unique = all(unique_sink_count_via_e(G) == count_unique_sink(G, v)
                        for G in graphs for v in range(1, d + 1))
        ok_dist = all(sink_distribution_via_e(G) == sink_distribution(G) for G in graphs)
        ok_gz = all(abs(chromatic_polynomial(G).coefficient(1)) == count_unique_sink(G, 1)
                    for G in graphs)
        out.append((f"unique sink via e d={d}", ok_unique))
        out.append((f"sink distribution via e d={d}", ok_dist))
        out.append((f"linear coefficient d={d}", ok_gz))
    return out


def suite_positivity(max_d: int = 6) -> Result:
    out = [
        ("paths", all(is_e_class_positive(path(d)) for d in range(1, max_d + 1))),
        ("cycles", all(is_e_class_positive(cycle(d)) for d in range(1, max_d + 1))),
        ("chains", all(is_e_class_positive(k_alpha_chain(a))
                       for n in range(1, max_d + 1) for a in compositions(n))),
    ]
    ok = True
    for G in (complete(1), path(2), path(3), complete(3)):
        for mm in range(2, 4):
            ok &= attach_km_closed_form(e_class_expansion(G), mm) == e_class_expansion(attach_complete(G, mm))
    out.append(("attach K_m closed form", ok))
    return out


def suite_families(max_d: int = 6) -> Result:
    return [
        ("K_d - e classes", all(e_class_expansion(complete_minus_edge(d)) == closed_form_kd_minus_e(d)
                                for d in range(2, max_d + 1))),
        ("X of K_d - e", all(x_commutative(complete_minus_edge(d)) == closed_form_x_kd_minus_e(d)
                             for d in range(2, max_d + 1))),
        ("path-cycle relation", all(path_cycle_relation_check(d) for d in range(1, max_d))),
        ("chromatic polynomial", all(
            chromatic_polynomial(G)(n) == proper_coloring_count(G, n)
            for G in (path(4), cycle(4), complete(4), complete_minus_edge(4))
            for n in range(0, 6))),
    ]


def suite_reconstruction(max_d: int = 4) -> Result:
    out = []
    for d in range(1, max_d + 1):
        graphs = all_graphs(d, d * (d - 1) // 2)
        out.append((f"simple graphs d={d}", all(reconstruct_from_y(y_stable(G)) == G for G in graphs)))
    for d in range(1, 7):
        r = tree_experiment(d)
        out.append((f"trees d={d}", r.x_distinct and r.y_distinct and r.reconstructed))
    return out


SUITES = {
    "bases": suite_bases,
    "delcon": suite_delcon,
    "sinks": suite_sinks,
    "positivity": suite_positivity,
    "families": suite_families,
    "reconstruction": suite_reconstruction,
}


def run_suite(name: str, seed: int = 0) -> Result:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend((f"{key}: {n}", ok) for n, ok in run_suite(key, seed))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    if name == "delcon":
        return suite_delcon(seed)
    return SUITES[name]()

