from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from ncsym.algebra import (
    Basis,
    CExpr,
    EClassExpr,
    UniPoly,
    act,
    amalgamate,
    disjoint_product,
    e,
    induce,
    m,
    p,
    to_basis,
)
from ncsym.chromatic import (
    all_routes,
    attach_diamond_positivity_check,
    attach_km_closed_form,
    chromatic_polynomial,
    closed_form_kd_minus_e,
    closed_form_x_kd_minus_e,
    combine_check,
    compute_y,
    e_class_expansion,
    induce_power_closed_form,
    induce_power_scratch,
    is_e_class_positive,
    jk_equivalence_check,
    path_cycle_relation_check,
    reconstruct_from_y,
    routes_agree,
    search_positive_labeling,
    sink_distribution_via_e,
    tree_experiment,
    unique_sink_count_via_e,
    x_commutative,
    y_broken_circuit_p,
    y_delcon,
    y_e,
    y_stable,
    y_subsets_p,
)
from ncsym.graphs import (
    Graph,
    add_isolated_vertex,
    all_graphs,
    attach_complete,
    complete,
    complete_minus_edge,
    count_unique_sink,
    cycle,
    diamond,
    disjoint_union,
    empty,
    k_alpha_chain,
    path,
    proper_coloring_count,
    relabel,
    sink_distribution,
    star,
)
from ncsym.lattice import Perm, SetPartition

from conftest import multigraphs, perms

HALF = F(1, 2)


# routes ----------------------------------------------------------------------

def test_worked_path_example():
    assert y_stable(path(3)) == m("13/2") + m("1/2/3")
    assert y_stable(path(2)) == m("1/2")
    assert y_stable(cycle(1)) == m("1") - m("1")
    # Y_{P_3} = Y_{P_2 + isolated v_3} - Y_{P_2} induced
    assert y_stable(path(3)) == y_stable(add_isolated_vertex(path(2))) - induce(y_stable(path(2)))
    assert y_stable(add_isolated_vertex(path(2))) == m("1/2/3") + m("1/23") + m("13/2")


def test_boundary_cases():
    assert y_delcon(empty(3), Basis.P).terms == {SetPartition.finest(3): 1}
    assert y_delcon(Graph(2, [(1, 2), (1, 2)])) == m("1/2")
    assert not y_delcon(Graph(2, [(1, 2), (2, 2)])).terms


def test_subset_and_complex_examples():
    assert y_subsets_p(complete(2)) == p("1/2") - p("12")
    assert y_subsets_p(path(3)) == p("1/2/3") - p("12/3") - p("1/23") + p("123")
    assert y_subsets_p(path(3)) == y_stable(path(3))
    k3 = y_broken_circuit_p(complete(3))
    assert k3 == p("1/2/3") - p("12/3") - p("13/2") - p("1/23") + 2 * p("123")
    assert k3 == e("123")
    assert not y_subsets_p(cycle(1)).terms
    assert not y_broken_circuit_p(cycle(1)).terms
    forest = Graph(5, [(1, 2), (2, 4), (3, 5)])
    assert y_broken_circuit_p(forest).terms == y_subsets_p(forest).terms


def test_complete_graph_is_single_e():
    for d in range(1, 7):
        assert y_e(complete(d)).terms == {SetPartition.coarsest(d): 1}


@settings(max_examples=80)
@given(multigraphs(max_d=5, max_edges=7))
def test_routes_agree_on_random_multigraphs(G):
    ys = all_routes(G)
    assert len({tuple(sorted(y.terms.items(), key=lambda kv: kv[0].sort_key())) for y in ys.values()}) == 1
    assert y_delcon(G, pivot="relabel") == ys["stable"]


@given(multigraphs(max_d=5, max_edges=7), st.randoms(use_true_random=False))
def test_broken_route_ignores_edge_order(G, rnd):
    ids = [x.id for x in G.edges]
    rnd.shuffle(ids)
    assert y_broken_circuit_p(G.reorder_edges(ids)) == y_stable(G)


def test_routes_agree_helper_and_provenance():
    assert routes_agree(complete_minus_edge(4), edge_orders=3)
    r = compute_y(path(3), Basis.E, "subsets")
    assert r.provenance == "subsets" and r.expr.basis == Basis.E
    with pytest.raises(ValueError):
        compute_y(path(3), Basis.E, "nope")


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(multigraphs(d, d), perms(d))))
def test_relabeling_moves_y(args):
    G, delta = args
    assert y_stable(relabel(delta, G)) == act(delta, y_stable(G))


@given(multigraphs(max_d=3, max_edges=4), multigraphs(max_d=3, max_edges=4))
def test_disjoint_union_is_product(G, H):
    lhs = y_delcon(disjoint_union(G, H), Basis.P)
    assert lhs == disjoint_product(y_delcon(G, Basis.P), y_delcon(H, Basis.P))
    assert lhs == disjoint_product(y_e(G), y_e(H))


def test_p_e_relabel_pivot_matches():
    for G in (complete(4), cycle(5), diamond(), star(5)):
        assert y_delcon(G, Basis.P, pivot="relabel").terms == y_delcon(G, Basis.P).terms


def test_e_expansion_of_path():
    want = HALF * e("12/3") - HALF * e("13/2") + HALF * e("1/23") + HALF * e("123")
    assert y_e(path(3)).terms == want.terms


# commutative image and orientations -------------------------------------------

def test_commutative_examples():
    n = UniPoly.n()
    assert chromatic_polynomial(path(3)) == n * (n - 1) * (n - 1)
    assert chromatic_polynomial(complete(3)) == n * (n - 1) * (n - 2)
    assert x_commutative(path(3)) == CExpr(3, "e", {(2, 1): 1, (3,): 3})


@given(multigraphs(max_d=5, max_edges=7))
def test_polynomial_matches_colorings(G):
    poly = chromatic_polynomial(G)
    for n in range(G.d + 2):
        assert poly(n) == proper_coloring_count(G, n)


def test_sink_examples():
    assert unique_sink_count_via_e(complete(3)) == 2
    assert unique_sink_count_via_e(path(3)) == 1 == count_unique_sink(path(3), 1)
    assert unique_sink_count_via_e(empty(3)) == 0
    assert sink_distribution_via_e(path(3)) == {1: 3, 2: 1}
    assert sink_distribution_via_e(complete(3)) == {1: 6}
    assert sink_distribution_via_e(empty(4)) == {4: 1}


@given(multigraphs(max_d=5, max_edges=7, loops=False))
def test_sink_counts_from_e(G):
    assert sink_distribution_via_e(G) == sink_distribution(G)
    for v in range(1, G.d + 1):
        assert unique_sink_count_via_e(G) == count_unique_sink(G, v)
    assert abs(chromatic_polynomial(G).coefficient(1)) == count_unique_sink(G, 1)


# congruence classes and positivity ------------------------------------------------

def test_class_examples():
    assert e_class_expansion(path(3)).terms == {((2, 1), 1): HALF, ((3,), 3): HALF}
    assert e_class_expansion(complete_minus_edge(4)).terms == {((4,), 4): F(2, 3), ((3, 1), 1): F(1, 3)}
    for d in range(1, 6):
        assert e_class_expansion(complete(d)).terms == {((d,), d): 1}


@given(st.integers(2, 5).flatmap(lambda d: st.tuples(multigraphs(d, d, loops=False), perms(d),
                                                     st.integers(1, d))))
def test_relabeled_classes_shift_the_marked_index(args):
    G, delta, i = args
    assert amalgamate(act(delta, y_e(G)), i).terms == amalgamate(y_e(G), delta.inverse()(i)).terms


def test_search_finds_what_brute_force_finds():
    for G in all_graphs(4, 6) + [star(5), cycle(5)]:
        fast = search_positive_labeling(G)
        slow = search_positive_labeling(G, use_relabeling_identity=False)
        assert (fast.witness is None) == (slow.witness is None)
        assert fast.exhaustive and slow.exhaustive
        if fast.witness:
            delta, i = fast.witness
            assert amalgamate(act(delta, y_e(G)), i).is_nonneg()


def test_search_budget_is_respected():
    res = search_positive_labeling(star(4), budget=3, use_relabeling_identity=False)
    assert res.tried <= 3


def test_positive_families():
    assert all(is_e_class_positive(path(d)) for d in range(1, 8))
    assert all(is_e_class_positive(cycle(d)) for d in range(1, 8))
    assert is_e_class_positive(k_alpha_chain((3, 2, 2)))


# family closed forms -------------------------------------------------------------

@pytest.mark.parametrize("d", range(2, 7))
def test_kd_minus_e(d):
    assert e_class_expansion(complete_minus_edge(d)) == closed_form_kd_minus_e(d)
    assert x_commutative(complete_minus_edge(d)) == closed_form_x_kd_minus_e(d)


def test_kd_minus_e_small_cases():
    assert closed_form_x_kd_minus_e(4) == CExpr(4, "e", {(4,): 16, (3, 1): 2})
    assert closed_form_kd_minus_e(2).terms == {((1, 1), 1): 1}


@pytest.mark.parametrize("d", range(1, 7))
def test_path_cycle_relation(d):
    assert path_cycle_relation_check(d)


BASE_GRAPHS = [complete(1), complete(2), path(3), complete(3), star(4), cycle(4), path(4)]


@pytest.mark.parametrize("G", BASE_GRAPHS, ids=lambda G: str(G.pairs()))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_attach_clique_closed_form(G, k):
    assert attach_km_closed_form(e_class_expansion(G), k) == e_class_expansion(attach_complete(G, k))


def test_attach_clique_examples():
    assert attach_km_closed_form(e_class_expansion(complete(1)), 2).terms == {((2,), 2): 1}
    assert attach_km_closed_form(e_class_expansion(path(2)), 2) == e_class_expansion(path(3))
    assert attach_km_closed_form(e_class_expansion(complete(3)), 2) == e_class_expansion(k_alpha_chain((3, 2)))


@pytest.mark.parametrize("G", BASE_GRAPHS[:5], ids=lambda G: str(G.pairs()))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_induced_power_closed_form(G, k):
    assert induce_power_closed_form(e_class_expansion(G), k) == induce_power_scratch(G, k)


def test_induced_power_one_is_plain_induction():
    for G in BASE_GRAPHS:
        one = induce_power_closed_form(e_class_expansion(G), 1)
        scratch = induce_power_scratch(G, 1)
        assert one == scratch
        # G + K_1 = G, so this is the class of Y_G induced once
        assert one == amalgamate(induce(y_e(G)), G.d + 1)


def test_index_shuffling_identities():
    assert jk_equivalence_check(path(2), 3, 1, 2)
    assert all(jk_equivalence_check(G, 3, j, k) for G in BASE_GRAPHS[:4]
               for j in range(1, 3) for k in range(j + 1, 4))
    assert combine_check(path(3), 1, 2)
    assert all(combine_check(G, i, j) for G in BASE_GRAPHS for i in range(1, G.d + 1)
               for j in range(1, G.d + 1))


@pytest.mark.parametrize("G", [complete(1), complete(2), path(3), complete(3), path(4), cycle(4)],
                         ids=lambda G: str(G.pairs()))
def test_diamond_attachment(G):
    assert attach_diamond_positivity_check(G)


def test_diamond_needs_positive_base():
    bad = next((G for G in all_graphs(4, 6, connected=True) if not is_e_class_positive(G)), None)
    if bad is None:
        pytest.skip("every connected graph on 4 vertices is positive modulo 4")
    with pytest.raises(ValueError):
        attach_diamond_positivity_check(bad)


# reconstruction and trees ---------------------------------------------------------

def test_reconstruction_examples():
    assert reconstruct_from_y(y_stable(path(3))) == path(3)
    for d in range(1, 5):
        assert reconstruct_from_y(y_stable(complete(d))) == complete(d)
        assert reconstruct_from_y(y_stable(empty(d))) == empty(d)
    with pytest.raises(ValueError):
        reconstruct_from_y(m("12"))


@pytest.mark.parametrize("d", range(1, 5))
def test_reconstruction_all_simple_graphs(d):
    for G in all_graphs(d, d * (d - 1) // 2):
        for route in (Basis.M, Basis.P, Basis.E):
            assert reconstruct_from_y(to_basis(y_stable(G), route)) == G


@pytest.mark.parametrize("d", range(1, 8))
def test_tree_experiment(d):
    r = tree_experiment(d, with_classes=d <= 6)
    assert r.x_distinct and r.y_distinct and r.reconstructed
    assert r.to_json()["d"] == d
