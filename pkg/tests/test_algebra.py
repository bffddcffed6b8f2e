import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ncsym.algebra import (
    Basis,
    CExpr,
    EClassExpr,
    NCExpr,
    UniPoly,
    act,
    amalgamate,
    basis_element,
    commutative_image,
    disjoint_product,
    e,
    e_to_m_by_definition,
    expand_words,
    induce,
    induce_at,
    m,
    m_to_e_by_inversion,
    p,
    specialize_ones,
    to_basis,
)
from ncsym.chromatic import y_stable
from ncsym.graphs import complete, disjoint_union, path
from ncsym.lattice import (
    Perm,
    SetPartition,
    enumerate_partitions,
    insert_into_block_of_last,
    new_singleton,
    shape,
)
from ncsym.verify import induced_block_sums_hold

from conftest import partitions, perms

P = SetPartition.from_string
BASES = list(Basis)


def combo(basis, d, coeffs):
    parts = list(enumerate_partitions(d))
    return NCExpr(d, basis, {pi: c for pi, c in zip(parts, coeffs)})


@st.composite
def expressions(draw, max_d=4, basis=None):
    d = draw(st.integers(1, max_d))
    b = basis or draw(st.sampled_from(BASES))
    parts = list(enumerate_partitions(d))
    coeffs = draw(st.lists(st.fractions(max_denominator=6, min_value=-3, max_value=3),
                           min_size=len(parts), max_size=len(parts)))
    return NCExpr(d, b, dict(zip(parts, coeffs)))


def test_arithmetic():
    assert (m("13/2") + m("1/2/3")) == y_stable(path(3))
    assert not (e("12") + (-1) * e("12")).terms
    assert (2 * m("12")).terms == {P("12"): 2}
    assert m("12") - m("12") == NCExpr.zero(2, "m")
    assert str(F(1, 2) * e("12/3") - e("1/2/3")) == "1/2·e{12/3} - e{1/2/3}"
    with pytest.raises(ValueError):
        e("12") + m("12")


def test_basis_examples():
    assert to_basis(p("13/24"), Basis.M) == m("13/24") + m("1234")
    want = sum((m(s) for s in ["12/34", "14/23", "12/3/4", "1/23/4", "1/2/34", "14/2/3", "1/2/3/4"]),
               NCExpr.zero(4, "m"))
    assert to_basis(e("13/24"), Basis.M) == want
    assert to_basis(m("1"), Basis.P).terms == {P("1"): 1}


@pytest.mark.parametrize("d", range(1, 6))
def test_round_trips(d):
    for pi in enumerate_partitions(d):
        for a in BASES:
            x = basis_element(a, pi)
            for b in BASES:
                y = to_basis(x, b)
                assert y.basis == b
                assert to_basis(y, a).terms == x.terms


@pytest.mark.parametrize("d", range(1, 5))
def test_conversions_match_word_oracle(d):
    for pi in enumerate_partitions(d):
        for a in BASES:
            x = basis_element(a, pi)
            words = expand_words(x, d)
            for b in BASES:
                assert expand_words(to_basis(x, b), d) == words


@pytest.mark.parametrize("d", range(1, 6))
def test_alternative_e_m_formulas(d):
    for pi in enumerate_partitions(d):
        assert e_to_m_by_definition(e(pi)).terms == to_basis(e(pi), Basis.M).terms
        assert m_to_e_by_inversion(m(pi)).terms == to_basis(m(pi), Basis.E).terms


def test_word_examples():
    assert expand_words(m("1/2"), 2) == {(1, 2): 1, (2, 1): 1}
    assert expand_words(p("12"), 2) == {(1, 1): 1, (2, 2): 1}
    assert expand_words(e("12"), 2) == {(1, 2): 1, (2, 1): 1}


def test_induce_examples():
    assert induce(m("1/2")) == m("1/23")
    assert induce(p("13/2")).terms == {P("134/2"): 1}
    half = F(1, 2)
    want = half * e("12/3") + half * e("13/2") - half * e("1/23") - half * e("123")
    assert induce(e("12")).terms == want.terms
    assert induce(e("12"), route="changeup").terms == want.terms


def words_of_induced(x, n, k, l):
    base = expand_words(x, n)
    out = {}
    for w, c in base.items():
        lst = list(w)
        lst.insert(l - 1, w[k - 1])
        out[tuple(lst)] = c
    return out


@pytest.mark.parametrize("d", range(1, 4))
def test_induce_matches_word_oracle(d):
    n = d + 1
    for pi in enumerate_partitions(d):
        for b in BASES:
            x = basis_element(b, pi)
            for route in ("p", "changeup") if b == Basis.E else ("p",):
                assert expand_words(induce(x, route=route), n) == words_of_induced(x, n, d, d + 1)


@pytest.mark.parametrize("d", range(1, 4))
def test_induce_at_matches_word_oracle(d):
    n = d + 1
    for pi in enumerate_partitions(d):
        for b in BASES:
            x = basis_element(b, pi)
            for l in range(2, d + 2):
                for k in range(1, l):
                    assert expand_words(induce_at(x, k, l), n) == words_of_induced(x, n, k, l)


def test_induce_at_examples():
    assert induce_at(m("1/2"), 1, 3) == m("13/2")
    assert induce_at(m("12"), 1, 2) == m("123")


@given(expressions(max_d=4))
def test_induce_at_last_is_induce(x):
    assert induce_at(x, x.degree, x.degree + 1) == induce(x)


@pytest.mark.parametrize("d", range(1, 5))
def test_induce_routes_agree(d):
    for pi in enumerate_partitions(d):
        assert induce(e(pi)).terms == induce(e(pi), route="changeup").terms


@pytest.mark.parametrize("d", range(1, 5))
def test_amalgamation_lemma(d):
    assert all(induced_block_sums_hold(pi) for pi in enumerate_partitions(d))


def _class(lam, b):
    return (tuple(sorted(lam, reverse=True)), b)


@pytest.mark.parametrize("d", range(1, 6))
def test_induced_e_classes_modulo_both_ends(d):
    # e_pi induced is (1/b)(class of pi/{new}) - (1/b)(class of pi with new in B_d),
    # whether we mark the new element or the old last one
    for pi in enumerate_partitions(d):
        up = induce(e(pi))
        b = len(pi.block_of(d))
        lam = shape(pi)
        for marked in (d + 1, d):
            got = amalgamate(up, marked)
            single = new_singleton(pi) if marked == d + 1 else None
            joined = insert_into_block_of_last(pi)
            grown = list(lam)
            grown.remove(b)
            grown.append(b + 1)
            if marked == d + 1:
                keys = [(_class(shape(single), 1), F(1, b)),
                        (_class(shape(joined), b + 1), F(-1, b))]
            else:
                keys = [(_class(list(lam) + [1], 1), F(1, b)), (_class(grown, b + 1), F(-1, b))]
            assert got == EClassExpr(d + 1, marked, dict(keys))


@pytest.mark.parametrize("d", range(1, 6))
def test_congruence_respects_induction(d):
    reps = {}
    for pi in enumerate_partitions(d):
        key = (shape(pi), len(pi.block_of(d)))
        got = amalgamate(induce(e(pi)), d + 1)
        assert reps.setdefault(key, got) == got


def test_amalgamate_examples():
    y = to_basis(y_stable(path(3)), Basis.E)
    cls = amalgamate(y, 3)
    assert cls.terms == {((2, 1), 1): F(1, 2), ((3,), 3): F(1, 2)}
    assert amalgamate(e("13/2"), 2).terms == {((2, 1), 1): 1}
    up = amalgamate(induce(e("12")), 3)
    assert up.terms == {((2, 1), 1): F(1, 2), ((3,), 3): F(-1, 2)}
    with pytest.raises(ValueError):
        amalgamate(m("12"), 1)


def test_act_examples():
    assert act(Perm.transposition(3, 1, 2), m("13/2")) == m("1/23")
    x = F(1, 3) * e("12/3") - 2 * e("1/2/3")
    assert act(Perm.identity(3), x) == x


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(expressions(max_d=d).filter(lambda x: x.degree == d),
                                                     perms(d), perms(d))))
def test_act_is_group_action_on_any_basis(args):
    x, a, b = args
    assert act(a * b, x) == act(a, act(b, x))
    assert sorted(act(a, x).terms.values()) == sorted(x.terms.values())
    for target in BASES:
        assert to_basis(act(a, x), target) == act(a, to_basis(x, target))


@pytest.mark.parametrize("basis", [Basis.P, Basis.E])
def test_disjoint_product_by_words(basis):
    for da in (1, 2):
        for db in (1, 2):
            n = da + db
            for a in enumerate_partitions(da):
                for b in enumerate_partitions(db):
                    x, y = basis_element(basis, a), basis_element(basis, b)
                    wx, wy = expand_words(x, n), expand_words(y, n)
                    want = {u + v: cu * cv for u, cu in wx.items() for v, cv in wy.items()}
                    assert expand_words(disjoint_product(x, y), n) == want


def test_disjoint_product_examples():
    assert disjoint_product(e("12"), e("12")).terms == {P("12/34"): 1}
    assert disjoint_product(p("1"), p("12")).terms == {P("1/23"): 1}
    yk2 = to_basis(y_stable(complete(2)), Basis.E)
    assert disjoint_product(yk2, e("1")) == y_stable(disjoint_union(complete(2), complete(1)))
    with pytest.raises(ValueError):
        disjoint_product(m("1"), m("1"))


def test_commutative_image_examples():
    assert commutative_image(m("13/2")) == CExpr(3, "m", {(2, 1): 1})
    assert commutative_image(e("13/24")) == CExpr(4, "e", {(2, 2): 4})
    y = to_basis(y_stable(path(3)), Basis.E)
    assert commutative_image(y) == CExpr(3, "e", {(2, 1): 1, (3,): 3})


def test_specialization_examples():
    n = UniPoly.n()
    assert specialize_ones(y_stable(path(3))) == n * (n - 1) * (n - 1)
    assert specialize_ones(p("1/2/3")) == n * n * n
    assert specialize_ones(e("123")) == n * (n - 1) * (n - 2)
    assert str(n * (n - 1) * (n - 1)) == "n^3 - 2n^2 + n"


@given(expressions(max_d=4))
def test_specialization_is_basis_free_and_counts_words(x):
    poly = specialize_ones(x)
    for b in BASES:
        assert specialize_ones(to_basis(x, b)) == poly
    for n in range(1, 4):
        assert poly(n) == sum(expand_words(x, n).values(), F(0))


@given(expressions(max_d=5))
def test_json_round_trip(x):
    back = NCExpr.from_json(json.loads(json.dumps(x.to_json())))
    assert back.basis == x.basis and back.terms == x.terms


def test_class_and_commutative_json_round_trip():
    y = to_basis(y_stable(path(4)), Basis.E)
    for i in range(1, 5):
        cls = amalgamate(y, i)
        assert EClassExpr.from_json(json.loads(json.dumps(cls.to_json()))) == cls
    c = commutative_image(y)
    assert CExpr.from_json(json.loads(json.dumps(c.to_json()))) == c


def test_degree_mismatch_is_rejected():
    with pytest.raises(ValueError):
        m("12") + m("1/2/3")
    with pytest.raises(ValueError):
        NCExpr(2, "m", {P("1/2/3"): 1})
