"""The chromatic symmetric function in noncommuting variables, Y_G.

Four independent routes compute Y_G (stable partitions, deletion-contraction,
signed edge subsets, broken-circuit complex).  Everything else here is built
on top of them: e-expansions, sink counts, congruence classes, closed forms
for graph families and reconstruction of simple graphs.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import islice, permutations
from typing import Callable

from . import config
from .algebra import (
    Basis,
    CExpr,
    EClassExpr,
    NCExpr,
    UniPoly,
    act,
    amalgamate,
    commutative_image,
    falling,
    induce,
    induce_at,
    rising,
    specialize_ones,
    to_basis,
)
from .graphs import (
    Graph,
    attach_complete,
    attach_diamond,
    broken_circuit_complex,
    complement,
    components_partition,
    contract_edge,
    cycle,
    delete_edge,
    edge_subsets,
    enumerate_trees,
    is_isomorphic,
    path,
    relabel,
    stable_partitions,
)
from .lattice import Perm, SetPartition

ROUTES = ("stable", "delcon", "subsets", "broken")


def _check_degree(G: Graph) -> None:
    if G.d < 1:
        raise ValueError("graph needs at least one vertex")
    config.check(G.d, config.guards().degree, "vertex count")


# the four routes -------------------------------------------------------------

def y_stable(G: Graph) -> NCExpr:
    """Sum of m_{pi(P)} over stable partitions P (m basis)."""
    _check_degree(G)
    return NCExpr(G.d, Basis.M, {pi: 1 for pi in stable_partitions(G)})


@lru_cache(maxsize=1 << 16)
def _delcon_p(G: Graph) -> NCExpr:
    if G.has_loop():
        return NCExpr(G.d, Basis.P)
    nonloops = G.nonloop_edges()
    if not nonloops:
        return NCExpr(G.d, Basis.P, {SetPartition.finest(G.d): 1})
    e = nonloops[-1]
    deleted = _delcon_p(delete_edge(G, e.id))
    contracted = _delcon_p(contract_edge(G, e.id))
    return deleted - induce_at(contracted, e.u, e.v)


def _pivot_perm(d: int, k: int, l: int) -> Perm:
    # k -> d-1, l -> d, everything else keeps its relative order
    rest = [v for v in range(1, d + 1) if v not in (k, l)]
    images = [0] * d
    for new, old in enumerate(rest, start=1):
        images[old - 1] = new
    images[k - 1] = d - 1
    images[l - 1] = d
    return Perm(images)


@lru_cache(maxsize=1 << 14)
def _delcon_relabel_p(G: Graph) -> NCExpr:
    if G.has_loop():
        return NCExpr(G.d, Basis.P)
    nonloops = G.nonloop_edges()
    if not nonloops:
        return NCExpr(G.d, Basis.P, {SetPartition.finest(G.d): 1})
    e = nonloops[-1]
    delta = _pivot_perm(G.d, e.u, e.v)
    H = relabel(delta, G)
    yh = _delcon_relabel_p(delete_edge(H, e.id)) - induce(_delcon_relabel_p(contract_edge(H, e.id)))
    return act(delta.inverse(), yh)


def y_delcon(G: Graph, basis=Basis.M, pivot: str = "induce_at") -> NCExpr:
    """Deletion-contraction on the last non-loop edge.

    ``pivot="induce_at"`` repeats position k at position l for the edge
    {k, l}; ``pivot="relabel"`` first moves the edge to v_{d-1} v_d and uses
    the plain last-position induction.
    """
    _check_degree(G)
    if pivot == "induce_at":
        y = _delcon_p(G)
    elif pivot == "relabel":
        y = _delcon_relabel_p(G)
    else:
        raise ValueError(f"unknown pivot {pivot!r}")
    return to_basis(y, basis)


def y_subsets_p(G: Graph) -> NCExpr:
    """Signed sum of p_{pi(S)} over all edge subsets S."""
    _check_degree(G)
    out: dict[SetPartition, int] = {}
    for S in edge_subsets(G):
        pi = components_partition(G, S)
        out[pi] = out.get(pi, 0) + (-1) ** len(S)
    return NCExpr(G.d, Basis.P, out)


def y_broken_circuit_p(G: Graph) -> NCExpr:
    """Signed sum of p_{pi(S)} over the broken-circuit complex (list edge order)."""
    _check_degree(G)
    out: dict[SetPartition, int] = {}
    for S in broken_circuit_complex(G):
        pi = components_partition(G, S)
        out[pi] = out.get(pi, 0) + (-1) ** len(S)
    return NCExpr(G.d, Basis.P, out)


_ROUTE_FN: dict[str, Callable[[Graph], NCExpr]] = {
    "stable": y_stable,
    "delcon": lambda G: y_delcon(G, Basis.P),
    "subsets": y_subsets_p,
    "broken": y_broken_circuit_p,
}


@dataclass
class YResult:
    graph: Graph
    expr: NCExpr
    provenance: str

    def to_json(self) -> dict:
        out = self.expr.to_json()
        out["provenance"] = self.provenance
        out["graph"] = self.graph.to_json()
        return out


def compute_y(G: Graph, basis=Basis.M, route: str = "delcon") -> YResult:
    if route not in _ROUTE_FN:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")
    return YResult(G, to_basis(_ROUTE_FN[route](G), basis), route)


def all_routes(G: Graph) -> dict[str, NCExpr]:
    """Y_G by every route, all in the m basis."""
    return {r: to_basis(fn(G), Basis.M) for r, fn in _ROUTE_FN.items()}


def routes_agree(G: Graph, edge_orders: int = 0, rng: random.Random | None = None) -> bool:
    """Compare all four routes; optionally rerun the broken-circuit route on shuffled edge orders."""
    ys = all_routes(G)
    ref = ys["stable"]
    if any(y != ref for y in ys.values()):
        return False
    rng = rng or random.Random(0)
    ids = [e.id for e in G.edges]
    for _ in range(edge_orders):
        rng.shuffle(ids)
        if y_broken_circuit_p(G.reorder_edges(ids)) != ref:
            return False
    return True


@lru_cache(maxsize=1 << 12)
def y_e(G: Graph) -> NCExpr:
    """Y_G in the e basis (cached)."""
    _check_degree(G)
    return to_basis(_delcon_p(G), Basis.E)


# commutative image, polynomial, sinks --------------------------------------------

def x_commutative(G: Graph, basis=Basis.E) -> CExpr:
    basis = Basis.parse(basis)
    y = y_e(G) if basis == Basis.E else y_delcon(G, basis)
    return commutative_image(y)


def chromatic_polynomial(G: Graph) -> UniPoly:
    return specialize_ones(y_delcon(G, Basis.P))


def _as_number(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def unique_sink_count_via_e(G: Graph):
    """(d-1)! times the coefficient of e_{[d]} in Y_G."""
    c = y_e(G).coeff(SetPartition.coarsest(G.d))
    return _as_number(math.factorial(G.d - 1) * c)


def sink_distribution_via_e(G: Graph) -> dict[int, object]:
    """j -> sum of the commutative e-coefficients over shapes with j parts."""
    out: dict[int, Fraction] = {}
    for lam, c in x_commutative(G, Basis.E).terms.items():
        out[len(lam)] = out.get(len(lam), 0) + c
    return {j: _as_number(c) for j, c in sorted(out.items()) if c}


# congruence classes ----------------------------------------------------------------

def e_class_expansion(G: Graph, i: int | None = None) -> EClassExpr:
    return amalgamate(y_e(G), G.d if i is None else i)


def is_e_class_positive(G: Graph, i: int | None = None) -> bool:
    return e_class_expansion(G, i).is_nonneg()


@dataclass
class SearchResult:
    witness: tuple[Perm, int] | None
    tried: int
    exhaustive: bool


def search_positive_labeling(G: Graph, budget: int | None = None,
                             use_relabeling_identity: bool = True) -> SearchResult:
    """Look for a labeling and a marked index with nonnegative class coefficients.

    Relabeling by delta and marking i gives the same classes as the original
    labeling marked at delta^{-1}(i), so with ``use_relabeling_identity`` the
    identity labeling over all i already settles the question.  Without it,
    up to ``budget`` permutations (default all d! when d <= 7) are tried.
    """
    d = G.d
    ye = y_e(G)
    if budget is None:
        budget = math.factorial(d) if d <= 7 else 5040
    perms = permutations(range(1, d + 1))
    if use_relabeling_identity:
        perms = islice(perms, 1)
    tried = 0
    for images in islice(perms, budget):
        delta = Perm(images)
        tried += 1
        moved = act(delta, ye)
        for i in (d, *range(1, d)):
            if amalgamate(moved, i).is_nonneg():
                return SearchResult((delta, i), tried, True)
    exhaustive = use_relabeling_identity or tried == math.factorial(d)
    return SearchResult(None, tried, exhaustive)


# closed forms for families ------------------------------------------------------------

def _grow(lam: tuple, b: int, add: int, *new_parts: int) -> tuple:
    parts = list(lam)
    parts.remove(b)
    parts.append(b + add)
    parts.extend(p for p in new_parts if p > 0)
    return tuple(sorted(parts, reverse=True))


def closed_form_kd_minus_e(d: int) -> EClassExpr:
    """Classes of K_d minus v_{d-1}v_d modulo d."""
    if d < 2:
        raise ValueError("needs d >= 2")
    return EClassExpr(d, d, {
        ((d,), d): Fraction(d - 2, d - 1),
        ((d - 1, 1), 1): Fraction(1, d - 1),
    })


def closed_form_x_kd_minus_e(d: int) -> CExpr:
    if d < 2:
        raise ValueError("needs d >= 2")
    f = math.factorial(d - 2)
    return CExpr(d, Basis.E, {(d,): d * (d - 2) * f, (d - 1, 1): f})


def cycle_classes_from_path(path_classes: EClassExpr) -> EClassExpr:
    """Move every path class to the cycle class one bigger in the marked block."""
    d = path_classes.degree
    out = {}
    for (lam, b), c in path_classes.terms.items():
        key = (_grow(lam, b, 1), b + 1)
        out[key] = out.get(key, 0) + c
    return EClassExpr(d + 1, d + 1, out)


def path_cycle_relation_check(d: int) -> bool:
    """Classes of C_{d+1} mod d+1 are the classes of P_d mod d with the marked block grown."""
    predicted = cycle_classes_from_path(e_class_expansion(path(d), d))
    return predicted == e_class_expansion(cycle(d + 1), d + 1)


def attach_km_closed_form(classes: EClassExpr, m: int) -> EClassExpr:
    """Classes of Y_{G+K_m} modulo d+m-1 from the classes of Y_G modulo d."""
    if m < 2:
        raise ValueError("attach_km_closed_form needs m >= 2")
    d = classes.degree
    if classes.marked != d:
        raise ValueError("classes must be taken modulo the last vertex")
    k = m - 1
    out: dict = {}
    for (lam, b), c in classes.terms.items():
        for i in range(k):
            w = c * Fraction(falling(k - 1, i), rising(b, i + 1))
            hat = (_grow(lam, b, i, k - i), k - i)
            bar = (_grow(lam, b, i + 1, k - i - 1), b + i + 1)
            out[hat] = out.get(hat, 0) + w * (b - k + i)
            out[bar] = out.get(bar, 0) + w * (i + 1)
    return EClassExpr(d + k, d + k, out)


def induce_power_closed_form(classes: EClassExpr, m: int) -> EClassExpr:
    """Classes of Y_{G+K_m} induced from position d to d+m, modulo d+m."""
    if m < 1:
        raise ValueError("needs m >= 1")
    d = classes.degree
    if classes.marked != d:
        raise ValueError("classes must be taken modulo the last vertex")
    out: dict = {}
    for (lam, b), c in classes.terms.items():
        for i in range(m):
            w = c * Fraction(falling(m - 1, i), rising(b, i + 1))
            first = (_grow(lam, b, i, m - i), m - i)
            second = (_grow(lam, b, i + 1, m - i - 1), b + i + 1)
            out[first] = out.get(first, 0) + w
            out[second] = out.get(second, 0) - w
    return EClassExpr(d + m, d + m, out)


def induce_power_scratch(G: Graph, m: int) -> EClassExpr:
    """Same quantity as :func:`induce_power_closed_form`, computed directly."""
    d = G.d
    y = y_delcon(attach_complete(G, m), Basis.P)
    return amalgamate(to_basis(induce_at(y, d, d + m), Basis.E), d + m)


def jk_equivalence_check(G: Graph, m: int, j: int, k: int) -> bool:
    """Y_{G+K_m} induced d -> d+j and d -> d+k agree modulo d."""
    if not 1 <= j < k <= m:
        raise ValueError("needs 1 <= j < k <= m")
    d = G.d
    y = y_delcon(attach_complete(G, m), Basis.P)
    a = to_basis(induce_at(y, d, d + j), Basis.E)
    b = to_basis(induce_at(y, d, d + k), Basis.E)
    return amalgamate(a, d) == amalgamate(b, d)


def combine_check(G: Graph, i: int, j: int) -> bool:
    """Y_G induced i -> d+1 agrees with Y_{(i j)G} induced j -> d+1 modulo d+1."""
    d = G.d
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError("i and j must be vertices")
    swapped = relabel(Perm.transposition(d, i, j), G)
    a = to_basis(induce_at(y_delcon(G, Basis.P), i, d + 1), Basis.E)
    b = to_basis(induce_at(y_delcon(swapped, Basis.P), j, d + 1), Basis.E)
    return amalgamate(a, d + 1) == amalgamate(b, d + 1)


def attach_diamond_positivity_check(G: Graph) -> bool:
    """For G positive modulo its last vertex, is G+D positive modulo its last vertex?"""
    if not is_e_class_positive(G):
        raise ValueError("G is not class-positive modulo its last vertex")
    H = attach_diamond(G)
    return is_e_class_positive(H)


# reconstruction and trees -------------------------------------------------------------

def reconstruct_from_y(y: NCExpr, d: int | None = None) -> Graph:
    """Recover a simple graph from its Y (complement of the co-block graph)."""
    y = to_basis(y, Basis.M)
    d = y.degree if d is None else d
    if d != y.degree:
        raise ValueError(f"degree mismatch: {d} != {y.degree}")
    together = set()
    for pi in y.terms:
        for b in pi.blocks:
            for n, u in enumerate(b):
                for v in b[n + 1:]:
                    together.add((u, v))
    G = complement(Graph(d, sorted(together)))
    if y_stable(G) != y:
        raise ValueError("expression is not Y of any simple graph")
    return G


def class_signature(G: Graph) -> frozenset:
    """Set of class expansions over all marked indices; invariant under relabeling."""
    ye = y_e(G)
    return frozenset(amalgamate(ye, i) for i in range(1, G.d + 1))


@dataclass
class TreeReport:
    d: int
    trees: list[Graph]
    x_distinct: bool
    x_collisions: list[tuple[int, int]]
    y_distinct: bool
    reconstructed: bool
    class_collisions: list[tuple[int, int]] | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "trees": [t.to_json() for t in self.trees],
            "x_distinct": self.x_distinct,
            "x_collisions": self.x_collisions,
            "y_distinct": self.y_distinct,
            "reconstructed": self.reconstructed,
            "class_collisions": self.class_collisions,
        }


def tree_experiment(d: int, with_classes: bool = False) -> TreeReport:
    trees = enumerate_trees(d)
    xs = [commutative_image(y_delcon(T, Basis.P)) for T in trees]
    ys = [y_stable(T) for T in trees]
    pairs = [(a, b) for a in range(len(trees)) for b in range(a + 1, len(trees))]
    x_coll = [(a, b) for a, b in pairs if xs[a] == xs[b]]
    y_coll = [(a, b) for a, b in pairs if ys[a] == ys[b]]
    rebuilt = all(is_isomorphic(reconstruct_from_y(y), T) for y, T in zip(ys, trees))
    cls = None
    if with_classes:
        sigs = [class_signature(T) for T in trees]
        cls = [(a, b) for a, b in pairs if sigs[a] == sigs[b]]
    return TreeReport(d, trees, not x_coll, x_coll, not y_coll, rebuilt, cls)
