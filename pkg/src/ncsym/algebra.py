"""Symmetric functions in noncommuting variables, indexed by set partitions.

An :class:`NCExpr` is a homogeneous, exact-rational combination of one of the
three bases m (monomial), p (power sum) or e (elementary).  Coefficients are
:class:`fractions.Fraction` and zero terms are always pruned.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping

from . import config
from .lattice import (
    Perm,
    SetPartition,
    apply_perm,
    enumerate_partitions,
    factorial_constant,
    aut_constant,
    insert_into_block_of_last,
    insert_repeat,
    lower_interval,
    meet,
    mobius,
    mobius_from_bottom,
    shape,
    shift_union,
    upper_interval,
)


class Basis(str, enum.Enum):
    M = "m"
    P = "p"
    E = "e"

    @classmethod
    def parse(cls, value) -> "Basis":
        if isinstance(value, Basis):
            return value
        return cls(str(value).lower())


def _fmt_coeff(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    body = "" if a == 1 else f"{a}·"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


def _render(items, label: Callable[[object], str]) -> str:
    if not items:
        return "0"
    out = []
    for n, (key, c) in enumerate(items):
        out.append(_fmt_coeff(c, n == 0) + label(key))
    return "".join(out)


class NCExpr:
    """Sparse linear combination of basis elements of one degree.

    Equality across different bases converts the right operand first, so
    ``p == m`` compares the underlying functions.
    """

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis, terms: Mapping[SetPartition, object] | None = None):
        self.degree = degree
        self.basis = Basis.parse(basis)
        clean: dict[SetPartition, Fraction] = {}
        for pi, c in (terms or {}).items():
            if pi.degree != degree:
                raise ValueError(f"term {pi} has degree {pi.degree}, expected {degree}")
            c = Fraction(c)
            if c:
                clean[pi] = c
        self.terms = clean

    @classmethod
    def zero(cls, degree: int, basis) -> "NCExpr":
        return cls(degree, basis)

    def coeff(self, pi) -> Fraction:
        if isinstance(pi, str):
            pi = SetPartition.from_string(pi)
        return self.terms.get(pi, Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> set[SetPartition]:
        return set(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check_compatible(self, other: "NCExpr") -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} != {other.degree}")
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis.value} vs {other.basis.value}; convert first")

    def __add__(self, other: "NCExpr") -> "NCExpr":
        self._check_compatible(other)
        out = dict(self.terms)
        for pi, c in other.terms.items():
            out[pi] = out.get(pi, 0) + c
        return NCExpr(self.degree, self.basis, out)

    def __neg__(self) -> "NCExpr":
        return NCExpr(self.degree, self.basis, {pi: -c for pi, c in self.terms.items()})

    def __sub__(self, other: "NCExpr") -> "NCExpr":
        return self + (-other)

    def __mul__(self, scalar) -> "NCExpr":
        if isinstance(scalar, NCExpr):
            return NotImplemented
        s = Fraction(scalar)
        return NCExpr(self.degree, self.basis, {pi: s * c for pi, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCExpr):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if other.basis != self.basis:
            other = to_basis(other, self.basis)
        return self.terms == other.terms

    __hash__ = None  # mutable-looking value semantics; compare, don't hash

    def to_basis(self, target) -> "NCExpr":
        return to_basis(self, target)

    def __str__(self) -> str:
        b = self.basis.value
        return _render(self.items(), lambda pi: f"{b}{{{pi}}}")

    def __repr__(self) -> str:
        return f"NCExpr({self.degree}, '{self.basis.value}', {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis.value,
            "terms": [{"partition": str(pi), "coeff": str(c)} for pi, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NCExpr":
        terms = {}
        for t in data["terms"]:
            pi = SetPartition.from_json(t["partition"])
            terms[pi] = terms.get(pi, 0) + Fraction(t["coeff"])
        return cls(int(data["degree"]), data["basis"], terms)


def basis_element(basis, pi) -> NCExpr:
    if isinstance(pi, str):
        pi = SetPartition.from_string(pi)
    return NCExpr(pi.degree, basis, {pi: 1})


def m(pi) -> NCExpr:
    return basis_element(Basis.M, pi)


def p(pi) -> NCExpr:
    return basis_element(Basis.P, pi)


def e(pi) -> NCExpr:
    return basis_element(Basis.E, pi)


# change of basis ------------------------------------------------------------

Image = tuple  # tuple of (SetPartition, coefficient) pairs


@lru_cache(maxsize=None)
def _p_in_m(pi: SetPartition) -> Image:
    return tuple((s, 1) for s in upper_interval(pi))


@lru_cache(maxsize=None)
def _m_in_p(pi: SetPartition) -> Image:
    return tuple((s, mobius(pi, s)) for s in upper_interval(pi))


@lru_cache(maxsize=None)
def _e_in_p(pi: SetPartition) -> Image:
    return tuple((s, mobius_from_bottom(s)) for s in lower_interval(pi))


@lru_cache(maxsize=None)
def _p_in_e(pi: SetPartition) -> Image:
    scale = Fraction(1, mobius_from_bottom(pi))
    return tuple((s, scale * mobius(s, pi)) for s in lower_interval(pi))


def _linear_map(x: NCExpr, basis, degree: int, image: Callable[[SetPartition], Iterable]) -> NCExpr:
    out: dict[SetPartition, Fraction] = {}
    for pi, c in x.terms.items():
        for s, k in image(pi):
            out[s] = out.get(s, 0) + c * k
    return NCExpr(degree, basis, out)


_DIRECT = {
    (Basis.M, Basis.P): _m_in_p,
    (Basis.P, Basis.M): _p_in_m,
    (Basis.E, Basis.P): _e_in_p,
    (Basis.P, Basis.E): _p_in_e,
}


def to_basis(x: NCExpr, target) -> NCExpr:
    """Rewrite ``x`` in the ``target`` basis; m <-> e goes through p."""
    target = Basis.parse(target)
    if x.basis == target:
        return x
    direct = _DIRECT.get((x.basis, target))
    if direct is not None:
        return _linear_map(x, target, x.degree, direct)
    return to_basis(to_basis(x, Basis.P), target)


def e_to_m_by_definition(x: NCExpr) -> NCExpr:
    """e_pi = sum of m_sigma over sigma with sigma meet pi = 0-hat."""
    if x.basis != Basis.E:
        raise ValueError("expected an e-basis expression")
    bottom = SetPartition.finest(x.degree)
    everything = list(enumerate_partitions(x.degree)) if x.degree else []

    def image(pi):
        return [(s, 1) for s in everything if meet(s, pi) == bottom]

    return _linear_map(x, Basis.M, x.degree, image)


def m_to_e_by_inversion(x: NCExpr) -> NCExpr:
    """m_pi = sum_{tau >= pi} mu(pi,tau)/mu(0,tau) sum_{sigma <= tau} mu(sigma,tau) e_sigma."""
    if x.basis != Basis.M:
        raise ValueError("expected an m-basis expression")

    def image(pi):
        for tau in upper_interval(pi):
            w = Fraction(mobius(pi, tau), mobius_from_bottom(tau))
            for sigma in lower_interval(tau):
                yield sigma, w * mobius(sigma, tau)

    return _linear_map(x, Basis.E, x.degree, image)


# induction operators --------------------------------------------------------

def _termwise(x: NCExpr, degree: int, f: Callable[[SetPartition], SetPartition]) -> NCExpr:
    return _linear_map(x, x.basis, degree, lambda pi: ((f(pi), 1),))


@lru_cache(maxsize=None)
def _e_induced_changeup(pi: SetPartition) -> Image:
    out: dict[SetPartition, Fraction] = {}
    for sigma in lower_interval(pi):
        up = insert_into_block_of_last(sigma)
        w = Fraction(mobius_from_bottom(sigma), mobius_from_bottom(up))
        for tau in lower_interval(up):
            out[tau] = out.get(tau, 0) + w * mobius(tau, up)
    return tuple(out.items())


def induce(x: NCExpr, route: str = "p") -> NCExpr:
    """The operator that doubles the last variable of every word (degree d -> d+1).

    On m and p it sends pi to pi+(d+1).  On e the default ``route="p"``
    converts through the power sums; ``route="changeup"`` uses the closed
    double-Möbius sum instead.
    """
    if x.degree < 1:
        raise ValueError("induce needs degree >= 1")
    if x.basis in (Basis.M, Basis.P):
        return _termwise(x, x.degree + 1, insert_into_block_of_last)
    if route == "changeup":
        return _linear_map(x, Basis.E, x.degree + 1, _e_induced_changeup)
    if route != "p":
        raise ValueError(f"unknown route {route!r}")
    return to_basis(induce(to_basis(x, Basis.P)), Basis.E)


def induce_at(x: NCExpr, k: int, l: int) -> NCExpr:
    """Repeat the variable in position k again at position l (k < l <= d+1)."""
    d = x.degree
    if not (1 <= k < l <= d + 1):
        raise ValueError(f"need 1 <= k < l <= {d + 1}, got k={k}, l={l}")
    if x.basis == Basis.E:
        return to_basis(induce_at(to_basis(x, Basis.P), k, l), Basis.E)
    return _termwise(x, d + 1, lambda pi: insert_repeat(pi, k, l))


def act(delta: Perm, x: NCExpr) -> NCExpr:
    """Position action: delta . b_pi = b_{delta(pi)} in every basis."""
    if delta.degree != x.degree:
        raise ValueError(f"degree mismatch: {delta.degree} != {x.degree}")
    return _termwise(x, x.degree, lambda pi: apply_perm(delta, pi))


def disjoint_product(a: NCExpr, b: NCExpr) -> NCExpr:
    """Concatenation product, index sigma | tau shifted.  p and e bases only."""
    if a.basis != b.basis:
        raise ValueError("both factors must be in the same basis")
    if a.basis == Basis.M:
        raise ValueError("the shift-union product is not valid on m; convert to p or e first")
    out: dict[SetPartition, Fraction] = {}
    for s, c in a.terms.items():
        for t, k in b.terms.items():
            key = shift_union(s, t)
            out[key] = out.get(key, 0) + c * k
    return NCExpr(a.degree + b.degree, a.basis, out)


# commutative image and specialization -----------------------------------------

class CExpr:
    """Commutative symmetric function in one basis, keyed by integer partitions."""

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis, terms: Mapping[tuple, object] | None = None):
        self.degree = degree
        self.basis = Basis.parse(basis)
        clean = {}
        for lam, c in (terms or {}).items():
            lam = tuple(sorted(lam, reverse=True))
            if sum(lam) != degree:
                raise ValueError(f"{lam} is not a partition of {degree}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    def coeff(self, lam) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CExpr):
            return NotImplemented
        return (self.degree, self.basis, self.terms) == (other.degree, other.basis, other.terms)

    def __hash__(self) -> int:
        return hash((self.degree, self.basis, frozenset(self.terms.items())))

    def __str__(self) -> str:
        b = self.basis.value
        return _render(self.items(), lambda lam: f"{b}({','.join(map(str, lam))})")

    def __repr__(self) -> str:
        return f"CExpr({self.degree}, '{self.basis.value}', {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis.value,
            "terms": [{"shape": list(lam), "coeff": str(c)} for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CExpr":
        return cls(int(data["degree"]), data["basis"],
                   {tuple(t["shape"]): Fraction(t["coeff"]) for t in data["terms"]})


_COMMUTE = {
    Basis.M: aut_constant,
    Basis.P: lambda pi: 1,
    Basis.E: factorial_constant,
}


def commutative_image(x: NCExpr) -> CExpr:
    """Let the variables commute: m_pi -> |pi| m_lambda, p_pi -> p_lambda, e_pi -> pi! e_lambda."""
    mult = _COMMUTE[x.basis]
    out: dict[tuple, Fraction] = {}
    for pi, c in x.terms.items():
        lam = shape(pi)
        out[lam] = out.get(lam, 0) + c * mult(pi)
    return CExpr(x.degree, x.basis, out)


class UniPoly:
    """Univariate polynomial in n with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def n(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def falling(cls, k: int) -> "UniPoly":
        """n(n-1)...(n-k+1)."""
        out = cls([1])
        for j in range(k):
            out = out * cls([-j, 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, n):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coefficient(i) + other.coefficient(i) for i in range(k))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-1) * other

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            s = Fraction(other)
            return UniPoly(c * s for c in self.coeffs)
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            a = abs(c)
            body = str(a) if (i == 0 or a != 1) else ""
            if body and mono and a.denominator != 1:
                body = f"({body})"
            term = body + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append((" - " if c < 0 else " + ") + term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"


@lru_cache(maxsize=None)
def _special_m(k: int) -> UniPoly:
    return UniPoly.falling(k)


@lru_cache(maxsize=None)
def _special_p(k: int) -> UniPoly:
    return UniPoly([0] * k + [1])


@lru_cache(maxsize=None)
def _special_e(lam: tuple) -> UniPoly:
    out = UniPoly([1])
    for part in lam:
        out = out * UniPoly.falling(part)
    return out


def specialize_ones(x: NCExpr) -> UniPoly:
    """Set x_1 = ... = x_n = 1 and the remaining variables to 0."""
    out = UniPoly()
    for pi, c in x.terms.items():
        if x.basis == Basis.M:
            poly = _special_m(len(pi))
        elif x.basis == Basis.P:
            poly = _special_p(len(pi))
        else:
            poly = _special_e(shape(pi))
        out = out + poly * c
    return out


# ground-truth word expansion ---------------------------------------------------

def _word_in(basis: Basis, pi: SetPartition, word: tuple) -> bool:
    idx = pi.block_index()
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            same_block = idx[a + 1] == idx[b + 1]
            same_letter = word[a] == word[b]
            if basis == Basis.M and same_block != same_letter:
                return False
            if basis == Basis.P and same_block and not same_letter:
                return False
            if basis == Basis.E and same_block and same_letter:
                return False
    return True


def expand_words(x: NCExpr, n_vars: int) -> dict[tuple, Fraction]:
    """Truncate the series to x_1..x_{n_vars}; keys are words (i_1, ..., i_d)."""
    if n_vars < 1:
        raise ValueError("n_vars must be positive")
    config.check(n_vars ** x.degree, config.guards().words, "n_vars**degree")
    out: dict[tuple, Fraction] = {}
    for word in product(range(1, n_vars + 1), repeat=x.degree):
        c = sum((k for pi, k in x.terms.items() if _word_in(x.basis, pi, word)), Fraction(0))
        if c:
            out[word] = c
    return out


# congruence classes -----------------------------------------------------------

ClassKey = tuple  # (shape, size of the block containing the marked index)


def class_key(pi: SetPartition, i: int) -> ClassKey:
    return (shape(pi), len(pi.block_of(i)))


class EClassExpr:
    """e-expansion amalgamated over congruence classes modulo a marked index."""

    __slots__ = ("degree", "marked", "terms")

    def __init__(self, degree: int, marked: int, terms: Mapping[ClassKey, object] | None = None):
        if not 1 <= marked <= degree:
            raise ValueError(f"marked index {marked} outside [1..{degree}]")
        self.degree = degree
        self.marked = marked
        clean: dict[ClassKey, Fraction] = {}
        for (lam, b), c in (terms or {}).items():
            lam = tuple(sorted(lam, reverse=True))
            if sum(lam) != degree or b not in lam:
                raise ValueError(f"bad class key {(lam, b)} for degree {degree}")
            clean[(lam, b)] = clean.get((lam, b), 0) + Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    def coeff(self, lam, b) -> Fraction:
        return self.terms.get((tuple(lam), b), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0]))

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def __add__(self, other: "EClassExpr") -> "EClassExpr":
        if (self.degree, self.marked) != (other.degree, other.marked):
            raise ValueError("class expressions live modulo different indices")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return EClassExpr(self.degree, self.marked, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EClassExpr):
            return NotImplemented
        return (self.degree, self.marked, self.terms) == (other.degree, other.marked, other.terms)

    def __hash__(self) -> int:
        return hash((self.degree, self.marked, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return _render(self.items(),
                       lambda k: f"e({','.join(map(str, k[0]))}|{k[1]})")

    def __repr__(self) -> str:
        return f"EClassExpr({self.degree}, mod {self.marked}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "marked": self.marked,
            "classes": [{"shape": list(lam), "marked_block": b, "coeff": str(c)}
                        for (lam, b), c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EClassExpr":
        return cls(int(data["degree"]), int(data["marked"]),
                   {(tuple(c["shape"]), int(c["marked_block"])): Fraction(c["coeff"])
                    for c in data["classes"]})


def amalgamate(x: NCExpr, i: int) -> EClassExpr:
    """Sum e-coefficients over classes (shape, |block containing i|)."""
    if x.basis != Basis.E:
        raise ValueError("amalgamate needs an e-basis expression")
    out: dict[ClassKey, Fraction] = {}
    for pi, c in x.terms.items():
        k = class_key(pi, i)
        out[k] = out.get(k, 0) + c
    return EClassExpr(x.degree, i, out)


def is_class_nonneg(classes: EClassExpr) -> bool:
    return classes.is_nonneg()


def falling(m: int, i: int) -> int:
    """m(m-1)...(m-i+1)."""
    return math.prod(range(m - i + 1, m + 1)) if i > 0 else 1


def rising(m: int, i: int) -> int:
    """m(m+1)...(m+i-1)."""
    return math.prod(range(m, m + i)) if i > 0 else 1
