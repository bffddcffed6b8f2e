"""Set partitions of [d], the refinement lattice and its Möbius function.

Partitions are stored canonically: each block sorted ascending, blocks
sorted by their minimum.  Elements are 1-based throughout.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from . import config

IntegerPartition = tuple  # weakly decreasing tuple of positive ints
Composition = tuple       # ordered tuple of positive ints


class SetPartition:
    """An immutable set partition of ``{1, ..., degree}``."""

    __slots__ = ("degree", "blocks", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], degree: int | None = None):
        bl = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bl):
            raise ValueError("blocks must be nonempty")
        bl.sort(key=lambda b: b[0])
        elements = [x for b in bl for x in b]
        if degree is None:
            degree = len(elements)
        if sorted(elements) != list(range(1, degree + 1)):
            raise ValueError(f"blocks {bl} do not partition [1..{degree}]")
        self.degree = degree
        self.blocks = tuple(bl)
        self._hash = hash((degree, self.blocks))

    # construction -------------------------------------------------------
    @classmethod
    def from_string(cls, s: str) -> "SetPartition":
        """Parse ``"13/2/4"``; use commas inside blocks once d >= 10 (``"1,10/2"``)."""
        s = s.strip()
        if not s:
            return cls([], 0)
        blocks = []
        for part in s.split("/"):
            part = part.strip()
            if "," in part:
                blocks.append([int(x) for x in part.split(",")])
            else:
                blocks.append([int(ch) for ch in part])
        return cls(blocks)

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        """Build from a restricted growth string (0-based block labels)."""
        blocks: dict[int, list[int]] = {}
        for pos, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(pos)
        return cls(blocks.values(), len(rgs))

    @classmethod
    def finest(cls, d: int) -> "SetPartition":
        return cls([[i] for i in range(1, d + 1)], d)

    @classmethod
    def coarsest(cls, d: int) -> "SetPartition":
        return cls([range(1, d + 1)] if d else [], d)

    @classmethod
    def from_json(cls, data) -> "SetPartition":
        if isinstance(data, str):
            return cls.from_string(data)
        return cls(data)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    # queries ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise ValueError(f"{i} is not in [1..{self.degree}]")

    def block_index(self) -> dict[int, int]:
        """Map element -> index of its block."""
        return {x: k for k, b in enumerate(self.blocks) for x in b}

    def rgs(self) -> tuple[int, ...]:
        idx = self.block_index()
        return tuple(idx[i] for i in range(1, self.degree + 1))

    def sort_key(self):
        return (len(self.blocks), self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.degree == other.degree and self.blocks == other.blocks

    def __lt__(self, other: "SetPartition") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        sep = "," if self.degree >= 10 else ""
        return "/".join(sep.join(str(x) for x in b) for b in self.blocks)

    def __repr__(self) -> str:
        return f"SetPartition('{self}')"


class Perm:
    """A permutation of ``{1, ..., d}``; ``images[i-1]`` is the image of ``i``."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, d: int) -> "Perm":
        return cls(range(1, d + 1))

    @classmethod
    def from_cycles(cls, d: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(1, d + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(images)

    @classmethod
    def transposition(cls, d: int, i: int, j: int) -> "Perm":
        return cls.from_cycles(d, (i, j)) if i != j else cls.identity(d)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition: ``(self * other)(i) == self(other(i))``."""
        _same_degree(self.degree, other.degree)
        return Perm(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


def _same_degree(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"degree mismatch: {a} != {b}")


# enumeration --------------------------------------------------------------

def _rgs(n: int) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(pos: int, top: int):
        if pos == n:
            yield a
            return
        for v in range(top + 2):
            a[pos] = v
            yield from rec(pos + 1, max(top, v))

    yield from rec(1, 0)


def set_partitions_of(elements: Sequence[int]) -> Iterator[list[list[int]]]:
    """All partitions of an arbitrary list of elements, as lists of blocks."""
    elements = list(elements)
    for a in _rgs(len(elements)):
        blocks: list[list[int]] = [[] for _ in range(max(a, default=-1) + 1)]
        for x, k in zip(elements, a):
            blocks[k].append(x)
        yield blocks


def enumerate_partitions(d: int) -> Iterator[SetPartition]:
    """Every element of the lattice of set partitions of [d], once each."""
    if d < 1:
        raise ValueError("d must be positive")
    config.check(d, config.guards().degree, "partition degree")
    for a in _rgs(d):
        yield SetPartition.from_rgs(a)


# order, meet, Möbius --------------------------------------------------------

def leq(sigma: SetPartition, pi: SetPartition) -> bool:
    """True iff every block of ``sigma`` lies inside a block of ``pi``."""
    _same_degree(sigma.degree, pi.degree)
    idx = pi.block_index()
    return all(len({idx[x] for x in b}) == 1 for b in sigma.blocks)


def meet(sigma: SetPartition, pi: SetPartition) -> SetPartition:
    _same_degree(sigma.degree, pi.degree)
    blocks = []
    for b in sigma.blocks:
        for c in pi.blocks:
            common = set(b).intersection(c)
            if common:
                blocks.append(common)
    return SetPartition(blocks, sigma.degree)


@lru_cache(maxsize=None)
def _signed_factorial(n: int) -> int:
    # mu(0,1) in the partition lattice on n points
    return (-1) ** (n - 1) * math.factorial(n - 1)


def mobius(sigma: SetPartition, tau: SetPartition) -> int:
    """Möbius function of the refinement lattice, by the block-product formula."""
    if not leq(sigma, tau):
        raise ValueError(f"mobius needs {sigma} <= {tau}")
    idx = tau.block_index()
    counts = [0] * len(tau.blocks)
    for b in sigma.blocks:
        counts[idx[b[0]]] += 1
    result = 1
    for c in counts:
        result *= _signed_factorial(c)
    return result


def mobius_from_bottom(pi: SetPartition) -> int:
    """mu(0-hat, pi)."""
    result = 1
    for b in pi.blocks:
        result *= _signed_factorial(len(b))
    return result


@lru_cache(maxsize=None)
def lower_interval(pi: SetPartition) -> tuple[SetPartition, ...]:
    """All sigma <= pi."""
    per_block = [list(set_partitions_of(b)) for b in pi.blocks]
    out = []
    for choice in product(*per_block):
        out.append(SetPartition([blk for parts in choice for blk in parts], pi.degree))
    return tuple(out)


@lru_cache(maxsize=None)
def upper_interval(pi: SetPartition) -> tuple[SetPartition, ...]:
    """All sigma >= pi."""
    out = []
    for merged in set_partitions_of(range(len(pi.blocks))):
        out.append(SetPartition(
            [[x for k in grp for x in pi.blocks[k]] for grp in merged], pi.degree))
    return tuple(out)


# shape statistics -----------------------------------------------------------

def shape(pi: SetPartition) -> IntegerPartition:
    return tuple(sorted((len(b) for b in pi.blocks), reverse=True))


def multiplicities(lam: IntegerPartition) -> dict[int, int]:
    r: dict[int, int] = {}
    for part in lam:
        r[part] = r.get(part, 0) + 1
    return r


def aut_constant(pi: SetPartition) -> int:
    """|pi| = r_1! r_2! ... where r_k counts blocks of size k."""
    return math.prod(math.factorial(r) for r in multiplicities(shape(pi)).values())


def factorial_constant(pi: SetPartition) -> int:
    """pi! = product of factorials of the block sizes."""
    return math.prod(math.factorial(len(b)) for b in pi.blocks)


# structural operations --------------------------------------------------------

def insert_into_block_of_last(pi: SetPartition) -> SetPartition:
    """pi + (d+1): put a new element d+1 into the block containing d."""
    d = pi.degree
    return SetPartition([b + (d + 1,) if d in b else b for b in pi.blocks], d + 1)


def new_singleton(pi: SetPartition) -> SetPartition:
    """pi / d+1."""
    d = pi.degree
    return SetPartition(pi.blocks + ((d + 1,),), d + 1)


def add_elements(pi: SetPartition, i: int) -> SetPartition:
    """pi + i: append d+1, ..., d+i to the block containing d."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    d = pi.degree
    extra = tuple(range(d + 1, d + i + 1))
    return SetPartition([b + extra if d in b else b for b in pi.blocks], d + i)


def append_block(pi: SetPartition, size: int) -> SetPartition:
    """Add one new block {d+1, ..., d+size}."""
    d = pi.degree
    if size == 0:
        return pi
    return SetPartition(pi.blocks + (tuple(range(d + 1, d + size + 1)),), d + size)


def shift_union(a: SetPartition, b: SetPartition) -> SetPartition:
    """Blocks of ``a`` together with the blocks of ``b`` shifted up by ``a.degree``."""
    off = a.degree
    return SetPartition(a.blocks + tuple(tuple(x + off for x in blk) for blk in b.blocks),
                        a.degree + b.degree)


def apply_perm(delta: Perm, pi: SetPartition) -> SetPartition:
    _same_degree(delta.degree, pi.degree)
    return SetPartition([[delta(x) for x in b] for b in pi.blocks], pi.degree)


def insert_repeat(pi: SetPartition, k: int, l: int) -> SetPartition:
    """Shift elements >= l up by one, then put l in the block of k (k < l)."""
    d = pi.degree
    if not (1 <= k < l <= d + 1):
        raise ValueError(f"need 1 <= k < l <= {d + 1}, got k={k}, l={l}")
    blocks = []
    for b in pi.blocks:
        nb = [x + 1 if x >= l else x for x in b]
        if k in b:
            nb.append(l)
        blocks.append(nb)
    return SetPartition(blocks, d + 1)


def enumerate_Palpha(pi: SetPartition, alpha: Composition, marked: int | None = None
                     ) -> Iterator[SetPartition]:
    """Partitions tau <= pi+(d+1) whose block sizes match ``alpha`` with the
    marked element (d+1 by default, or d) in the block of size ``alpha[0]``.
    """
    d = pi.degree
    alpha = tuple(alpha)
    if sum(alpha) != d + 1 or any(a < 1 for a in alpha):
        raise ValueError(f"alpha {alpha} is not a composition of {d + 1}")
    if marked is None:
        marked = d + 1
    if marked not in (d, d + 1):
        raise ValueError("marked must be d or d+1")
    rest = sorted(alpha[1:])
    for tau in lower_interval(insert_into_block_of_last(pi)):
        if len(tau) != len(alpha):
            continue
        mb = tau.block_of(marked)
        if len(mb) != alpha[0]:
            continue
        if sorted(len(b) for b in tau.blocks if b is not mb) == rest:
            yield tau


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for tail in compositions(n - first):
            yield (first,) + tail
