"""Lattice-ordered abelian groups built from finite chains.

A chain C with top element 1 generates a totally ordered group whose elements
are pairs (m, a): integer m counts whole copies of the chain, a is an offset
strictly below the top.  Addition carries: if the offsets already saturate
(a oplus b = top), the copy index bumps by one and the offset restarts at
a odot b.  Negation reflects: -(m, a) = (-m-1, neg a), renormalized when the
offset is 0.  The order is lexicographic (copy index first, then the chain
order on offsets), which makes the group totally ordered.

Products of finitely many such fiber groups, with a coordinatewise order and
a distinguished strictly positive unit u, are the ambient groups everything
else in this package lives in.  All integer arithmetic here is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InternalInvariantError
from .mv_core import FiniteMVAlgebra, chain_rank, check_mv_axioms, is_totally_ordered

__all__ = [
    "ChangPair",
    "GroupElement",
    "ChangChainGroup",
    "ProductLuGroup",
    "make_product_group",
    "chang_arith",
    "abs_decompose",
    "unit_bound",
    "GammaSegment",
    "gamma_segment",
    "group_spectrum",
]


class ChangPair(NamedTuple):
    """One fiber element: copy index m, offset a (never the chain top)."""

    m: int
    a: int


GroupElement = tuple[ChangPair, ...]


class ChangChainGroup:
    """The totally ordered group of pairs over one finite chain."""

    def __init__(self, chain: FiniteMVAlgebra):
        if not is_totally_ordered(chain):
            raise ValueError("fiber groups are built over chains only")
        self.chain = chain
        self.top = chain.top
        rank = chain_rank(chain)
        self.rank = [int(r) for r in rank]
        inv = np.empty(chain.size, dtype=np.int64)
        inv[rank] = np.arange(chain.size)
        self.by_rank = [int(v) for v in inv]
        self.height = chain.size - 1  # rank of the top; copies have this many steps
        self._op = chain.oplus_rows
        self._od = chain.odot_rows
        self._ng = chain.neg_list

    # -- constructors ----------------------------------------------------

    @property
    def zero(self) -> ChangPair:
        return ChangPair(0, 0)

    @property
    def unit(self) -> ChangPair:
        """The class of the chain top: one whole copy."""
        return ChangPair(1, 0)

    def normalize(self, m: int, a: int) -> ChangPair:
        """Push a top offset into the copy index."""
        if a == self.top:
            return ChangPair(m + 1, 0)
        return ChangPair(m, a)

    def pair(self, m: int, a: int) -> ChangPair:
        if not 0 <= a < self.chain.size:
            raise ValueError("offset out of chain carrier")
        return self.normalize(m, a)

    # -- group and lattice operations ------------------------------------

    def add(self, x: ChangPair, y: ChangPair) -> ChangPair:
        s = self._op[x.a][y.a]
        if s == self.top:
            return ChangPair(x.m + y.m + 1, self._od[x.a][y.a])
        return ChangPair(x.m + y.m, s)

    def neg(self, x: ChangPair) -> ChangPair:
        if x.a == 0:
            return ChangPair(-x.m, 0)
        return ChangPair(-x.m - 1, self._ng[x.a])

    def sub(self, x: ChangPair, y: ChangPair) -> ChangPair:
        return self.add(x, self.neg(y))

    def leq(self, x: ChangPair, y: ChangPair) -> bool:
        if x.m != y.m:
            return x.m < y.m
        return self.rank[x.a] <= self.rank[y.a]

    def meet(self, x: ChangPair, y: ChangPair) -> ChangPair:
        return x if self.leq(x, y) else y

    def join(self, x: ChangPair, y: ChangPair) -> ChangPair:
        return y if self.leq(x, y) else x

    def mul(self, k: int, x: ChangPair) -> ChangPair:
        """k-fold sum by repeated addition (k may be negative)."""
        if k < 0:
            return self.mul(-k, self.neg(x))
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, x)
        return acc

    # -- linearization: reserved for oracles and enumeration -------------

    def phi(self, x: ChangPair) -> int:
        """Order iso onto Z: m copies of `height` steps plus the offset rank.

        The group operations never call this; it exists so tests can compare
        the pair arithmetic against plain integers, and so enumerations can
        bound ranges.
        """
        return x.m * self.height + self.rank[x.a]

    def pair_of_phi(self, t: int) -> ChangPair:
        m, r = divmod(t, self.height)
        return ChangPair(m, self.by_rank[r])

    def interval(self, lo: ChangPair, hi: ChangPair) -> list[ChangPair]:
        """All pairs between lo and hi inclusive, ascending."""
        out = []
        for m in range(lo.m, hi.m + 1):
            for r in range(self.chain.size - 1):
                p = ChangPair(m, self.by_rank[r])
                if self.leq(lo, p) and self.leq(p, hi):
                    out.append(p)
        return out

    def __repr__(self) -> str:
        return f"ChangChainGroup(height={self.height})"


def chang_arith(group: ChangChainGroup, op: str, x: ChangPair, y: ChangPair | None = None):
    """Named dispatch over the pair operations (add/neg/sub/leq/meet/join)."""
    if op == "neg":
        return group.neg(x)
    if y is None:
        raise ValueError(f"operation {op!r} needs two arguments")
    fn = {
        "add": group.add,
        "sub": group.sub,
        "leq": group.leq,
        "meet": group.meet,
        "join": group.join,
    }.get(op)
    if fn is None:
        raise ValueError(f"unknown pair operation {op!r}")
    return fn(x, y)


class ProductLuGroup:
    """A finite product of chain groups with a strictly positive unit."""

    def __init__(self, fibers: Sequence[ChangChainGroup], u: GroupElement):
        if not fibers:
            raise ValueError("a product group needs at least one fiber")
        self.fibers = tuple(fibers)
        u = tuple(ChangPair(*p) for p in u)
        if len(u) != len(self.fibers):
            raise ValueError("unit must have one coordinate per fiber")
        for g, p in zip(self.fibers, u):
            if p != g.normalize(p.m, p.a):
                raise ValueError("unit coordinates must be normalized pairs")
            if not (g.leq(g.zero, p) and p != g.zero):
                raise ValueError("the unit must be strictly positive in every fiber")
        self.u = u

    @property
    def k(self) -> int:
        return len(self.fibers)

    @property
    def zero(self) -> GroupElement:
        return tuple(g.zero for g in self.fibers)

    def validate(self, x: GroupElement) -> GroupElement:
        if len(x) != self.k:
            raise ValueError("element arity does not match fiber count")
        return tuple(
            g.pair(p[0], p[1]) if not isinstance(p, ChangPair) else g.normalize(p.m, p.a)
            for g, p in zip(self.fibers, x)
        )

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple(g.add(a, b) for g, a, b in zip(self.fibers, x, y))

    def neg(self, x: GroupElement) -> GroupElement:
        return tuple(g.neg(a) for g, a in zip(self.fibers, x))

    def sub(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple(g.sub(a, b) for g, a, b in zip(self.fibers, x, y))

    def meet(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple(g.meet(a, b) for g, a, b in zip(self.fibers, x, y))

    def join(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple(g.join(a, b) for g, a, b in zip(self.fibers, x, y))

    def leq(self, x: GroupElement, y: GroupElement) -> bool:
        return all(g.leq(a, b) for g, a, b in zip(self.fibers, x, y))

    def mul(self, n: int, x: GroupElement) -> GroupElement:
        return tuple(g.mul(n, a) for g, a in zip(self.fibers, x))

    def window(self, bound: int) -> Iterator[GroupElement]:
        """All x with |x| <= bound * u, coordinatewise product enumeration."""
        per_fiber = []
        for g, up in zip(self.fibers, self.u):
            cap = g.mul(bound, up)
            per_fiber.append(g.interval(g.neg(cap), cap))
        return itertools.product(*per_fiber)

    def __repr__(self) -> str:
        heights = [g.height for g in self.fibers]
        return f"ProductLuGroup(heights={heights}, u={list(self.u)})"


def make_product_group(
    fibers: Sequence[ChangChainGroup], u: Sequence[tuple[int, int]]
) -> ProductLuGroup:
    coords = tuple(ChangPair(int(m), int(a)) for m, a in u)
    return ProductLuGroup(fibers, coords)


def abs_decompose(
    group: ProductLuGroup, x: GroupElement
) -> tuple[GroupElement, GroupElement, GroupElement]:
    """Split x into positive part, negative part, absolute value.

    The defining identities x = pos - neg and |x| = pos + neg are re-verified
    on every call; they are cheap and catch any drift in the pair arithmetic.
    """
    zero = group.zero
    pos = group.join(zero, x)
    neg_part = group.join(zero, group.neg(x))
    absolute = group.add(pos, neg_part)
    if group.sub(pos, neg_part) != x or not group.leq(zero, absolute):
        raise InternalInvariantError("absolute-value decomposition failed")
    return pos, neg_part, absolute


def unit_bound(group: ProductLuGroup, u: GroupElement, x: GroupElement) -> int:
    """Least n >= 0 with |x| <= n*u, found by adding u until it covers.

    Iterating additively keeps this a pure consumer of the pair arithmetic.
    Strict positivity of u in every fiber guarantees termination.
    """
    for g, up in zip(group.fibers, u):
        if not (g.leq(g.zero, up) and up != g.zero):
            raise ValueError("unit_bound needs a strictly positive u in every fiber")
    _, _, absolute = abs_decompose(group, x)
    n = 0
    for g, up, ap in zip(group.fibers, u, absolute):
        acc = g.zero
        steps = 0
        while not g.leq(ap, acc):
            acc = g.add(acc, up)
            steps += 1
        n = max(n, steps)
    return n


@dataclass(frozen=True)
class GammaSegment:
    """The unit segment [0, u] of a product group, packaged as an MV-algebra.

    `elements[i]` is the group element behind carrier index i; `index` is the
    inverse lookup; `fiber_values[f]` lists fiber f's segment values ascending
    (carrier indices decompose row-major over these lists, so index 0 is 0).
    """

    group: ProductLuGroup
    u: GroupElement
    algebra: FiniteMVAlgebra
    elements: tuple[GroupElement, ...]
    index: dict[GroupElement, int]
    fiber_values: tuple[tuple[ChangPair, ...], ...]

    def element_of(self, i: int) -> GroupElement:
        return self.elements[i]

    def index_of(self, x: GroupElement) -> int:
        return self.index[x]


def gamma_segment(group: ProductLuGroup, u: GroupElement | None = None) -> GammaSegment:
    """Carve the MV-algebra out of [0, u]: x oplus y = u meet (x + y),
    neg x = u - x.  Tables are assembled fiberwise (the operations act
    coordinatewise) and the finished algebra is re-checked against the MV
    laws before being returned.
    """
    if u is None:
        u = group.u
    u = group.validate(u)
    for g, p in zip(group.fibers, u):
        if not (g.leq(g.zero, p) and p != g.zero):
            raise ValueError("segment endpoint must be strictly positive per fiber")

    per_fiber: list[list[ChangPair]] = []
    add_tables: list[list[list[int]]] = []
    neg_tables: list[list[int]] = []
    for g, up in zip(group.fibers, u):
        values = g.interval(g.zero, up)
        idx = {p: i for i, p in enumerate(values)}
        t = len(values)
        add_cap = [[0] * t for _ in range(t)]
        for i, p in enumerate(values):
            for j, q in enumerate(values):
                add_cap[i][j] = idx[g.meet(up, g.add(p, q))]
        neg_t = [idx[g.sub(up, p)] for p in values]
        per_fiber.append(values)
        add_tables.append(add_cap)
        neg_tables.append(neg_t)

    sizes = [len(v) for v in per_fiber]
    total = int(np.prod(sizes))
    digits = np.array(np.unravel_index(np.arange(total), sizes))
    strides = [int(np.prod(sizes[i + 1 :])) for i in range(len(sizes))]
    oplus = np.zeros((total, total), dtype=np.int64)
    neg = np.zeros(total, dtype=np.int64)
    for f in range(len(sizes)):
        d = digits[f]
        add_arr = np.asarray(add_tables[f])
        neg_arr = np.asarray(neg_tables[f])
        oplus += strides[f] * add_arr[d[:, None], d[None, :]]
        neg += strides[f] * neg_arr[d]
    algebra = FiniteMVAlgebra(total, oplus, neg)
    report = check_mv_axioms(algebra)
    if not report.ok:
        raise InternalInvariantError(
            f"unit segment failed the MV laws: {report.violations[:3]}"
        )
    elements = tuple(itertools.product(*per_fiber))
    index = {x: i for i, x in enumerate(elements)}
    if elements[0] != group.zero or elements[-1] != u:
        raise InternalInvariantError("segment enumeration must run from 0 to u")
    return GammaSegment(
        group=group,
        u=u,
        algebra=algebra,
        elements=elements,
        index=index,
        fiber_values=tuple(tuple(v) for v in per_fiber),
    )


def group_spectrum(group: ProductLuGroup) -> list[frozenset[int]]:
    """Prime kernels in fiber order, each given by its zero-coordinate set.

    The ideal {x : x(i) = 0} is the kernel of the projection onto fiber i;
    quotienting by it leaves that one totally ordered fiber, which is what
    makes these exactly the primes among the coordinate ideals.
    """
    return [frozenset({i}) for i in range(group.k)]
