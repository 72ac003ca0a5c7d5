"""Ideals, prime ideals, quotients, and the subdirect embedding.

An ideal is a subset containing 0, downward closed, and closed under oplus.
In a finite algebra every ideal is the downset of a unique oplus-idempotent,
which is what makes the enumeration cheap: principal ideals are computed by
squaring up to the idempotent, and joins of ideals add the idempotents.

The spectrum is the set of proper prime ideals in a fixed canonical order
(ascending membership bitmask), so everything downstream that says "the j-th
fiber" is reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    make_product_many,
)

__all__ = [
    "Ideal",
    "Spectrum",
    "QuotientResult",
    "is_ideal",
    "ideal_violations",
    "enumerate_ideals",
    "ideals_by_subset_filter",
    "is_prime_ideal",
    "spectrum",
    "quotient",
    "canonical_embedding",
    "preimage_ideal",
    "restrict_morphism",
]

_SUBSET_ORACLE_CAP = 12


@dataclass(frozen=True)
class Ideal:
    algebra: FiniteMVAlgebra
    members: frozenset[int]

    @property
    def bitmask(self) -> int:
        m = 0
        for a in self.members:
            m |= 1 << a
        return m

    @property
    def proper(self) -> bool:
        return len(self.members) < self.algebra.size

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __repr__(self) -> str:
        return f"Ideal({sorted(self.members)})"


@dataclass(frozen=True)
class Spectrum:
    algebra: FiniteMVAlgebra
    primes: tuple[Ideal, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def index_of(self, members: frozenset[int]) -> int:
        for j, p in enumerate(self.primes):
            if p.members == members:
                return j
        raise KeyError(f"no prime with members {sorted(members)}")


def ideal_violations(algebra: FiniteMVAlgebra, members: frozenset[int]) -> list[str]:
    """Human-readable reasons a subset fails to be an ideal (empty if none)."""
    out = []
    if 0 not in members:
        out.append("does not contain 0")
    mask = np.zeros(algebra.size, dtype=bool)
    mask[list(members)] = True
    below = algebra.leq & mask[None, :]  # [x, y]: x <= y and y in members
    if not (~below | mask[:, None]).all():
        out.append("not downward closed")
    idx = sorted(members)
    if idx and not mask[algebra.oplus[np.ix_(idx, idx)]].all():
        out.append("not closed under oplus")
    return out


def is_ideal(algebra: FiniteMVAlgebra, members: frozenset[int]) -> bool:
    return not ideal_violations(algebra, members)


def _idempotent_above(algebra: FiniteMVAlgebra, a: int) -> int:
    """Least idempotent bounding every finite oplus-multiple of a."""
    rows = algebra.oplus_rows
    e = a
    while rows[e][e] != e:
        e = rows[e][e]
    return e


def _downset(algebra: FiniteMVAlgebra, e: int) -> frozenset[int]:
    return frozenset(int(x) for x in np.flatnonzero(algebra.leq[:, e]))


def enumerate_ideals(algebra: FiniteMVAlgebra) -> list[Ideal]:
    """All ideals, {0} and the improper one included, in bitmask order.

    Route: the principal ideal of each element (its oplus-closure, downward
    closed) is the downset of an idempotent; the set of principal ideals is
    then closed under pairwise join, which on idempotent generators is just
    oplus.  Finite carriers make the fixpoint immediate.
    """
    rows = algebra.oplus_rows
    gens = {_idempotent_above(algebra, a) for a in range(algebra.size)}
    changed = True
    while changed:
        changed = False
        for e in list(gens):
            for f in list(gens):
                g = rows[e][f]
                if g not in gens:
                    gens.add(g)
                    changed = True
    ideals = [Ideal(algebra, _downset(algebra, e)) for e in gens]
    ideals.sort(key=lambda i: i.bitmask)
    return ideals


def ideals_by_subset_filter(algebra: FiniteMVAlgebra) -> list[Ideal]:
    """Brute-force cross-check: filter all 2^size subsets by the invariants.

    Deliberately independent of enumerate_ideals.  Capped at carrier size 12.
    """
    s = algebra.size
    if s > _SUBSET_ORACLE_CAP:
        raise ValueError(f"subset oracle capped at size {_SUBSET_ORACLE_CAP}")
    leq = algebra.leq
    op = algebra.oplus
    found = []
    for bits in range(1, 1 << s):
        if not bits & 1:  # must contain 0
            continue
        members = [a for a in range(s) if bits >> a & 1]
        mask = np.zeros(s, dtype=bool)
        mask[members] = True
        if not (~(leq & mask[None, :]) | mask[:, None]).all():
            continue
        if not mask[op[np.ix_(members, members)]].all():
            continue
        found.append(Ideal(algebra, frozenset(members)))
    found.sort(key=lambda i: i.bitmask)
    return found


def is_prime_ideal(algebra: FiniteMVAlgebra, ideal: Ideal) -> bool:
    """Proper, and for every a, b at least one of a ominus b, b ominus a is in it."""
    bad = ideal_violations(algebra, ideal.members)
    if bad:
        raise ValueError("not an ideal: " + "; ".join(bad))
    if not ideal.proper:
        raise ValueError("primality is asked of proper ideals only")
    mask = np.zeros(algebra.size, dtype=bool)
    mask[list(ideal.members)] = True
    om = algebra.ominus
    return bool((mask[om] | mask[om.T]).all())


def spectrum(algebra: FiniteMVAlgebra) -> Spectrum:
    """Proper prime ideals in canonical (bitmask-ascending) order."""
    primes = [
        i
        for i in enumerate_ideals(algebra)
        if i.proper and is_prime_ideal(algebra, i)
    ]
    return Spectrum(algebra, tuple(primes))


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteMVAlgebra
    projection: MVMorphism
    class_of: tuple[int, ...]


def quotient(algebra: FiniteMVAlgebra, ideal: Ideal) -> QuotientResult:
    """Quotient by the congruence a ~ b iff (a ominus b) oplus (b ominus a) lies
    in the ideal.  Classes are indexed by first appearance, so the class of 0
    is 0 and quotients of identity congruences reuse the original indexing.
    """
    bad = ideal_violations(algebra, ideal.members)
    if bad:
        raise ValueError("not an ideal: " + "; ".join(bad))
    if not ideal.proper:
        raise ValueError("quotient by the improper ideal would be the excluded one-element algebra")
    mask = np.zeros(algebra.size, dtype=bool)
    mask[list(ideal.members)] = True
    om = algebra.ominus
    sym = algebra.oplus[om, om.T]
    rel = mask[sym]  # equivalence matrix
    _, first, inv = np.unique(rel, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    class_of = rank[inv]
    reps = first[order]
    k = len(reps)
    q_oplus = class_of[algebra.oplus[np.ix_(reps, reps)]]
    q_neg = class_of[algebra.neg[reps]]
    q = FiniteMVAlgebra(k, q_oplus, q_neg)
    proj = MVMorphism(algebra, q, tuple(int(c) for c in class_of))
    return QuotientResult(q, proj, tuple(int(c) for c in class_of))


def canonical_embedding(algebra: FiniteMVAlgebra) -> MVMorphism:
    """The map into the product of all prime quotients, components in spectrum
    order.  Injectivity is a property to check, not a construction guarantee.
    """
    sp = spectrum(algebra)
    if not sp.primes:
        raise ValueError("algebra has no proper prime ideals")
    quots = [quotient(algebra, p) for p in sp.primes]
    cod = make_product_many([q.quotient for q in quots])
    sizes = [q.quotient.size for q in quots]
    combined = np.zeros(algebra.size, dtype=np.int64)
    for j, q in enumerate(quots):
        stride = int(np.prod(sizes[j + 1 :]))
        combined += stride * np.asarray(q.class_of)
    return MVMorphism(algebra, cod, tuple(int(v) for v in combined))


def preimage_ideal(h: MVMorphism, ideal: Ideal) -> Ideal:
    """h^{-1} of an ideal of the codomain; prime pulls back to prime."""
    if ideal.algebra != h.cod:
        raise ValueError("ideal does not live in the morphism codomain")
    members = frozenset(a for a in range(h.dom.size) if h.map[a] in ideal.members)
    return Ideal(h.dom, members)


def restrict_morphism(h: MVMorphism, prime: Ideal) -> MVMorphism:
    """The induced map dom/h^{-1}(P) -> cod/P on quotient classes.

    Raises if the induced assignment is not constant on classes, which would
    signal a broken congruence rather than a legitimate outcome.
    """
    pre = preimage_ideal(h, prime)
    qd = quotient(h.dom, pre)
    qc = quotient(h.cod, prime)
    k = qd.quotient.size
    assignment = [-1] * k
    for a in range(h.dom.size):
        c = qd.class_of[a]
        target = qc.class_of[h.map[a]]
        if assignment[c] == -1:
            assignment[c] = target
        elif assignment[c] != target:
            raise RuntimeError("induced map not constant on congruence classes")
    return MVMorphism(qd.quotient, qc.quotient, tuple(assignment))
