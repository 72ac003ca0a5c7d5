"""Finite MV-algebras as integer Cayley tables.

An algebra is a carrier {0, .., size-1} together with a binary table for the
truncated addition ``oplus`` and a unary table for the involution ``neg``.
Element 0 is always the bottom.  Everything else (the product, the order, the
lattice) is derived from those two tables.  Tables are numpy int arrays so the
law checks and the quotient machinery can run vectorized; single-cell lookups
in hot paths go through plain nested lists (see ``oplus_rows`` etc.).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "FiniteMVAlgebra",
    "AxiomReport",
    "MVMorphism",
    "MorphismReport",
    "make_chain",
    "make_product",
    "make_product_many",
    "product_projections",
    "check_mv_axioms",
    "derived",
    "check_morphism",
    "compose",
    "identity_morphism",
    "find_morphisms",
    "find_isomorphism",
    "is_totally_ordered",
    "chain_rank",
]

_VIOLATION_CAP = 100  # per axiom; garbage tables can fail on O(size^3) triples


def _as_table(values, shape, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


class FiniteMVAlgebra:
    """A finite algebra (carrier, oplus table, neg table) with 0 as bottom.

    Construction validates shapes and value ranges only; whether the tables
    satisfy the MV laws is a separate question answered by check_mv_axioms.
    One-element carriers are rejected: the degenerate algebra where 0 = 1 is
    outside every construction here, which keeps quotients by proper ideals
    and spectra well behaved.
    """

    def __init__(self, size: int, oplus, neg):
        if size < 2:
            raise ValueError("carrier must have at least two elements")
        self.size = int(size)
        self.oplus = _as_table(oplus, (size, size), "oplus")
        self.neg = _as_table(neg, (size,), "neg")
        if self.oplus.min() < 0 or self.oplus.max() >= size:
            raise ValueError("oplus entries out of carrier range")
        if self.neg.min() < 0 or self.neg.max() >= size:
            raise ValueError("neg entries out of carrier range")
        self._hash = hash((self.size, self.oplus.tobytes(), self.neg.tobytes()))

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return int(self.neg[0])

    # -- derived tables (cached; all follow from oplus and neg) --

    @property
    def odot(self) -> np.ndarray:
        """odot[a,b] = neg(neg(a) oplus neg(b))."""
        t = getattr(self, "_odot", None)
        if t is None:
            t = self.neg[self.oplus[self.neg[:, None], self.neg[None, :]]]
            t.setflags(write=False)
            self._odot = t
        return t

    @property
    def ominus(self) -> np.ndarray:
        """ominus[a,b] = a odot neg(b); zero exactly when a <= b."""
        t = getattr(self, "_ominus", None)
        if t is None:
            t = self.odot[:, self.neg]
            t.setflags(write=False)
            self._ominus = t
        return t

    @property
    def leq(self) -> np.ndarray:
        """Boolean matrix of the induced partial order."""
        t = getattr(self, "_leq", None)
        if t is None:
            t = self.ominus == 0
            t.setflags(write=False)
            self._leq = t
        return t

    @property
    def join(self) -> np.ndarray:
        """join[a,b] = (a ominus b) oplus b."""
        t = getattr(self, "_join", None)
        if t is None:
            idx = np.arange(self.size)
            t = self.oplus[self.ominus, idx[None, :]]
            t.setflags(write=False)
            self._join = t
        return t

    @property
    def meet(self) -> np.ndarray:
        t = getattr(self, "_meet", None)
        if t is None:
            t = self.neg[self.join[self.neg[:, None], self.neg[None, :]]]
            t.setflags(write=False)
            self._meet = t
        return t

    # -- fast scalar access for backtracking searches and pair arithmetic --

    @property
    def oplus_rows(self) -> list[list[int]]:
        r = getattr(self, "_oplus_rows", None)
        if r is None:
            r = self.oplus.tolist()
            self._oplus_rows = r
        return r

    @property
    def odot_rows(self) -> list[list[int]]:
        r = getattr(self, "_odot_rows", None)
        if r is None:
            r = self.odot.tolist()
            self._odot_rows = r
        return r

    @property
    def neg_list(self) -> list[int]:
        r = getattr(self, "_neg_list", None)
        if r is None:
            r = self.neg.tolist()
            self._neg_list = r
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMVAlgebra):
            return NotImplemented
        return (
            self.size == other.size
            and np.array_equal(self.oplus, other.oplus)
            and np.array_equal(self.neg, other.neg)
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteMVAlgebra(size={self.size})"


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of check_mv_axioms: ok, plus (axiom, args) witnesses if not."""

    ok: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...] = ()
    truncated: bool = False

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MVMorphism:
    """A carrier map dom -> cod given as a tuple; laws via check_morphism."""

    dom: FiniteMVAlgebra
    cod: FiniteMVAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.dom.size:
            raise ValueError("morphism map length must equal dom carrier size")
        if any(not (0 <= v < self.cod.size) for v in self.map):
            raise ValueError("morphism map value out of cod carrier range")

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def map_array(self) -> np.ndarray:
        return np.asarray(self.map, dtype=np.int64)

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.dom.size

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def make_chain(n: int) -> FiniteMVAlgebra:
    """The (n+1)-element chain on {0..n}: a oplus b = min(n, a+b), neg a = n-a.

    n >= 1; n = 0 would be the excluded one-element algebra.
    """
    if n < 1:
        raise ValueError("chain parameter must be >= 1")
    a = np.arange(n + 1)
    oplus = np.minimum(n, a[:, None] + a[None, :])
    neg = n - a
    return FiniteMVAlgebra(n + 1, oplus, neg)


def make_product_many(factors: Sequence[FiniteMVAlgebra]) -> FiniteMVAlgebra:
    """Pointwise product with row-major index pairing (first factor slowest)."""
    if not factors:
        raise ValueError("product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    sizes = [f.size for f in factors]
    total = int(np.prod(sizes))
    idx = np.arange(total)
    digits = np.array(np.unravel_index(idx, sizes))  # (k, total)
    strides = np.array([int(np.prod(sizes[i + 1 :])) for i in range(len(sizes))])
    oplus = np.zeros((total, total), dtype=np.int64)
    neg = np.zeros(total, dtype=np.int64)
    for i, f in enumerate(factors):
        d = digits[i]
        oplus += strides[i] * f.oplus[d[:, None], d[None, :]]
        neg += strides[i] * f.neg[d]
    return FiniteMVAlgebra(total, oplus, neg)


def make_product(a: FiniteMVAlgebra, b: FiniteMVAlgebra) -> FiniteMVAlgebra:
    """Binary pointwise product; index of (x, y) is x * b.size + y."""
    return make_product_many([a, b])


def product_projections(
    a: FiniteMVAlgebra, b: FiniteMVAlgebra
) -> tuple[MVMorphism, MVMorphism]:
    prod = make_product(a, b)
    idx = np.arange(prod.size)
    p1 = MVMorphism(prod, a, tuple((idx // b.size).tolist()))
    p2 = MVMorphism(prod, b, tuple((idx % b.size).tolist()))
    return p1, p2


def _collect(name: str, bad: np.ndarray, arity: int, out: list, size: int) -> bool:
    """Append up to the cap of violating argument tuples; return truncation."""
    where = np.argwhere(bad)
    for row in where[:_VIOLATION_CAP]:
        out.append((name, tuple(int(v) for v in row[:arity])))
    return len(where) > _VIOLATION_CAP


def check_mv_axioms(algebra: FiniteMVAlgebra) -> AxiomReport:
    """Exhaustively check the six defining laws on the whole carrier.

    Laws: associativity and commutativity of oplus, 0 as unit, neg involutive,
    top absorbing, and the characteristic law
    neg(neg a oplus b) oplus b = neg(neg b oplus a) oplus a.
    """
    s = algebra.size
    op, ng = algebra.oplus, algebra.neg
    idx = np.arange(s)
    out: list[tuple[str, tuple[int, ...]]] = []
    truncated = False

    lhs = op[op][:, :, :]  # [a,b,c] = (a+b)+c
    rhs = op[:, op].reshape(s, s, s)  # [a,b,c] = a+(b+c)
    truncated |= _collect("assoc", lhs != rhs, 3, out, s)
    truncated |= _collect("comm", op != op.T, 2, out, s)
    truncated |= _collect("unit", op[:, 0] != idx, 1, out, s)
    truncated |= _collect("involution", ng[ng] != idx, 1, out, s)
    truncated |= _collect("absorb", op[:, algebra.top] != algebra.top, 1, out, s)
    luk = op[ng[op[ng[:, None], idx[None, :]]], idx[None, :]]
    truncated |= _collect("characteristic", luk != luk.T, 2, out, s)

    return AxiomReport(ok=not out, violations=tuple(out), truncated=truncated)


def derived(algebra: FiniteMVAlgebra, op: str, a: int, b: int | None = None):
    """Evaluate a derived operation by name.

    Binary: odot, ominus, join, meet, leq.  Unary: neg.  leq returns bool,
    everything else a carrier element.
    """
    if op == "neg":
        return int(algebra.neg[a])
    if b is None:
        raise ValueError(f"operation {op!r} needs two arguments")
    tables = {
        "oplus": algebra.oplus,
        "odot": algebra.odot,
        "ominus": algebra.ominus,
        "join": algebra.join,
        "meet": algebra.meet,
    }
    if op == "leq":
        return bool(algebra.leq[a, b])
    if op not in tables:
        raise ValueError(f"unknown derived operation {op!r}")
    return int(tables[op][a, b])


def check_morphism(h: MVMorphism) -> MorphismReport:
    """Check h(0)=0, h(a oplus b) = h(a) oplus h(b), h(neg a) = neg h(a)."""
    m = h.map_array
    out: list[tuple[str, tuple[int, ...]]] = []
    if h.map[0] != 0:
        out.append(("zero", (0,)))
    bad = m[h.dom.oplus] != h.cod.oplus[m[:, None], m[None, :]]
    for row in np.argwhere(bad)[:_VIOLATION_CAP]:
        out.append(("oplus", (int(row[0]), int(row[1]))))
    bad_n = m[h.dom.neg] != h.cod.neg[m]
    for row in np.argwhere(bad_n)[:_VIOLATION_CAP]:
        out.append(("neg", (int(row[0]),)))
    return MorphismReport(ok=not out, violations=tuple(out))


def compose(first: MVMorphism, then: MVMorphism) -> MVMorphism:
    """compose(h1, h2) applies h1 first: the result maps a to h2(h1(a))."""
    if first.cod is not then.dom and first.cod != then.dom:
        raise ValueError("compose: cod of first must equal dom of second")
    return MVMorphism(first.dom, then.cod, tuple(then.map[v] for v in first.map))


def identity_morphism(algebra: FiniteMVAlgebra) -> MVMorphism:
    return MVMorphism(algebra, algebra, tuple(range(algebra.size)))


def is_totally_ordered(algebra: FiniteMVAlgebra) -> bool:
    return bool((algebra.leq | algebra.leq.T).all())


def chain_rank(algebra: FiniteMVAlgebra) -> np.ndarray:
    """Position of each element in the total order; error on non-chains.

    rank[a] counts the elements strictly below a, so rank is the unique
    order iso onto {0..size-1} and the unique MV iso onto the same-size
    Lukasiewicz chain (finite chains are rigid).
    """
    if not is_totally_ordered(algebra):
        raise ValueError("algebra is not totally ordered")
    return algebra.leq.sum(axis=0) - 1


class SearchBudgetExceeded(RuntimeError):
    """Raised when a backtracking enumeration exceeds its node budget."""


def find_morphisms(
    dom: FiniteMVAlgebra, cod: FiniteMVAlgebra, node_cap: int = 10**6
) -> list[MVMorphism]:
    """All morphisms dom -> cod by backtracking over partial carrier maps.

    Images are assigned in carrier order; a constraint is checked as soon as
    every element it mentions has an image.  Node count is capped so sweeps
    stay bounded and reproducible.
    """
    s = dom.size
    op_d, ng_d = dom.oplus_rows, dom.neg_list
    op_c, ng_c = cod.oplus_rows, cod.neg_list
    img = [-1] * s
    img[0] = 0
    found: list[MVMorphism] = []
    nodes = 0

    def consistent(k: int) -> bool:
        # all pairs (a,b) with a,b <= k whose oplus lands in the assigned range
        y = img[k]
        nk = ng_d[k]
        if nk <= k and img[nk] != ng_c[y]:
            return False
        for a in range(k + 1):
            xa = img[a]
            r = op_d[a][k]
            if r <= k and op_c[xa][y] != img[r]:
                return False
            r2 = op_d[k][a]
            if r2 <= k and op_c[y][xa] != img[r2]:
                return False
        # freshly assigned k may itself be the value of earlier pairs
        for a in range(k):
            for b in range(k):
                if op_d[a][b] == k and op_c[img[a]][img[b]] != y:
                    return False
        return True

    def rec(k: int):
        nonlocal nodes
        if k == s:
            found.append(MVMorphism(dom, cod, tuple(img)))
            return
        for y in range(cod.size):
            nodes += 1
            if nodes > node_cap:
                raise SearchBudgetExceeded(f"morphism search exceeded {node_cap} nodes")
            img[k] = y
            if consistent(k):
                rec(k + 1)
            img[k] = -1

    if not consistent(0):
        return []
    rec(1)
    return found


def _order_signature(algebra: FiniteMVAlgebra) -> list[tuple[int, ...]]:
    leq = algebra.leq
    down = leq.sum(axis=0)
    up = leq.sum(axis=1)
    idem = np.diag(algebra.oplus) == np.arange(algebra.size)
    odot_idem = np.diag(algebra.odot) == np.arange(algebra.size)
    return [
        (int(down[a]), int(up[a]), bool(idem[a]), bool(odot_idem[a]))
        for a in range(algebra.size)
    ]


def find_isomorphism(
    a: FiniteMVAlgebra, b: FiniteMVAlgebra, node_cap: int = 10**6
) -> MVMorphism | None:
    """An isomorphism a -> b, or None.

    Backtracking over bijections compatible with the order: candidates are
    matched by per-element order signatures (downset and upset sizes plus
    idempotency flags), which pins chains immediately and prunes products
    hard.  Table consistency is enforced on the assigned prefix.
    """
    if a.size != b.size:
        return None
    sig_a = _order_signature(a)
    sig_b = _order_signature(b)
    if sorted(sig_a) != sorted(sig_b):
        return None
    candidates = [
        [y for y in range(b.size) if sig_b[y] == sig_a[x]] for x in range(a.size)
    ]
    op_a, ng_a = a.oplus_rows, a.neg_list
    op_b, ng_b = b.oplus_rows, b.neg_list
    img = [-1] * a.size
    used = [False] * b.size
    nodes = 0

    def consistent(k: int) -> bool:
        y = img[k]
        nk = ng_a[k]
        if nk <= k and img[nk] != ng_b[y]:
            return False
        for x in range(k + 1):
            r = op_a[x][k]
            if r <= k and op_b[img[x]][y] != img[r]:
                return False
            r = op_a[k][x]
            if r <= k and op_b[y][img[x]] != img[r]:
                return False
        for x in range(k):
            for z in range(k):
                if op_a[x][z] == k and op_b[img[x]][img[z]] != y:
                    return False
        return True

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == a.size:
            return True
        for y in candidates[k]:
            if used[y]:
                continue
            nodes += 1
            if nodes > node_cap:
                raise SearchBudgetExceeded(f"iso search exceeded {node_cap} nodes")
            img[k] = y
            used[y] = True
            if consistent(k) and rec(k + 1):
                return True
            img[k] = -1
            used[y] = False
        return False

    if rec(0):
        return MVMorphism(a, b, tuple(img))
    return None
