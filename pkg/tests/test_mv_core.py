"""Core algebra layer: tables, laws, morphisms, products, iso search."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvgamma.mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    check_morphism,
    check_mv_axioms,
    compose,
    derived,
    find_isomorphism,
    find_morphisms,
    identity_morphism,
    is_totally_ordered,
    chain_rank,
    make_chain,
    make_product,
    make_product_many,
    product_projections,
)


def brute_morphisms(dom: FiniteMVAlgebra, cod: FiniteMVAlgebra) -> set[tuple[int, ...]]:
    """Oracle: filter every carrier map by the three laws directly."""
    found = set()
    for img in itertools.product(range(cod.size), repeat=dom.size):
        if img[0] != 0:
            continue
        if any(
            img[dom.oplus[a, b]] != cod.oplus[img[a], img[b]]
            for a in range(dom.size)
            for b in range(dom.size)
        ):
            continue
        if any(img[dom.neg[a]] != cod.neg[img[a]] for a in range(dom.size)):
            continue
        found.add(img)
    return found


def permuted_copy(algebra: FiniteMVAlgebra, perm: list[int]) -> FiniteMVAlgebra:
    """Relabel the carrier along a permutation fixing 0."""
    assert perm[0] == 0
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    s = algebra.size
    oplus = [[perm[algebra.oplus[inv[x], inv[y]]] for y in range(s)] for x in range(s)]
    neg = [perm[algebra.neg[inv[x]]] for x in range(s)]
    return FiniteMVAlgebra(s, oplus, neg)


# -- chains -----------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_chains_satisfy_axioms(n):
    assert check_mv_axioms(make_chain(n)).ok


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_chain_derived_ops_match_integer_formulas(n):
    c = make_chain(n)
    for a in range(n + 1):
        assert derived(c, "neg", a) == n - a
        for b in range(n + 1):
            assert derived(c, "oplus", a, b) == min(n, a + b)
            assert derived(c, "odot", a, b) == max(0, a + b - n)
            assert derived(c, "ominus", a, b) == max(0, a - b)
            assert derived(c, "join", a, b) == max(a, b)
            assert derived(c, "meet", a, b) == min(a, b)
            assert derived(c, "leq", a, b) == (a <= b)


def test_chain_is_totally_ordered_with_identity_rank():
    c = make_chain(4)
    assert is_totally_ordered(c)
    assert chain_rank(c).tolist() == [0, 1, 2, 3, 4]


def test_trivial_algebra_is_rejected():
    with pytest.raises(ValueError):
        make_chain(0)
    with pytest.raises(ValueError):
        FiniteMVAlgebra(1, [[0]], [0])


def test_shape_and_range_validation():
    with pytest.raises(ValueError):
        FiniteMVAlgebra(2, [[0, 1]], [1, 0])
    with pytest.raises(ValueError):
        FiniteMVAlgebra(2, [[0, 1], [1, 5]], [1, 0])
    with pytest.raises(ValueError):
        FiniteMVAlgebra(2, [[0, 1], [1, 1]], [1, -1])


def test_axiom_checker_catches_broken_tables():
    c = make_chain(2)
    op = c.oplus.copy()
    op.setflags(write=True)
    op[1, 2] = 0  # break commutativity and more
    broken = FiniteMVAlgebra(3, op, c.neg)
    report = check_mv_axioms(broken)
    assert not report.ok
    names = {v[0] for v in report.violations}
    assert "comm" in names


def test_axiom_checker_catches_broken_involution():
    broken = FiniteMVAlgebra(3, make_chain(2).oplus, [2, 2, 0])
    report = check_mv_axioms(broken)
    assert not report.ok
    assert any(v[0] == "involution" for v in report.violations)


# -- products ----------------------------------------------------------------


def test_product_size_and_frozen_example():
    p = make_product(make_chain(2), make_chain(3))
    assert p.size == 12
    # (1,2) has index 1*4+2 = 6; (1,2)+(1,2) = (2,3) has index 2*4+3 = 11
    assert int(p.oplus[6, 6]) == 11
    assert check_mv_axioms(p).ok


def test_product_projections_are_morphisms():
    a, b = make_chain(1), make_chain(3)
    p1, p2 = product_projections(a, b)
    assert check_morphism(p1).ok and check_morphism(p2).ok
    assert p1.is_surjective() and p2.is_surjective()


def test_product_tables_are_componentwise():
    a, b = make_chain(2), make_chain(2)
    p = make_product(a, b)
    for (x1, x2), (y1, y2) in itertools.product(
        itertools.product(range(3), repeat=2), repeat=2
    ):
        i, j = x1 * 3 + x2, y1 * 3 + y2
        expected = min(2, x1 + y1) * 3 + min(2, x2 + y2)
        assert int(p.oplus[i, j]) == expected


def test_many_fold_product_matches_iterated_binary():
    chains = [make_chain(1), make_chain(2), make_chain(1)]
    direct = make_product_many(chains)
    nested = make_product(make_product(chains[0], chains[1]), chains[2])
    assert direct == nested


# -- morphisms ----------------------------------------------------------------


def test_check_morphism_frozen_examples():
    l1, l2 = make_chain(1), make_chain(2)
    good = MVMorphism(l1, l2, (0, 2))
    assert check_morphism(good).ok
    bad = MVMorphism(l1, l2, (0, 1))
    report = check_morphism(bad)
    assert not report.ok


def test_compose_and_identity():
    l1, l2 = make_chain(1), make_chain(2)
    h = MVMorphism(l1, l2, (0, 2))
    assert compose(identity_morphism(l1), h).map == h.map
    assert compose(h, identity_morphism(l2)).map == h.map
    l4 = make_chain(4)
    g = MVMorphism(l2, l4, (0, 2, 4))
    assert check_morphism(g).ok
    hg = compose(h, g)
    assert hg.map == (0, 4)
    assert check_morphism(hg).ok


def test_compose_rejects_mismatched_boundary():
    l1, l2 = make_chain(1), make_chain(2)
    h = MVMorphism(l1, l2, (0, 2))
    with pytest.raises(ValueError):
        compose(h, h)


@pytest.mark.parametrize(
    "dom,cod",
    [
        (make_chain(1), make_chain(2)),
        (make_chain(2), make_chain(4)),
        (make_chain(2), make_chain(3)),
        (make_product(make_chain(1), make_chain(1)), make_chain(1)),
        (make_chain(1), make_product(make_chain(1), make_chain(1))),
        (make_chain(3), make_chain(3)),
    ],
)
def test_find_morphisms_agrees_with_brute_force(dom, cod):
    got = {h.map for h in find_morphisms(dom, cod)}
    assert got == brute_morphisms(dom, cod)
    for h in find_morphisms(dom, cod):
        assert check_morphism(h).ok


def test_morphism_counts_frozen():
    assert len(find_morphisms(make_chain(1), make_chain(2))) == 1
    assert len(find_morphisms(make_chain(2), make_chain(3))) == 0
    sq = make_product(make_chain(1), make_chain(1))
    assert len(find_morphisms(sq, make_chain(1))) == 2
    assert len(find_morphisms(sq, sq)) == 4


# -- isomorphism search --------------------------------------------------------


def test_isomorphism_of_swapped_product_factors():
    a = make_product(make_chain(1), make_chain(3))
    b = make_product(make_chain(3), make_chain(1))
    iso = find_isomorphism(a, b)
    assert iso is not None
    assert check_morphism(iso).ok and iso.is_injective() and iso.is_surjective()


def test_non_isomorphic_same_size():
    assert find_isomorphism(make_product(make_chain(1), make_chain(1)), make_chain(3)) is None


def test_isomorphism_rejects_size_mismatch():
    assert find_isomorphism(make_chain(2), make_chain(3)) is None


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_permuted_chains_are_isomorphic(data):
    n = data.draw(st.integers(min_value=1, max_value=5))
    rest = data.draw(st.permutations(list(range(1, n + 1))))
    perm = [0] + list(rest)
    c = make_chain(n)
    shuffled = permuted_copy(c, perm)
    assert check_mv_axioms(shuffled).ok
    iso = find_isomorphism(c, shuffled)
    assert iso is not None
    assert list(iso.map) == perm
