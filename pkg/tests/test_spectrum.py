"""Ideal lattice, primes, quotients, and the subdirect embedding."""

from __future__ import annotations

import itertools

import pytest

from mvgamma.mv_core import (
    MVMorphism,
    check_morphism,
    find_isomorphism,
    is_totally_ordered,
    make_chain,
    make_product,
)
from mvgamma.spectrum import (
    Ideal,
    canonical_embedding,
    enumerate_ideals,
    ideals_by_subset_filter,
    is_ideal,
    is_prime_ideal,
    preimage_ideal,
    quotient,
    restrict_morphism,
    spectrum,
)

L1 = make_chain(1)
L2 = make_chain(2)
L3 = make_chain(3)
SQ = make_product(L1, L1)  # indices: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
L2xL3 = make_product(L2, L3)


def test_ideals_of_two_by_two_product_frozen():
    members = [sorted(i.members) for i in enumerate_ideals(SQ)]
    assert members == [[0], [0, 1], [0, 2], [0, 1, 2, 3]]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_chain_has_only_trivial_and_improper_ideals(n):
    c = make_chain(n)
    members = [sorted(i.members) for i in enumerate_ideals(c)]
    assert members == [[0], list(range(n + 1))]


@pytest.mark.parametrize(
    "algebra",
    [L1, L2, L3, SQ, L2xL3, make_product(L1, L3), make_product(L2, L2)],
)
def test_enumeration_matches_subset_filter(algebra):
    fast = [i.members for i in enumerate_ideals(algebra)]
    slow = [i.members for i in ideals_by_subset_filter(algebra)]
    assert fast == slow


def test_subset_filter_is_capped():
    with pytest.raises(ValueError):
        ideals_by_subset_filter(make_product(L3, L3))


def test_prime_detection_in_square():
    zero = Ideal(SQ, frozenset({0}))
    assert not is_prime_ideal(SQ, zero)  # incomparable atoms separate
    assert is_prime_ideal(SQ, Ideal(SQ, frozenset({0, 1})))
    assert is_prime_ideal(SQ, Ideal(SQ, frozenset({0, 2})))


def test_prime_rejects_improper_and_non_ideal():
    with pytest.raises(ValueError):
        is_prime_ideal(SQ, Ideal(SQ, frozenset({0, 1, 2, 3})))
    with pytest.raises(ValueError):
        is_prime_ideal(SQ, Ideal(SQ, frozenset({0, 3})))


def test_spectrum_of_chain_is_singleton_zero():
    sp = spectrum(L3)
    assert len(sp.primes) == 1
    assert sp.primes[0].members == frozenset({0})


def test_spectrum_of_l2xl3_frozen_and_ordered():
    sp = spectrum(L2xL3)
    assert [sorted(p.members) for p in sp.primes] == [[0, 1, 2, 3], [0, 4, 8]]
    masks = [p.bitmask for p in sp.primes]
    assert masks == sorted(masks)


def test_prime_test_oracle_on_products():
    # oracle: P is prime iff for every pair one of the two differences is inside
    om = L2xL3.ominus
    for ideal in enumerate_ideals(L2xL3):
        if not ideal.proper:
            continue
        expected = all(
            int(om[a, b]) in ideal.members or int(om[b, a]) in ideal.members
            for a, b in itertools.product(range(L2xL3.size), repeat=2)
        )
        assert is_prime_ideal(L2xL3, ideal) == expected


def test_quotient_by_zero_is_identity_indexed():
    q = quotient(L3, Ideal(L3, frozenset({0})))
    assert q.quotient == L3
    assert q.class_of == tuple(range(4))


def test_quotients_of_l2xl3_are_the_factors():
    sp = spectrum(L2xL3)
    q0 = quotient(L2xL3, sp.primes[0])  # {0}xL3 is the kernel of the map onto L2
    q1 = quotient(L2xL3, sp.primes[1])  # L2x{0} is the kernel of the map onto L3
    assert is_totally_ordered(q0.quotient) and is_totally_ordered(q1.quotient)
    assert find_isomorphism(q0.quotient, L2) is not None
    assert find_isomorphism(q1.quotient, L3) is not None
    for q, p in ((q0, sp.primes[0]), (q1, sp.primes[1])):
        assert check_morphism(q.projection).ok
        kernel = frozenset(a for a in range(L2xL3.size) if q.class_of[a] == 0)
        assert kernel == p.members


def test_quotient_rejects_non_ideal_and_improper():
    with pytest.raises(ValueError):
        quotient(SQ, Ideal(SQ, frozenset({0, 3})))
    with pytest.raises(ValueError):
        quotient(SQ, Ideal(SQ, frozenset({0, 1, 2, 3})))


@pytest.mark.parametrize("algebra", [L1, L3, SQ, L2xL3, make_product(L2, L2)])
def test_canonical_embedding_is_injective_morphism(algebra):
    emb = canonical_embedding(algebra)
    assert check_morphism(emb).ok
    assert emb.is_injective()


def test_embedding_components_are_the_quotient_projections():
    emb = canonical_embedding(L2xL3)
    sp = spectrum(L2xL3)
    quots = [quotient(L2xL3, p) for p in sp.primes]
    sizes = [q.quotient.size for q in quots]
    for a in range(L2xL3.size):
        digits = []
        v = emb.map[a]
        for s in reversed(sizes):
            digits.append(v % s)
            v //= s
        digits.reverse()
        assert digits == [q.class_of[a] for q in quots]


def test_chain_embedding_is_identity_onto_itself():
    emb = canonical_embedding(L3)
    assert emb.cod == L3
    assert emb.map == tuple(range(4))


def test_preimage_of_prime_is_prime():
    p1, _ = (
        MVMorphism(L2xL3, L2, tuple(i // 4 for i in range(12))),
        None,
    )
    assert check_morphism(p1).ok
    pre = preimage_ideal(p1, Ideal(L2, frozenset({0})))
    assert pre.members == frozenset({0, 1, 2, 3})
    assert is_prime_ideal(L2xL3, pre)


def test_restrict_morphism_along_prime():
    h = MVMorphism(L1, L2, (0, 2))
    restricted = restrict_morphism(h, Ideal(L2, frozenset({0})))
    assert restricted.map == (0, 2)
    assert check_morphism(restricted).ok

    p1 = MVMorphism(L2xL3, L2, tuple(i // 4 for i in range(12)))
    restricted = restrict_morphism(p1, Ideal(L2, frozenset({0})))
    # dom/(ker p1) is a 3-element chain mapping isomorphically onto the image
    assert restricted.dom.size == 3
    assert check_morphism(restricted).ok
    assert restricted.is_injective()


def test_is_ideal_helper():
    assert is_ideal(SQ, frozenset({0, 1}))
    assert not is_ideal(SQ, frozenset({1}))
    assert not is_ideal(SQ, frozenset({0, 3}))
