"""Round trips between finite MV-algebras and unital products of chain groups.

One direction starts from an algebra A: quotient by each prime ideal to get
chains, take the carry-pair group over each chain, and place A inside the
product of those groups as the box of per-prime class pairs ("a_circle").
The subgroup generated by that box is the enveloping group of A, and the box
recovers A as the unit segment.  The other direction starts from a group with
a chosen positive unit, takes its unit segment as an algebra, and rebuilds
the group from the segment's enveloping group.  Both bridging maps live here:
iota (algebra into its star ambient) and upsilon (star ambient of a segment
back onto the original group), together with checkers that certify on finite
windows that they are inverse to each other.

Everything is exact integer arithmetic, and every verdict comes from
exhaustive enumeration of an explicit finite window.  Operations on product
groups act coordinatewise, so window quantifiers factor through the fibers;
checkers that exploit the factorization document it on the spot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import InternalInvariantError
from .lgroup import (
    ChangChainGroup,
    ChangPair,
    GammaSegment,
    GroupElement,
    ProductLuGroup,
    abs_decompose,
    gamma_segment,
)
from .mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    check_morphism,
    compose,
    is_totally_ordered,
)
from .snf import invariant_factors, matrix_rank
from .spectrum import (
    Ideal,
    QuotientResult,
    Spectrum,
    ideal_violations,
    quotient,
    restrict_morphism,
    spectrum,
)

__all__ = [
    "star_chain",
    "ChainStarMap",
    "star_chain_morphism",
    "StarAlgebra",
    "star_algebra",
    "canonical_entries",
    "GoodSequence",
    "canonical_good_sequence",
    "is_good_sequence",
    "good_sequence_sum",
    "MembershipWitness",
    "generated_membership",
    "star_membership",
    "GenerationReport",
    "segment_generation_check",
    "IotaReport",
    "iota_roundtrip",
    "StarGroupMap",
    "star_morphism",
    "UpsilonMap",
    "UpsilonResult",
    "upsilon",
    "upsilon_inverse_chain",
    "SegmentIdealReport",
    "coordinate_ideal_members",
    "coordinate_ideal_checks",
    "LGroupMap",
    "gamma_restriction",
    "CommuteReport",
    "iota_naturality",
    "upsilon_naturality",
    "star_functoriality",
    "SNFReport",
    "free_quotient_experiment",
]


# -- chains -------------------------------------------------------------------


def star_chain(chain: FiniteMVAlgebra) -> ChangChainGroup:
    """The carry-pair group over a totally ordered algebra."""
    return ChangChainGroup(chain)


@dataclass(frozen=True)
class ChainStarMap:
    """Pair-level extension of a morphism between chains: (m, a) -> (m, h(a)).

    Chain morphisms have kernel {0}, so h(a) = top forces a = top; on
    normalized input the image offset is never the top and the copy index
    passes through untouched.  Carries are preserved for the same reason.
    """

    hom: MVMorphism
    dom: ChangChainGroup
    cod: ChangChainGroup

    def __call__(self, x: ChangPair) -> ChangPair:
        return self.cod.pair(x.m, self.hom.map[x.a])


def star_chain_morphism(
    hom: MVMorphism,
    dom: ChangChainGroup | None = None,
    cod: ChangChainGroup | None = None,
) -> ChainStarMap:
    if not (is_totally_ordered(hom.dom) and is_totally_ordered(hom.cod)):
        raise ValueError("pair-level extension needs chains on both ends")
    dom = dom if dom is not None else ChangChainGroup(hom.dom)
    cod = cod if cod is not None else ChangChainGroup(hom.cod)
    if dom.chain != hom.dom or cod.chain != hom.cod:
        raise ValueError("supplied fiber groups do not match the morphism")
    return ChainStarMap(hom, dom, cod)


# -- the star of a finite algebra ----------------------------------------------


@dataclass(frozen=True)
class StarAlgebra:
    """An algebra together with its enveloping-group data.

    `ambient` is the product of carry-pair groups over the prime quotient
    chains, in canonical spectrum order.  `a_circle[a]` is the image of
    carrier element a: the tuple of its classes, one per prime, as normalized
    pairs with copy index 0 (the top class normalizes to one whole copy).
    `circle_index` inverts a_circle; when two carrier elements collide the
    smallest index wins, and the collision itself is a checkable failure of
    injectivity, not an exception.
    """

    source: FiniteMVAlgebra
    spec: Spectrum
    quotients: tuple[QuotientResult, ...]
    ambient: ProductLuGroup
    u: GroupElement
    a_circle: tuple[GroupElement, ...]
    circle_index: dict[GroupElement, int]

    def iota(self, a: int) -> GroupElement:
        return self.a_circle[a]

    @property
    def injective(self) -> bool:
        return len(self.circle_index) == self.source.size


def star_algebra(algebra: FiniteMVAlgebra) -> StarAlgebra:
    """Build the enveloping-group presentation of a finite algebra."""
    spec = spectrum(algebra)
    quots = tuple(quotient(algebra, p) for p in spec.primes)
    fibers = [ChangChainGroup(q.quotient) for q in quots]
    a_circle = tuple(
        tuple(f.pair(0, q.class_of[a]) for f, q in zip(fibers, quots))
        for a in range(algebra.size)
    )
    u = a_circle[algebra.top]
    ambient = ProductLuGroup(fibers, u)
    circle_index: dict[GroupElement, int] = {}
    for a, x in enumerate(a_circle):
        circle_index.setdefault(x, a)
    return StarAlgebra(
        source=algebra,
        spec=spec,
        quotients=quots,
        ambient=ambient,
        u=u,
        a_circle=a_circle,
        circle_index=circle_index,
    )


# -- good sequences -------------------------------------------------------------


def _require_positive_unit(group: ProductLuGroup, u: GroupElement) -> GroupElement:
    u = group.validate(u)
    for g, p in zip(group.fibers, u):
        if not (g.leq(g.zero, p) and p != g.zero):
            raise ValueError("unit must be strictly positive in every fiber")
    return u


def canonical_entries(
    group: ProductLuGroup, u: GroupElement, x: GroupElement
) -> tuple[GroupElement, ...]:
    """Peel x >= 0 into its canonical segment entries: repeatedly split off
    u-meet-rest.  The entries land in [0, u], sum back to x, and each
    absorbs the next under the capped addition; trailing zeros never occur
    because the loop stops the moment the remainder vanishes.
    """
    u = _require_positive_unit(group, u)
    x = group.validate(x)
    if not group.leq(group.zero, x):
        raise ValueError("only nonnegative elements have good-sequence entries")
    entries = []
    rest = x
    while rest != group.zero:
        a = group.meet(u, rest)
        entries.append(a)
        rest = group.sub(rest, a)
    return tuple(entries)


@dataclass(frozen=True)
class GoodSequence:
    """Entries of a segment algebra where each absorbs its successor.

    Normalized: no trailing zeros (the empty sequence stands for zero).
    """

    algebra: FiniteMVAlgebra
    entries: tuple[int, ...]

    def __post_init__(self):
        if not is_good_sequence(self.algebra, self.entries):
            raise ValueError("entries violate the absorption law")
        if self.entries and self.entries[-1] == 0:
            raise ValueError("trailing zeros must be stripped")

    def __len__(self) -> int:
        return len(self.entries)


def is_good_sequence(algebra: FiniteMVAlgebra, entries: Iterable[int]) -> bool:
    """True when consecutive entries satisfy a_k (+) a_{k+1} = a_k."""
    entries = list(entries)
    for e in entries:
        if not 0 <= e < algebra.size:
            raise ValueError(f"entry {e} outside the carrier")
    rows = algebra.oplus_rows
    return all(rows[a][b] == a for a, b in zip(entries, entries[1:]))


def canonical_good_sequence(segment: GammaSegment, x: GroupElement) -> GoodSequence:
    """The canonical decomposition of x >= 0 as segment carrier indices."""
    raw = canonical_entries(segment.group, segment.u, x)
    try:
        entries = tuple(segment.index[e] for e in raw)
    except KeyError as exc:  # entries are u-meets of positives: always in [0,u]
        raise InternalInvariantError(f"entry {exc} escaped the segment") from exc
    return GoodSequence(segment.algebra, entries)


def good_sequence_sum(segment: GammaSegment, entries: Iterable[int]) -> GroupElement:
    """Add up segment entries (carrier indices) in the surrounding group."""
    group = segment.group
    acc = group.zero
    for e in entries:
        acc = group.add(acc, segment.elements[e])
    return acc


# -- membership in the generated subgroup ---------------------------------------


@dataclass(frozen=True)
class MembershipWitness:
    """Outcome of a generated-subgroup membership test.

    For members, `positive`/`negative` are the canonical entries of the two
    halves of x (each entry drawn from the allowed set) and `reconstruction`
    re-adds them to x.  For non-members, `missing` is the first entry that
    fell outside the allowed set.  When the test ran against a StarAlgebra
    the entries are also reported as source-carrier indices.
    """

    member: bool
    positive: tuple[GroupElement, ...]
    negative: tuple[GroupElement, ...]
    positive_indices: tuple[int, ...] | None = None
    negative_indices: tuple[int, ...] | None = None
    reconstruction: GroupElement | None = None
    missing: GroupElement | None = None

    def __bool__(self) -> bool:
        return self.member


def generated_membership(
    group: ProductLuGroup,
    u: GroupElement,
    allowed: Mapping[GroupElement, int] | frozenset | set,
    x: GroupElement,
) -> MembershipWitness:
    """Is x in the subgroup generated by `allowed` (a subset of [0, u])?

    Split x into its two nonnegative halves and peel each canonically; x is
    generated exactly when every peeled entry belongs to the allowed set.
    The allowed set must contain 0 and u and be closed under the capped
    addition and unit complement for the criterion to be complete; callers
    pass the image of an algebra, which is.
    """
    x = group.validate(x)
    pos, neg_part, _ = abs_decompose(group, x)
    positive = canonical_entries(group, u, pos)
    negative = canonical_entries(group, u, neg_part)
    lookup = allowed.__contains__
    for e in itertools.chain(positive, negative):
        if not lookup(e):
            return MembershipWitness(
                member=False, positive=positive, negative=negative, missing=e
            )
    acc = group.zero
    for e in positive:
        acc = group.add(acc, e)
    for e in negative:
        acc = group.sub(acc, e)
    if acc != x:
        raise InternalInvariantError("peeled entries failed to re-add to x")
    indices = None
    if isinstance(allowed, Mapping):
        indices = (
            tuple(allowed[e] for e in positive),
            tuple(allowed[e] for e in negative),
        )
    return MembershipWitness(
        member=True,
        positive=positive,
        negative=negative,
        positive_indices=indices[0] if indices else None,
        negative_indices=indices[1] if indices else None,
        reconstruction=acc,
    )


def star_membership(star: StarAlgebra, x: GroupElement) -> MembershipWitness:
    """Membership of an ambient element in the subgroup generated by a_circle."""
    return generated_membership(star.ambient, star.u, star.circle_index, x)


@dataclass(frozen=True)
class GenerationReport:
    ok: bool
    checked: int
    failure: GroupElement | None = None


def segment_generation_check(star: StarAlgebra, bound: int = 4) -> GenerationReport:
    """Every ambient element within bound·u is generated by the box [0, u].

    Exhaustive over the ambient window; each element is peeled and its
    entries checked against a_circle.
    """
    checked = 0
    for x in star.ambient.window(bound):
        checked += 1
        if not star_membership(star, x).member:
            return GenerationReport(ok=False, checked=checked, failure=x)
    return GenerationReport(ok=True, checked=checked)


# -- iota round trip -------------------------------------------------------------


@dataclass(frozen=True)
class IotaReport:
    """Does a_circle sit inside the ambient segment as a faithful copy of A?"""

    injective: bool
    onto_segment: bool
    is_morphism: bool
    members_match: bool
    checked: int

    @property
    def holds(self) -> bool:
        return self.injective and self.onto_segment and self.is_morphism and self.members_match


def iota_roundtrip(star: StarAlgebra, segment: GammaSegment | None = None) -> IotaReport:
    """Certify that iota is an isomorphism onto the member part of [0, u].

    Three facts are checked exhaustively: iota is injective; its image is
    exactly the set of segment elements that pass the membership test; and
    the index-level map carrier -> segment carrier preserves the operations.
    """
    if segment is None:
        segment = gamma_segment(star.ambient, star.u)
    injective = star.injective
    circle = set(star.a_circle)
    members_match = True
    onto = True
    for x in segment.elements:
        in_circle = x in circle
        if star_membership(star, x).member != in_circle:
            members_match = False
        if not in_circle:
            onto = False
    index_map = tuple(segment.index[x] for x in star.a_circle)
    morphism_ok = bool(
        check_morphism(MVMorphism(star.source, segment.algebra, index_map)).ok
    )
    return IotaReport(
        injective=injective,
        onto_segment=onto,
        is_morphism=morphism_ok,
        members_match=members_match,
        checked=len(segment.elements),
    )


# -- star of a general morphism ---------------------------------------------------


@dataclass(frozen=True)
class StarGroupMap:
    """Ambient-level extension of an algebra morphism.

    Each codomain fiber j is fed from the domain fiber holding the preimage
    prime, through the pair-level extension of the induced chain morphism.
    """

    hom: MVMorphism
    dom_star: StarAlgebra
    cod_star: StarAlgebra
    source_fiber: tuple[int, ...]
    fiber_maps: tuple[ChainStarMap, ...]

    def __call__(self, x: GroupElement) -> GroupElement:
        return tuple(fm(x[i]) for i, fm in zip(self.source_fiber, self.fiber_maps))


def star_morphism(
    hom: MVMorphism,
    dom_star: StarAlgebra | None = None,
    cod_star: StarAlgebra | None = None,
) -> StarGroupMap:
    dom_star = dom_star if dom_star is not None else star_algebra(hom.dom)
    cod_star = cod_star if cod_star is not None else star_algebra(hom.cod)
    if dom_star.source != hom.dom or cod_star.source != hom.cod:
        raise ValueError("star data does not belong to the morphism endpoints")
    source_fiber = []
    fiber_maps = []
    for j, prime in enumerate(cod_star.spec.primes):
        pre = frozenset(a for a in range(hom.dom.size) if hom.map[a] in prime.members)
        try:
            i = dom_star.spec.index_of(pre)
        except KeyError as exc:
            raise InternalInvariantError(
                "preimage of a prime is missing from the canonical listing"
            ) from exc
        induced = restrict_morphism(hom, prime)
        if (
            induced.dom != dom_star.quotients[i].quotient
            or induced.cod != cod_star.quotients[j].quotient
        ):
            raise InternalInvariantError("induced chain map landed off its fibers")
        source_fiber.append(i)
        fiber_maps.append(
            ChainStarMap(induced, dom_star.ambient.fibers[i], cod_star.ambient.fibers[j])
        )
    return StarGroupMap(
        hom=hom,
        dom_star=dom_star,
        cod_star=cod_star,
        source_fiber=tuple(source_fiber),
        fiber_maps=tuple(fiber_maps),
    )


# -- upsilon -----------------------------------------------------------------------


class UpsilonMap:
    """The evaluation map from the star ambient of a segment back to the group.

    Star fibers are aligned with group fibers by matching each prime of the
    segment algebra against the zero set of one coordinate.  On the fiber
    over prime P, a pair (m, c) evaluates to m·u_j plus the lift of class c,
    where the lift sends a quotient class to the common j-th coordinate of
    its members (checked to be constant).
    """

    def __init__(
        self,
        group: ProductLuGroup,
        u: GroupElement | None = None,
        segment: GammaSegment | None = None,
        star: StarAlgebra | None = None,
    ):
        if segment is None:
            segment = gamma_segment(group, u)
        self.group = group
        self.segment = segment
        self.u = segment.u
        self.star = star if star is not None else star_algebra(segment.algebra)
        if self.star.source != segment.algebra:
            raise ValueError("star data does not belong to the segment algebra")
        k = group.k
        if self.star.ambient.k != k:
            raise InternalInvariantError(
                "segment algebra has a different prime count than the fiber count"
            )
        zero_sets = []
        for j, g in enumerate(group.fibers):
            zero_sets.append(
                frozenset(
                    i for i, x in enumerate(segment.elements) if x[j] == g.zero
                )
            )
        alignment = []
        for prime in self.star.spec.primes:
            hits = [j for j, z in enumerate(zero_sets) if z == prime.members]
            if len(hits) != 1:
                raise InternalInvariantError(
                    "prime of the segment algebra is not a unique coordinate zero set"
                )
            alignment.append(hits[0])
        if len(set(alignment)) != k:
            raise InternalInvariantError("fiber alignment is not a bijection")
        self.alignment = tuple(alignment)
        lifts = []
        for t, q in enumerate(self.star.quotients):
            j = alignment[t]
            lift: list[ChangPair | None] = [None] * q.quotient.size
            for idx in range(segment.algebra.size):
                c = q.class_of[idx]
                v = segment.elements[idx][j]
                if lift[c] is None:
                    lift[c] = v
                elif lift[c] != v:
                    raise InternalInvariantError(
                        "coordinate is not constant on a quotient class"
                    )
            if any(v is None for v in lift):
                raise InternalInvariantError("quotient class with no representative")
            if len(set(lift)) != len(lift):
                raise InternalInvariantError(
                    "two quotient classes share a coordinate value"
                )
            lifts.append(tuple(lift))
        self.lifts = tuple(lifts)

    def fiber_value(self, t: int, x: ChangPair) -> ChangPair:
        """Evaluate star fiber t at pair x, landing in group fiber alignment[t]."""
        j = self.alignment[t]
        g = self.group.fibers[j]
        return g.add(g.mul(x.m, self.u[j]), self.lifts[t][x.a])

    def __call__(self, x: GroupElement) -> GroupElement:
        out: list[ChangPair | None] = [None] * self.group.k
        for t, p in enumerate(x):
            out[self.alignment[t]] = self.fiber_value(t, p)
        return tuple(out)  # type: ignore[arg-type]


@dataclass(frozen=True)
class UpsilonResult:
    """Window-certified verdict that upsilon is a unital ordered isomorphism.

    All five component checks run exhaustively per fiber over the stated
    windows.  Because every operation involved (addition, order, meet, the
    map itself) acts coordinatewise, a product-window quantifier is exactly
    the conjunction of the per-fiber ones; `window_elements` reports the size
    of the product window those conjunctions cover.
    """

    map: UpsilonMap
    window: int
    additive: bool
    order_embedding: bool
    preserves_unit: bool
    segment_identity: bool
    surjective: bool
    box_is_circle: bool
    window_elements: int
    segment_checked: int

    @property
    def holds(self) -> bool:
        return (
            self.additive
            and self.order_embedding
            and self.preserves_unit
            and self.segment_identity
            and self.surjective
            and self.box_is_circle
        )


def upsilon(
    group: ProductLuGroup,
    u: GroupElement | None = None,
    window: int = 4,
    segment: GammaSegment | None = None,
    star: StarAlgebra | None = None,
) -> UpsilonResult:
    """Build the evaluation map and certify it on the given window.

    Checks, each exhaustive per fiber: additivity on all pairs from the
    doubled fiber window; strict monotonicity over the fiber window (order
    embedding and injectivity in one pass); unit and zero preservation;
    the identity `evaluate(iota(x)) = x` over the whole segment; and
    surjectivity onto the group window, each target rebuilt from the peeled
    entries of its two halves through iota and re-evaluated.
    """
    um = UpsilonMap(group, u, segment=segment, star=star)
    seg = um.segment
    star_amb = um.star.ambient
    additive = True
    order_embedding = True
    preserves_unit = True
    surjective = True
    window_elements = 1
    for t, sf in enumerate(star_amb.fibers):
        j = um.alignment[t]
        g = group.fibers[j]
        uj = um.u[j]
        cap = sf.mul(window, sf.unit)
        cap2 = sf.add(cap, cap)
        inner = sf.interval(sf.neg(cap), cap)
        outer = sf.interval(sf.neg(cap2), cap2)
        table = {x: um.fiber_value(t, x) for x in outer}
        for x in inner:
            for y in inner:
                if table[sf.add(x, y)] != g.add(table[x], table[y]):
                    additive = False
        prev = None
        for x in inner:  # ascending
            v = table[x]
            if prev is not None and not (g.leq(prev, v) and prev != v):
                order_embedding = False
            prev = v
        if table[sf.unit] != uj or table[sf.zero] != g.zero:
            preserves_unit = False
        # surjectivity: peel each window target in the group fiber and lift
        # the entries back through the class of their coordinate value
        value_class = {v: c for c, v in enumerate(um.lifts[t])}
        gcap = g.mul(window, uj)
        targets = g.interval(g.neg(gcap), gcap)
        window_elements *= len(targets)
        for v in targets:
            vp = g.join(g.zero, v)
            vn = g.join(g.zero, g.neg(v))
            acc = sf.zero
            for half, sign in ((vp, 1), (vn, -1)):
                rest = half
                while rest != g.zero:
                    e = g.meet(uj, rest)
                    rest = g.sub(rest, e)
                    entry = sf.pair(0, value_class[e])
                    acc = sf.add(acc, entry) if sign > 0 else sf.sub(acc, entry)
            if table.get(acc, um.fiber_value(t, acc)) != v:
                surjective = False
    segment_identity = all(
        um(um.star.a_circle[i]) == seg.elements[i]
        for i in range(seg.algebra.size)
    )
    box_size = 1
    for f in star_amb.fibers:
        box_size *= f.height + 1
    box_is_circle = um.star.injective and len(um.star.a_circle) == box_size
    return UpsilonResult(
        map=um,
        window=window,
        additive=additive,
        order_embedding=order_embedding,
        preserves_unit=preserves_unit,
        segment_identity=segment_identity,
        surjective=surjective,
        box_is_circle=box_is_circle,
        window_elements=window_elements,
        segment_checked=seg.algebra.size,
    )


def upsilon_inverse_chain(
    fiber: ChangChainGroup, u: ChangPair, x: ChangPair
) -> tuple[int, ChangPair]:
    """Invert evaluation on one fiber: the unique (n, r) with x = n·u + r,
    0 <= r < u (equivalently n·u <= x <= (n+1)·u with maximal n).
    """
    if not (fiber.leq(fiber.zero, u) and u != fiber.zero):
        raise ValueError("unit must be strictly positive")
    n = 0
    while not fiber.leq(fiber.mul(n, u), x):
        n -= 1
    while fiber.leq(fiber.mul(n + 1, u), x):
        n += 1
    r = fiber.sub(x, fiber.mul(n, u))
    if not (fiber.leq(fiber.zero, r) and fiber.leq(x, fiber.mul(n + 1, u))):
        raise InternalInvariantError("division by the unit lost the sandwich")
    return n, r


# -- coordinate ideals of a product group -------------------------------------------


@dataclass(frozen=True)
class SegmentIdealReport:
    """Segment-level facts about one coordinate ideal of a product group.

    The ideal consists of the group elements vanishing on `zero_fibers`; its
    trace on [0, u] must be an algebra ideal, the quotient by that trace must
    match the segment of the restricted group (restriction to the named
    coordinates), and the coordinate zero sets must list exactly the primes
    of the segment algebra.
    """

    zero_fibers: tuple[int, ...]
    ideal_ok: bool
    quotient_iso_ok: bool
    spectrum_bijection_ok: bool
    segment_size: int

    @property
    def holds(self) -> bool:
        return self.ideal_ok and self.quotient_iso_ok and self.spectrum_bijection_ok


def coordinate_ideal_members(segment: GammaSegment, zero_fibers: Iterable[int]) -> frozenset[int]:
    """Carrier indices of segment elements vanishing on the given fibers."""
    zf = tuple(zero_fibers)
    zeros = [segment.group.fibers[j].zero for j in zf]
    return frozenset(
        i
        for i, x in enumerate(segment.elements)
        if all(x[j] == z for j, z in zip(zf, zeros))
    )


def coordinate_ideal_checks(
    group: ProductLuGroup,
    zero_fibers: Iterable[int],
    u: GroupElement | None = None,
    segment: GammaSegment | None = None,
    segment_primes: tuple[Ideal, ...] | None = None,
    segment_cache: dict | None = None,
) -> SegmentIdealReport:
    """Check one coordinate ideal against its segment trace.

    `zero_fibers` must be a nonempty set of fiber indices; the corresponding
    group ideal is the kernel of the projection onto those coordinates, so
    the quotient keeps exactly the named fibers.  A `segment_cache` (keyed by
    fiber chain sizes and unit) lets sweeps share the restricted-group
    segments across configurations.
    """
    zf = tuple(sorted(set(zero_fibers)))
    if not zf:
        raise ValueError("the empty coordinate set names the whole group, not an ideal")
    if zf[0] < 0 or zf[-1] >= group.k:
        raise ValueError("fiber index out of range")
    if segment is None:
        segment = gamma_segment(group, u)
    members = coordinate_ideal_members(segment, zf)
    ideal_ok = not ideal_violations(segment.algebra, members)
    quotient_iso_ok = False
    if ideal_ok:
        q = quotient(segment.algebra, Ideal(segment.algebra, members))
        kept = ProductLuGroup(
            [group.fibers[j] for j in zf], tuple(segment.u[j] for j in zf)
        )
        kept_key = (tuple(f.chain.size for f in kept.fibers), kept.u)
        kept_segment = segment_cache.get(kept_key) if segment_cache is not None else None
        if kept_segment is None:
            kept_segment = gamma_segment(kept)
            if segment_cache is not None:
                segment_cache[kept_key] = kept_segment
        assignment: list[int | None] = [None] * q.quotient.size
        well_defined = True
        for idx in range(segment.algebra.size):
            c = q.class_of[idx]
            target = kept_segment.index[tuple(segment.elements[idx][j] for j in zf)]
            if assignment[c] is None:
                assignment[c] = target
            elif assignment[c] != target:
                well_defined = False
        if well_defined and None not in assignment:
            restriction = MVMorphism(
                q.quotient, kept_segment.algebra, tuple(assignment)  # type: ignore[arg-type]
            )
            quotient_iso_ok = bool(
                check_morphism(restriction).ok
                and restriction.is_injective()
                and restriction.is_surjective()
            )
    if segment_primes is None:
        segment_primes = spectrum(segment.algebra).primes
    zero_sets = {
        coordinate_ideal_members(segment, (j,)) for j in range(group.k)
    }
    spectrum_bijection_ok = (
        len(zero_sets) == group.k
        and zero_sets == {p.members for p in segment_primes}
    )
    return SegmentIdealReport(
        zero_fibers=zf,
        ideal_ok=ideal_ok,
        quotient_iso_ok=quotient_iso_ok,
        spectrum_bijection_ok=spectrum_bijection_ok,
        segment_size=segment.algebra.size,
    )


# -- maps between product groups -----------------------------------------------------


@dataclass(frozen=True)
class LGroupMap:
    """A coordinatewise map between unital products of chain groups.

    Each codomain fiber j reads from one domain fiber through a pair-level
    chain-morphism extension; such maps are exactly the additive lattice maps
    this package generates and checks.
    """

    dom: ProductLuGroup
    cod: ProductLuGroup
    source_fiber: tuple[int, ...]
    fiber_maps: tuple[ChainStarMap, ...]

    def __call__(self, x: GroupElement) -> GroupElement:
        return tuple(fm(x[i]) for i, fm in zip(self.source_fiber, self.fiber_maps))

    @property
    def unital(self) -> bool:
        return self(self.dom.u) == self.cod.u


def gamma_restriction(
    phi: Callable[[GroupElement], GroupElement],
    dom_segment: GammaSegment,
    cod_segment: GammaSegment,
) -> MVMorphism:
    """Restrict a unital group map to the unit segments, as an index map."""
    index = []
    for x in dom_segment.elements:
        y = phi(x)
        if y not in cod_segment.index:
            raise ValueError("map does not carry the segment into the target segment")
        index.append(cod_segment.index[y])
    return MVMorphism(dom_segment.algebra, cod_segment.algebra, tuple(index))


# -- commuting squares ------------------------------------------------------------


@dataclass(frozen=True)
class CommuteReport:
    ok: bool
    checked: int
    failure: tuple | None = None


def iota_naturality(
    hom: MVMorphism,
    dom_star: StarAlgebra | None = None,
    cod_star: StarAlgebra | None = None,
) -> CommuteReport:
    """The two routes carrier -> codomain ambient agree on every element:
    through the morphism then iota, or through iota then the star map.
    """
    sm = star_morphism(hom, dom_star, cod_star)
    dom_star, cod_star = sm.dom_star, sm.cod_star
    for a in range(hom.dom.size):
        via_star = sm(dom_star.a_circle[a])
        via_hom = cod_star.a_circle[hom.map[a]]
        if via_star != via_hom:
            return CommuteReport(ok=False, checked=a + 1, failure=(a, via_star, via_hom))
    return CommuteReport(ok=True, checked=hom.dom.size)


def star_functoriality(
    first: MVMorphism,
    then: MVMorphism,
    window: int = 4,
    stars: Mapping[FiniteMVAlgebra, StarAlgebra] | None = None,
) -> CommuteReport:
    """Star of a composite equals the composite of the stars, on a window."""
    def star_of(algebra: FiniteMVAlgebra) -> StarAlgebra:
        if stars is not None and algebra in stars:
            return stars[algebra]
        return star_algebra(algebra)

    sa, sb, sc = star_of(first.dom), star_of(first.cod), star_of(then.cod)
    sm_first = star_morphism(first, sa, sb)
    sm_then = star_morphism(then, sb, sc)
    sm_both = star_morphism(compose(first, then), sa, sc)
    checked = 0
    for x in sa.ambient.window(window):
        checked += 1
        lhs = sm_both(x)
        rhs = sm_then(sm_first(x))
        if lhs != rhs:
            return CommuteReport(ok=False, checked=checked, failure=(x, lhs, rhs))
    return CommuteReport(ok=True, checked=checked)


def upsilon_naturality(
    phi: LGroupMap,
    window: int = 4,
    dom_data: tuple[GammaSegment, StarAlgebra] | None = None,
    cod_data: tuple[GammaSegment, StarAlgebra] | None = None,
) -> CommuteReport:
    """The square relating a group map to the star of its segment restriction.

    Both routes from the domain star ambient to the codomain group must
    agree on the window: evaluate then map, or star-map then evaluate.
    """
    if not phi.unital:
        raise ValueError("the square is stated for unit-preserving maps")
    dom_segment, dom_star = dom_data if dom_data else (gamma_segment(phi.dom), None)
    cod_segment, cod_star = cod_data if cod_data else (gamma_segment(phi.cod), None)
    um_dom = UpsilonMap(phi.dom, segment=dom_segment, star=dom_star)
    um_cod = UpsilonMap(phi.cod, segment=cod_segment, star=cod_star)
    restricted = gamma_restriction(phi, dom_segment, cod_segment)
    if not check_morphism(restricted).ok:
        return CommuteReport(ok=False, checked=0, failure=("restriction", restricted.map))
    sm = star_morphism(restricted, um_dom.star, um_cod.star)
    checked = 0
    for x in um_dom.star.ambient.window(window):
        checked += 1
        lhs = phi(um_dom(x))
        rhs = um_cod(sm(x))
        if lhs != rhs:
            return CommuteReport(ok=False, checked=checked, failure=(x, lhs, rhs))
    return CommuteReport(ok=True, checked=checked)


# -- free-presentation experiment -----------------------------------------------------


@dataclass(frozen=True)
class SNFReport:
    """Invariant factors of the pairwise-relation quotient vs. the star group.

    `free_factors` presents the quotient of the free abelian group on the
    carrier by the rows e_a + e_b - e_{a(+)b} - e_{a(.)b} (plus e_0 when
    `identify_zero`); `star_factors` presents the subgroup of the linearized
    ambient generated by a_circle.  Two finitely generated abelian groups are
    isomorphic exactly when these lists are equal.
    """

    size: int
    identify_zero: bool
    relation_rows: int
    spectrum_size: int
    free_factors: tuple[int, ...]
    star_factors: tuple[int, ...]

    @property
    def isomorphic(self) -> bool:
        return self.free_factors == self.star_factors


def free_quotient_experiment(
    algebra: FiniteMVAlgebra,
    identify_zero: bool = True,
    star: StarAlgebra | None = None,
) -> SNFReport:
    """Compare the pairwise-relation presentation with the actual star group.

    The relation rows say that the pair (a, b) may be replaced by the pair
    (a(+)b, a(.)b) without changing the sum.  The star side linearizes each
    fiber by copy-index times height plus offset rank and measures the row
    space of the iota images.
    """
    n = algebra.size
    oplus = algebra.oplus_rows
    odot = algebra.odot_rows
    rows = []
    for a in range(n):
        for b in range(n):
            row = [0] * n
            row[a] += 1
            row[b] += 1
            row[oplus[a][b]] -= 1
            row[odot[a][b]] -= 1
            if any(row):
                rows.append(row)
    if identify_zero:
        zero_row = [0] * n
        zero_row[0] = 1
        rows.append(zero_row)
    free_factors = tuple(invariant_factors(rows, ncols=n))
    if star is None:
        star = star_algebra(algebra)
    generator_rows = [
        [f.phi(p) for f, p in zip(star.ambient.fibers, star.a_circle[a])]
        for a in range(n)
    ]
    star_factors = tuple([0] * matrix_rank(generator_rows))
    return SNFReport(
        size=n,
        identify_zero=identify_zero,
        relation_rows=len(rows),
        spectrum_size=len(star.spec.primes),
        free_factors=free_factors,
        star_factors=star_factors,
    )
