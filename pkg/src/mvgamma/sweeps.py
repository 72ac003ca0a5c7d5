"""Exhaustive check suites over generated families of algebras and groups.

The generated families are:

  * algebras: the chains of height 1..8 and their binary products, capped by
    carrier size;
  * groups: products of chain-generated fiber groups with a unit picked per
    fiber by its height (the fiber-group value of the unit, 1..height_cap),
    over all ordered tuples of chains up to a fiber count and chain cap;
  * morphisms: every map between generated algebras found by exhaustive
    backtracking (candidate budget 10^6 per pair);
  * group maps: every coordinatewise chain-morphism map between generated
    groups that preserves the unit.

Suites certify the package's claims over these families.  Where a claim
quantifies over a product window, the operations involved act coordinatewise,
so the product claim is exactly the conjunction of the per-fiber claims; the
suites verify each distinct fiber case once (they are heavily shared across
configurations) and verify the factorization itself by running the direct
product-level check on every configuration small enough to afford it.

Suite results carry no timing or environment data, so a sweep's report is
byte-stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .equivalence import (
    UpsilonMap,
    canonical_good_sequence,
    coordinate_ideal_checks,
    free_quotient_experiment,
    gamma_restriction,
    good_sequence_sum,
    iota_naturality,
    iota_roundtrip,
    is_good_sequence,
    segment_generation_check,
    star_algebra,
    star_functoriality,
    star_morphism,
    upsilon,
    upsilon_inverse_chain,
    upsilon_naturality,
    LGroupMap,
    ChainStarMap,
    StarAlgebra,
)
from .lgroup import (
    ChangChainGroup,
    ChangPair,
    GammaSegment,
    ProductLuGroup,
    abs_decompose,
    gamma_segment,
)
from .mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    check_morphism,
    check_mv_axioms,
    compose,
    find_morphisms,
    identity_morphism,
    make_chain,
    make_product,
)
from .spectrum import enumerate_ideals, ideals_by_subset_filter, spectrum

__all__ = [
    "SuiteResult",
    "SweepContext",
    "SUITE_ORDER",
    "run_all_checks",
    "generated_algebras",
    "group_shapes",
]


@dataclass
class SuiteResult:
    """Outcome of one suite: every case passed, how many there were, and a
    bounded list of failure descriptions (first ten)."""

    name: str
    ok: bool
    cases: int
    failures: list[str] = field(default_factory=list)

    def note_failure(self, text: str):
        self.ok = False
        if len(self.failures) < 10:
            self.failures.append(text)

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "cases": self.cases,
            "failures": list(self.failures),
        }


def generated_algebras(max_size: int, max_chain: int = 8) -> list[FiniteMVAlgebra]:
    """Chains of height 1..max_chain, then binary products (nondecreasing
    heights) with carrier at most max_size, in that order."""
    out = []
    top_chain = min(max_chain, max(1, max_size - 1))
    for n in range(1, top_chain + 1):
        if n + 1 <= max(max_size, 2):
            out.append(make_chain(n))
    for m in range(1, top_chain + 1):
        for n in range(m, top_chain + 1):
            if (m + 1) * (n + 1) <= max_size:
                out.append(make_product(make_chain(m), make_chain(n)))
    return out


def group_shapes(
    max_fibers: int, chain_cap: int, height_cap: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (chain heights, unit heights) tuples for generated groups:
    ordered tuples of fiber chains, each with every unit height 1..cap."""
    for k in range(1, max_fibers + 1):
        for chains in itertools.product(range(1, chain_cap + 1), repeat=k):
            for heights in itertools.product(range(1, height_cap + 1), repeat=k):
                yield chains, heights


class SweepContext:
    """Shared lazy caches for one sweep: fiber groups, segments, stars,
    morphism lists, and per-fiber verdicts, all keyed by value shapes."""

    def __init__(self, max_size: int = 12, window: int = 4):
        if max_size < 2:
            raise ValueError("max_size must be at least 2")
        if window < 1:
            raise ValueError("window must be at least 1")
        self.max_size = max_size
        self.window = window
        self.max_chain = min(8, max(1, max_size - 1))
        self.group_fibers = 3 if max_size >= 16 else 2
        self.group_chain_cap = min(4, self.max_chain)
        self.group_height_cap = 3 if max_size >= 16 else 2
        self.map_chain_cap = min(3, self.group_chain_cap)
        self._fibers: dict[int, ChangChainGroup] = {}
        self._segments: dict[tuple, GammaSegment] = {}
        self._stars: dict[FiniteMVAlgebra, StarAlgebra] = {}
        self._homs: dict[tuple[int, int], list[MVMorphism]] = {}
        self._fiber_upsilon: dict[tuple[int, int], bool] = {}
        self._fiber_goodseq: dict[tuple[int, int], tuple[bool, int]] = {}

    # -- caches --

    def fiber(self, n: int) -> ChangChainGroup:
        f = self._fibers.get(n)
        if f is None:
            f = ChangChainGroup(make_chain(n))
            self._fibers[n] = f
        return f

    def group(self, chains: tuple[int, ...], heights: tuple[int, ...]) -> ProductLuGroup:
        fibers = [self.fiber(n) for n in chains]
        u = tuple(f.pair_of_phi(h) for f, h in zip(fibers, heights))
        return ProductLuGroup(fibers, u)

    def segment(self, group: ProductLuGroup) -> GammaSegment:
        key = (tuple(f.chain.size for f in group.fibers), group.u)
        seg = self._segments.get(key)
        if seg is None:
            seg = gamma_segment(group)
            self._segments[key] = seg
        return seg

    def star(self, algebra: FiniteMVAlgebra) -> StarAlgebra:
        s = self._stars.get(algebra)
        if s is None:
            s = star_algebra(algebra)
            self._stars[algebra] = s
        return s

    def algebras(self, cap: int | None = None) -> list[FiniteMVAlgebra]:
        return generated_algebras(cap if cap is not None else self.max_size, self.max_chain)

    def group_configs(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return list(
            group_shapes(self.group_fibers, self.group_chain_cap, self.group_height_cap)
        )

    def homs_between(self, algebras: list[FiniteMVAlgebra]) -> dict[tuple[int, int], list[MVMorphism]]:
        out = {}
        for i, a in enumerate(algebras):
            for j, b in enumerate(algebras):
                key = (i, j)
                if key not in self._homs:
                    self._homs[key] = find_morphisms(a, b)
                out[key] = self._homs[key]
        return out

    # -- per-fiber verdicts (see the module docstring for why one case
    #    certifies every configuration sharing the fiber shape) --

    def fiber_upsilon_holds(self, n: int, h: int) -> bool:
        key = (n, h)
        got = self._fiber_upsilon.get(key)
        if got is None:
            f = self.fiber(n)
            g = ProductLuGroup([f], (f.pair_of_phi(h),))
            got = upsilon(g, window=self.window, segment=self.segment(g), star=self.star(self.segment(g).algebra)).holds
            self._fiber_upsilon[key] = got
        return got

    def fiber_goodseq_case(self, n: int, h: int) -> tuple[bool, int]:
        """Canonical-sequence law, sum, and uniqueness over one fiber window.

        Uniqueness oracle: enumerate every normalized sequence over the
        segment carrier satisfying the absorption law, up to one more than
        the longest length a window sum can need, bucket them by their sum,
        and require each nonnegative window element to own exactly its
        canonical sequence.
        """
        key = (n, h)
        got = self._fiber_goodseq.get(key)
        if got is not None:
            return got
        f = self.fiber(n)
        g = ProductLuGroup([f], (f.pair_of_phi(h),))
        seg = self.segment(g)
        a = seg.algebra
        max_len = self.window + 1
        by_sum: dict[tuple, list[tuple[int, ...]]] = {}
        all_seqs: list[tuple[int, ...]] = [()]
        for length in range(1, max_len + 1):
            for tup in itertools.product(range(a.size), repeat=length):
                if tup[-1] != 0 and is_good_sequence(a, tup):
                    all_seqs.append(tup)
        for s in all_seqs:
            by_sum.setdefault(good_sequence_sum(seg, s), []).append(s)
        ok = True
        cases = 0
        top = g.mul(self.window, g.u)
        x = g.zero
        while True:
            cases += 1
            canon = canonical_good_sequence(seg, x)
            if good_sequence_sum(seg, canon.entries) != x:
                ok = False
            if by_sum.get(x, []) != [canon.entries]:
                ok = False
            if x == top:
                break
            x = (f.add(x[0], f.pair_of_phi(1)),)
        got = (ok, cases)
        self._fiber_goodseq[key] = got
        return got


# -- suites ------------------------------------------------------------------------


def suite_axioms(ctx: SweepContext) -> SuiteResult:
    """Every generated algebra passes the full axiom check."""
    result = SuiteResult("axioms", True, 0)
    for a in ctx.algebras():
        result.cases += 1
        report = check_mv_axioms(a)
        if not report.ok:
            result.note_failure(f"size-{a.size} algebra violates {report.violations[0][0]}")
    return result


def suite_pair_groups(ctx: SweepContext) -> SuiteResult:
    """Fiber groups over chains of height 1..5: abelian group laws, total
    order, translation invariance, and the positive-part identities, all
    exhaustive over the window of copy index at most 4."""
    result = SuiteResult("pair_groups", True, 0)
    for n in range(1, min(5, ctx.max_chain) + 1):
        f = ctx.fiber(n)
        lo, hi = ChangPair(-4, 0), ChangPair(4, 0)
        win = f.interval(lo, hi)
        g = ProductLuGroup([f], (f.unit,))
        ok = True
        for x in win:
            if f.add(x, f.neg(x)) != f.zero or f.neg(f.neg(x)) != x:
                ok = False
            px, nx, ax = abs_decompose(g, (x,))
            if f.meet(px[0], nx[0]) != f.zero or f.add(px[0], nx[0]) != ax[0]:
                ok = False
            for y in win:
                if f.add(x, y) != f.add(y, x):
                    ok = False
                if not (f.leq(x, y) or f.leq(y, x)):
                    ok = False
                if f.neg(f.meet(f.neg(x), f.neg(y))) != f.join(x, y):
                    ok = False
        small = f.interval(ChangPair(-2, 0), ChangPair(2, 0))
        for x in small:
            for y in small:
                for z in small:
                    if f.add(f.add(x, y), z) != f.add(x, f.add(y, z)):
                        ok = False
                    if f.add(x, f.join(y, z)) != f.join(f.add(x, y), f.add(x, z)):
                        ok = False
                    if f.leq(y, z) != f.leq(f.add(x, y), f.add(x, z)):
                        ok = False
        result.cases += 1
        if not ok:
            result.note_failure(f"fiber over the height-{n} chain breaks a law")
    return result


def suite_chain_roundtrip(ctx: SweepContext) -> SuiteResult:
    """The unit segment of a chain's fiber group is that chain again, and
    division by the unit inverts evaluation on the window."""
    result = SuiteResult("chain_roundtrip", True, 0)
    for n in range(1, ctx.max_chain + 1):
        result.cases += 1
        c = make_chain(n)
        f = ctx.fiber(n)
        g = ProductLuGroup([f], (f.unit,))
        seg = ctx.segment(g)
        if seg.algebra != c:
            result.note_failure(f"segment of the height-{n} fiber group is not the chain")
            continue
        um = UpsilonMap(g, segment=seg, star=ctx.star(seg.algebra))
        sf = um.star.ambient.fibers[0]
        ok = True
        for x in f.interval(f.mul(-4, f.unit), f.mul(4, f.unit)):
            m, r = upsilon_inverse_chain(f, f.unit, x)
            cls = um.lifts[0].index(r)
            if um.fiber_value(0, sf.pair(m, cls)) != x:
                ok = False
        if not ok:
            result.note_failure(f"unit division does not invert evaluation at height {n}")
    return result


def suite_general_roundtrip(ctx: SweepContext) -> SuiteResult:
    """Algebra side: iota is an isomorphism onto the member segment for every
    generated algebra, and the box within the window is generated.  Group
    side: for every generated configuration, the evaluation map is built
    (alignment and lifts validated), the box sizes agree, and every fiber
    shape's full window certificate holds; configurations with at most two
    fibers are additionally certified by the direct product-level check.
    """
    result = SuiteResult("general_roundtrip", True, 0)
    for a in ctx.algebras(min(16, ctx.max_size)):
        result.cases += 1
        star = ctx.star(a)
        report = iota_roundtrip(star)
        if not report.holds:
            result.note_failure(f"iota round trip fails on a size-{a.size} algebra")
        gen = segment_generation_check(star, bound=min(2, ctx.window))
        if not gen.ok:
            result.note_failure(f"window element not generated for a size-{a.size} algebra")
    for chains, heights in ctx.group_configs():
        result.cases += 1
        g = ctx.group(chains, heights)
        seg = ctx.segment(g)
        star = ctx.star(seg.algebra)
        um = UpsilonMap(g, segment=seg, star=star)
        box = 1
        for f in star.ambient.fibers:
            box *= f.height + 1
        if not (star.injective and len(star.a_circle) == box == len(seg.elements)):
            result.note_failure(f"box mismatch at {chains}/{heights}")
        if um(star.u) != g.u:
            result.note_failure(f"unit not preserved at {chains}/{heights}")
        if not all(ctx.fiber_upsilon_holds(n, h) for n, h in zip(chains, heights)):
            result.note_failure(f"fiber certificate fails at {chains}/{heights}")
        if len(chains) <= 2:
            direct = upsilon(g, window=min(3, ctx.window), segment=seg, star=star)
            if not direct.holds:
                result.note_failure(f"direct product check fails at {chains}/{heights}")
    return result


def suite_good_sequences(ctx: SweepContext) -> SuiteResult:
    """Canonical sequences over every generated configuration: absorption
    law, exact sum, and uniqueness.  Entry extraction, the law, and sums all
    act coordinatewise, so each fiber shape is certified once over its own
    window and a configuration passes when all its fiber shapes do; small
    configurations are re-checked directly at product level.
    """
    result = SuiteResult("good_sequences", True, 0)
    for chains, heights in ctx.group_configs():
        result.cases += 1
        verdicts = [ctx.fiber_goodseq_case(n, h) for n, h in zip(chains, heights)]
        if not all(ok for ok, _ in verdicts):
            result.note_failure(f"fiber sequence case fails at {chains}/{heights}")
        if len(chains) == 2 and max(heights) <= 2:
            g = ctx.group(chains, heights)
            seg = ctx.segment(g)
            ok = True
            for x in g.window(2):
                if not g.leq(g.zero, x):
                    continue
                gs = canonical_good_sequence(seg, x)
                if good_sequence_sum(seg, gs.entries) != x:
                    ok = False
            if not ok:
                result.note_failure(f"product-level sums drift at {chains}/{heights}")
    return result


def _generated_group_maps(
    ctx: SweepContext, dom: ProductLuGroup, cod: ProductLuGroup
) -> list[LGroupMap]:
    """Every unit-preserving coordinatewise chain-morphism map dom -> cod."""
    choices = []
    for j, fj in enumerate(cod.fibers):
        feeds = []
        for i, fi in enumerate(dom.fibers):
            for h in find_morphisms(fi.chain, fj.chain):
                feeds.append((i, ChainStarMap(h, fi, fj)))
        choices.append(feeds)
    out = []
    for combo in itertools.product(*choices):
        phi = LGroupMap(
            dom=dom,
            cod=cod,
            source_fiber=tuple(i for i, _ in combo),
            fiber_maps=tuple(fm for _, fm in combo),
        )
        if phi.unital:
            out.append(phi)
    return out


def suite_naturality(ctx: SweepContext) -> SuiteResult:
    """Every found morphism satisfies the iota square; star respects
    composition on windows for every composable pair; every generated
    unit-preserving group map satisfies the evaluation square."""
    result = SuiteResult("naturality", True, 0)
    algebras = ctx.algebras(min(12, ctx.max_size))
    homs = ctx.homs_between(algebras)
    for (i, j), hs in sorted(homs.items()):
        for h in hs:
            result.cases += 1
            if not iota_naturality(h, ctx.star(h.dom), ctx.star(h.cod)).ok:
                result.note_failure(f"iota square fails for a map {i}->{j}")
    comp_window = min(2, ctx.window)
    for (i, j), first_list in sorted(homs.items()):
        for (j2, k), then_list in sorted(homs.items()):
            if j2 != j:
                continue
            for h1 in first_list:
                for h2 in then_list:
                    result.cases += 1
                    rep = star_functoriality(h1, h2, window=comp_window, stars=ctx._stars)
                    if not rep.ok:
                        result.note_failure(f"composition square fails {i}->{j}->{k}")
    map_configs = [
        (chains, heights)
        for chains, heights in group_shapes(
            min(2, ctx.group_fibers), ctx.map_chain_cap, min(2, ctx.group_height_cap)
        )
    ]
    groups = [ctx.group(c, h) for c, h in map_configs]
    datas = []
    for g in groups:
        seg = ctx.segment(g)
        datas.append((seg, ctx.star(seg.algebra)))
    for gi, g in enumerate(groups):
        for hi, hgrp in enumerate(groups):
            for phi in _generated_group_maps(ctx, g, hgrp):
                result.cases += 1
                rep = upsilon_naturality(
                    phi,
                    window=min(3, ctx.window),
                    dom_data=datas[gi],
                    cod_data=datas[hi],
                )
                if not rep.ok:
                    result.note_failure(
                        f"evaluation square fails {map_configs[gi]}->{map_configs[hi]}"
                    )
    return result


def suite_segment_ideals(ctx: SweepContext) -> SuiteResult:
    """Coordinate ideals of every generated configuration: the segment trace
    is an ideal, the quotient matches the restricted group's segment, and
    coordinate zero sets are exactly the primes."""
    result = SuiteResult("segment_ideals", True, 0)
    for chains, heights in ctx.group_configs():
        g = ctx.group(chains, heights)
        seg = ctx.segment(g)
        primes = ctx.star(seg.algebra).spec.primes
        for r in range(1, len(chains) + 1):
            for zf in itertools.combinations(range(len(chains)), r):
                result.cases += 1
                report = coordinate_ideal_checks(
                    g, zf, segment=seg, segment_primes=primes,
                    segment_cache=ctx._segments,
                )
                if not report.holds:
                    result.note_failure(f"ideal {zf} fails at {chains}/{heights}")
    return result


def suite_spectrum_oracle(ctx: SweepContext) -> SuiteResult:
    """The idempotent-driven ideal enumeration equals the full subset filter."""
    result = SuiteResult("spectrum_oracle", True, 0)
    for a in ctx.algebras(min(12, ctx.max_size)):
        result.cases += 1
        fast = {i.members for i in enumerate_ideals(a)}
        slow = {i.members for i in ideals_by_subset_filter(a)}
        if fast != slow:
            result.note_failure(f"ideal lists disagree on a size-{a.size} algebra")
    return result


def suite_free_quotient(ctx: SweepContext) -> SuiteResult:
    """With the zero generator removed, the pairwise-relation quotient is
    free of rank the spectrum size, matching the star group; keeping the
    zero generator on the two-element chain breaks the match."""
    result = SuiteResult("free_quotient", True, 0)
    for a in ctx.algebras(min(9, ctx.max_size)):
        result.cases += 1
        report = free_quotient_experiment(a, identify_zero=True, star=ctx.star(a))
        expected = tuple([0] * len(ctx.star(a).spec.primes))
        if not (report.isomorphic and report.free_factors == expected):
            result.note_failure(f"factors {report.free_factors} on a size-{a.size} algebra")
    result.cases += 1
    kept = free_quotient_experiment(make_chain(1), identify_zero=False)
    if kept.isomorphic or kept.free_factors != (0, 0):
        result.note_failure("keeping the zero generator should break the match")
    return result


SUITE_ORDER = (
    suite_axioms,
    suite_pair_groups,
    suite_chain_roundtrip,
    suite_general_roundtrip,
    suite_good_sequences,
    suite_naturality,
    suite_segment_ideals,
    suite_spectrum_oracle,
    suite_free_quotient,
)


def run_all_checks(max_size: int = 12, window: int = 4) -> list[SuiteResult]:
    """Run every suite over one shared context, in canonical order."""
    ctx = SweepContext(max_size=max_size, window=window)
    return [suite(ctx) for suite in SUITE_ORDER]
