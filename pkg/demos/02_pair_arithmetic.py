"""Carry arithmetic: the totally ordered group built on pairs (m, a).

The group attached to a chain C has carrier Z x {0..top-1}: think of m as a
whole number of units and a as a fractional part measured in C.  Addition
carries exactly when the fractional parts overflow the top.

Run:  python3 demos/02_pair_arithmetic.py
"""

from mvgamma import ChangChainGroup, abs_decompose, gamma_segment, make_chain, make_product_group

C = make_chain(2)          # carrier {0,1,2}
G = ChangChainGroup(C)
print("fiber over a height-2 chain; height =", G.height)

half = G.pair(0, 1)        # "half" of the unit, roughly
u = G.unit                 # one whole copy of the chain

print("u        =", u)
print("x        =", half)
print("x+x      =", G.add(half, half), "  <- two halves make exactly one unit")
print("x+x+x    =", G.add(G.add(half, half), half), "  <- carry: 3 halves = 1u + half")
print("-x       =", G.neg(half))
print("(-x)∨0   =", G.join(G.neg(half), G.zero), "  and (x)∨0 =", G.join(half, G.zero))
print()

# Total order is lexicographic: whole part first, then the fractional part.
print("interval [-u, u] in order:")
print("  ", G.interval(G.neg(u), u))
print()

# Products of fibers give the general finite case.  Units may sit at
# different heights in different coordinates; the segment [0, u] of the
# product is an algebra whose primes match the coordinates.
H = make_product_group(
    [ChangChainGroup(make_chain(1)), ChangChainGroup(make_chain(2))],
    [(1, 0), (2, 1)],
)
print("two fibers, unit =", H.u)
seg = gamma_segment(H)
print("segment [0,u] size:", seg.algebra.size)

x = (H.fibers[0].pair(0, 0), H.fibers[1].pair(1, 1))
y = (H.fibers[0].pair(1, 0), H.fibers[1].pair(0, 1))
print("x ∧ y =", H.meet(x, y))
print("x ∨ y =", H.join(x, y), "   (both componentwise)")

# Every element splits into a positive and a negative part that never
# overlap: x = x⁺ − x⁻ with x⁺ ∧ x⁻ = 0 and |x| = x⁺ + x⁻.
z = H.sub(x, y)
pos, neg, absolute = abs_decompose(H, z)
print("z =", z)
print("z⁺ =", pos, " z⁻ =", neg, " |z| =", absolute)
assert H.meet(pos, neg) == H.zero
print("split checks out.")
