"""Exact covers, gaps, certified intervals and membership."""

from fractions import Fraction

from cantorval import DigitSet, certified_intervals, cover, member

fig = DigitSet(5, [-4, 0, 2, 3, 4])
for n in range(4):
    c = cover(fig, n)
    print(f"depth {n}: {len(c)} intervals, total length {c.total_length()}")
print("depth-1 gaps:", cover(fig, 1).gaps())

# Cells [k, k+1]/p^n with both ends given by finite words lie inside the set
# when the digit set has the closure property.
example = DigitSet(7, list(range(-6, 3)) + [5, 6])
print("certified at depth 1:", certified_intervals(example, 1).pairs())

cantor = DigitSet(3, [0, 2])
for x in (Fraction(1, 4), Fraction(1, 2), Fraction(1, 3), Fraction(3, 10)):
    m = member(x, cantor)
    if m:
        print(x, "in, digits", m.prefix, "then repeat", m.cycle)
    else:
        print(x, "out, leaves the cover at depth", m.exclusion_depth)
