"""Digit sets, their differences, and the one-line interval test."""

from cantorval import DigitSet, a_set, delta, diam, interval_ratio, is_full_interval, minkowski_diff

# The middle-thirds Cantor set is A_p for A = {0, 2}, p = 3.
cantor = DigitSet(3, [0, 2])
print(cantor, "diam", diam(cantor), "delta", delta(cantor))

# C - C is generated by the digit differences.
d = minkowski_diff(cantor, cantor)
print("C - C digits:", d)

# A_p is an interval exactly when 1/p >= delta / (delta + diam).
for s in (cantor, d):
    print(s, "ratio", interval_ratio(s), "-> interval" if is_full_interval(s) else "-> not an interval")

# Keep the 3 leftmost and 2 rightmost of 7 pieces, minus 1 leftmost and 3 rightmost.
a, b = a_set((3, 2, 7)), a_set((1, 3, 7))
print(a, "-", b, "=", minkowski_diff(a, b))
