"""Five possible shapes for C(l1, r1, p) - C(l2, r2, p), read off five inequalities."""

from collections import Counter

from cantorval import classify, conditions, difference_digits, kraft_classify, lr_blocks
from cantorval.classify import iter_spec_tuples

for spec in [(1, 1, 2, 1, 4), (1, 1, 1, 1, 4), (3, 2, 1, 3, 7), (1, 3, 3, 2, 7), (2, 2, 2, 2, 7)]:
    left, right = lr_blocks(spec)
    print(spec, classify(spec).value)
    print("   ", conditions(spec).as_dict())
    print("    missing digits L =", sorted(left.materialize()), "R =", sorted(right.materialize()))
    print("    digits", difference_digits(spec))

# For symmetric sets only the ratio l/p matters.
for l, p in [(1, 3), (2, 7), (1, 4), (3, 10)]:
    print(f"l/p = {l}/{p}:", kraft_classify(l, p).value)

# How common is each type?
print(Counter(classify(s).value for s in iter_spec_tuples(20)))
