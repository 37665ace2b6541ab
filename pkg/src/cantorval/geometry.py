"""Exact finite-depth geometry of ``A_p``.

Depth-``n`` covers are unions of the closed intervals ``xbar_n + T_n`` over
all words ``x in A^n``, where ``T_n`` is the hull of every possible tail
``sum_{i>n} x_i / p**i``.  Covers shrink with ``n`` and always contain
``A_p``, so a gap of a cover is a gap of ``A_p``.  Interval endpoints are
stored as integer numerators over the common denominator ``p**n * (p-1)``.
"""

from __future__ import annotations

import os
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .digits import DigitSet
from .errors import DepthTooLarge, DigitOutOfRange

BUDGET_ENV = "CANTORVAL_INTERVAL_BUDGET"
DEFAULT_BUDGET = 10**6

_INT64_SAFE = 2**62


def interval_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _require_valid(a: DigitSet) -> None:
    if not a.in_range:
        raise DigitOutOfRange(f"{a} has digits outside (-{a.base}, {a.base})")


# --------------------------------------------------------------------------
# exact numbers


@dataclass(frozen=True)
class PAdicRational:
    """``numerator / base**depth``, kept with ``base`` stripped from the numerator."""

    numerator: int
    depth: int
    base: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        num, n = self.numerator, self.depth
        while n > 0 and num % self.base == 0:
            num //= self.base
            n -= 1
        if num == 0:
            n = 0
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "depth", n)

    @classmethod
    def from_fraction(cls, x: Fraction, base: int) -> "PAdicRational":
        x = Fraction(x)
        den, n = x.denominator, 0
        scale = 1
        while den != 1:
            g = gcd(den, base)
            if g == 1:
                raise ValueError(f"{x} is not of the form k/{base}**n")
            den //= g
            scale *= base // g
            n += 1
        return cls(x.numerator * scale, n, base)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.base**self.depth)

    def __lt__(self, other):
        return self.to_fraction() < _frac(other)

    def __le__(self, other):
        return self.to_fraction() <= _frac(other)

    def __gt__(self, other):
        return self.to_fraction() > _frac(other)

    def __ge__(self, other):
        return self.to_fraction() >= _frac(other)

    def __str__(self):
        if self.depth == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.base}^{self.depth}"


def _frac(x) -> Fraction:
    return x.to_fraction() if isinstance(x, PAdicRational) else Fraction(x)


def encode_number(x: Fraction, base: int) -> dict:
    """Lossless JSON form ``{"num": str, "den_pow": n}`` of ``num / base**n``.

    Values whose denominator is not a power of ``base`` (cover endpoints carry
    a factor ``p-1``) add ``"den_mul": m`` for ``num / (m * base**n)``.
    """
    x = Fraction(x)
    den, n, scale = x.denominator, 0, 1
    while True:
        g = gcd(den, base)
        if g == 1:
            break
        den //= g
        scale *= base // g
        n += 1
    out = {"num": str(x.numerator * scale), "den_pow": n}
    if den != 1:
        out["den_mul"] = den
    return out


def decode_number(obj: dict, base: int) -> Fraction:
    return Fraction(int(obj["num"]), obj.get("den_mul", 1) * base ** obj["den_pow"])


# --------------------------------------------------------------------------
# interval sets


def _as_int_array(values, bound: int) -> np.ndarray:
    if bound < _INT64_SAFE:
        return np.asarray(values, dtype=np.int64)
    return np.asarray([int(v) for v in values], dtype=object)


def _merge(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Merge closed integer intervals; touching ones become one interval."""
    if len(lo) == 0:
        return lo, hi
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    reach = np.maximum.accumulate(hi)
    starts = np.ones(len(lo), dtype=bool)
    starts[1:] = np.asarray(lo[1:] > reach[:-1], dtype=bool)
    first = np.flatnonzero(starts)
    last = np.append(first[1:] - 1, len(lo) - 1)
    return lo[first], reach[last]


class IntervalSet:
    """Sorted, pairwise disjoint, non-touching closed intervals.

    Interval ``i`` is ``[lo[i] / denom, hi[i] / denom]``.
    """

    def __init__(self, lo, hi, denom: int, base: int):
        self.lo = lo
        self.hi = hi
        self.denom = denom
        self.base = base

    @classmethod
    def empty(cls, base: int) -> "IntervalSet":
        z = np.zeros(0, dtype=np.int64)
        return cls(z, z, 1, base)

    @classmethod
    def from_pairs(cls, pairs, base: int) -> "IntervalSet":
        pairs = [(Fraction(a), Fraction(b)) for a, b in pairs]
        if not pairs:
            return cls.empty(base)
        den = 1
        for a, b in pairs:
            den = den * a.denominator // gcd(den, a.denominator)
            den = den * b.denominator // gcd(den, b.denominator)
        los = [int(a * den) for a, _ in pairs]
        his = [int(b * den) for _, b in pairs]
        if any(x > y for x, y in zip(los, his)):
            raise ValueError("interval with lo > hi")
        bound = max(abs(v) for v in los + his)
        lo, hi = _merge(_as_int_array(los, bound), _as_int_array(his, bound))
        return cls(lo, hi, den, base)

    def __len__(self) -> int:
        return len(self.lo)

    def __iter__(self):
        d = self.denom
        for a, b in zip(self.lo.tolist(), self.hi.tolist()):
            yield Fraction(a, d), Fraction(b, d)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return list(self) == list(other)

    def __repr__(self):
        body = ", ".join(f"[{a}, {b}]" for a, b in self)
        return f"IntervalSet({body})"

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return list(self)

    @property
    def hull(self) -> tuple[Fraction, Fraction]:
        return Fraction(int(self.lo[0]), self.denom), Fraction(int(self.hi[-1]), self.denom)

    def contains(self, x) -> bool:
        x = _frac(x)
        # compare x*denom against integer endpoints without leaving exact arithmetic
        t = x * self.denom
        his = self.hi.tolist()
        i = bisect_right(self.lo.tolist(), t) - 1
        return i >= 0 and t <= his[i]

    __contains__ = contains

    def gaps(self) -> list[tuple[Fraction, Fraction]]:
        d = self.denom
        his, los = self.hi.tolist(), self.lo.tolist()
        return [(Fraction(h, d), Fraction(l, d)) for h, l in zip(his[:-1], los[1:])]

    def issubset(self, other: "IntervalSet") -> bool:
        """Every interval of ``self`` lies inside a single interval of ``other``."""
        olo = [Fraction(v, other.denom) for v in other.lo.tolist()]
        ohi = [Fraction(v, other.denom) for v in other.hi.tolist()]
        for a, b in self:
            i = bisect_right(olo, a) - 1
            if i < 0 or b > ohi[i]:
                return False
        return True

    def total_length(self) -> Fraction:
        return Fraction(int(sum((self.hi - self.lo).tolist())), self.denom)


@dataclass
class GapList:
    """Open gaps between consecutive intervals of a depth-``depth`` cover."""

    gaps: list[tuple[Fraction, Fraction]]
    hull: tuple[Fraction, Fraction]
    depth: int

    def __len__(self):
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)


# --------------------------------------------------------------------------
# covers


def tail_hull(a: DigitSet, n: int) -> tuple[Fraction, Fraction]:
    """Hull of ``sum_{i>n} x_i / p**i`` over all digit sequences."""
    scale = a.base**n * (a.base - 1)
    return Fraction(a.lo, scale), Fraction(a.hi, scale)


def cover(a: DigitSet, n: int, budget: int | None = None) -> IntervalSet:
    """Merged union of ``xbar_n + tail_hull(a, n)`` over all words of length ``n``.

    Built one digit at a time from ``cover(n) = U_d (d + cover(n-1)) / p``.
    """
    _require_valid(a)
    if n < 0:
        raise ValueError("depth must be >= 0")
    budget = interval_budget() if budget is None else budget
    p = a.base
    bound = p ** (n + 1) * p
    digits = _as_int_array(a.digits, bound)
    lo = _as_int_array([a.lo], bound)
    hi = _as_int_array([a.hi], bound)
    # numerators over p**j * (p-1)
    for j in range(1, n + 1):
        shift = digits * (p ** (j - 1) * (p - 1))
        lo = (lo[None, :] + shift[:, None]).ravel()
        hi = (hi[None, :] + shift[:, None]).ravel()
        lo, hi = _merge(lo, hi)
        if len(lo) > budget:
            raise DepthTooLarge(f"cover of {a} at depth {j} has {len(lo)} intervals > {budget}")
    return IntervalSet(lo, hi, p**n * (p - 1), p)


def gaps(a: DigitSet, n: int, budget: int | None = None) -> GapList:
    c = cover(a, n, budget)
    return GapList(c.gaps(), c.hull, n)


# --------------------------------------------------------------------------
# grid points


def _residue_table(a: DigitSet) -> dict[int, tuple[int, ...]]:
    table: dict[int, list[int]] = {}
    for d in a.digits:
        table.setdefault(d % a.base, []).append(d)
    return {r: tuple(ds) for r, ds in table.items()}


def representation(a: DigitSet, k: int, n: int) -> tuple[int, ...] | None:
    """A word ``(x_1, ..., x_n)`` over ``a`` with ``sum x_i p**(n-i) == k``.

    Digits are fixed from the last one: ``x_n`` is congruent to ``k`` mod ``p``,
    which leaves at most two candidates per level, and partial values outside
    the reachable range are pruned.  Returns None when no word exists.
    """
    p = a.base
    table = _residue_table(a)
    lo, hi = a.lo, a.hi

    @lru_cache(maxsize=None)
    def solve(k: int, m: int):
        if m == 0:
            return () if k == 0 else None
        span = (p**m - 1) // (p - 1)
        if k < lo * span or k > hi * span:
            return None
        for d in table.get(k % p, ()):
            head = solve((k - d) // p, m - 1)
            if head is not None:
                return head + (d,)
        return None

    return solve(k, n)


def representable(a: DigitSet, k: int, n: int) -> bool:
    return representation(a, k, n) is not None


def representable_set(a: DigitSet, n: int) -> np.ndarray:
    """Sorted distinct integers ``sum x_i p**(n-i)`` over all words of length ``n``."""
    p = a.base
    bound = p ** (n + 1)
    digits = _as_int_array(a.digits, bound)
    ks = _as_int_array([0], bound)
    for _ in range(n):
        ks = np.unique((ks[None, :] * p + digits[:, None]).ravel())
    return ks


def bi_obtainable(a: DigitSet, k: int, n: int) -> bool:
    """Both ``k/p**n`` and ``(k+1)/p**n`` are values of depth-``n`` words."""
    return representable(a, k, n) and representable(a, k + 1, n)


def has_closure_property(a: DigitSet) -> bool:
    """``k in A or k - p in A`` for every ``k`` in ``0..p-1``."""
    p = a.base
    return all(k in a or k - p in a for k in range(p))


def certifies_intervals(a: DigitSet) -> bool:
    """Whether bi-obtainable grid cells of ``a`` are guaranteed to lie in ``A_p``."""
    return a.in_range and 0 in a and has_closure_property(a)


def certified_intervals(a: DigitSet, n: int) -> IntervalSet:
    """Union of the cells ``[k, k+1] / p**n`` that are provably inside ``A_p``.

    A cell qualifies when both of its ends are depth-``n`` word values.  Under
    the closure property such a cell stays bi-obtainable at every deeper
    level, and a closed set containing points of every refinement contains
    the whole cell.  Without the property nothing is certified.
    """
    _require_valid(a)
    if not certifies_intervals(a):
        return IntervalSet.empty(a.base)
    ks = representable_set(a, n)
    starts = ks[np.isin(ks + 1, ks)]
    lo, hi = _merge(starts, starts + 1)
    return IntervalSet(lo, hi, a.base**n, a.base)


# --------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Membership:
    """Outcome of :func:`member`.

    For ``In`` the witness is the eventually periodic expansion
    ``prefix + cycle + cycle + ...``.  For ``Out``, ``exclusion_depth`` is the
    smallest ``n`` with ``x`` outside ``cover(A, n)``.
    """

    status: str
    x: Fraction
    base: int
    prefix: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()
    exclusion_depth: int | None = None
    states_explored: int = 0
    reason: str = ""

    def __bool__(self):
        return self.status == "In"

    def witness_value(self) -> Fraction:
        """Value of the witness expansion, computed independently of the search."""
        p = self.base
        head = sum(Fraction(d, p ** (i + 1)) for i, d in enumerate(self.prefix))
        c = len(self.cycle)
        block = sum(d * p ** (c - 1 - i) for i, d in enumerate(self.cycle))
        return head + Fraction(block, p**c - 1) / p ** len(self.prefix)

    def as_dict(self) -> dict:
        out = {"member": self.status}
        if self.status == "In":
            out["witness"] = {"prefix": list(self.prefix), "cycle": list(self.cycle)}
        else:
            out["witness"] = {
                "exclusion_depth": self.exclusion_depth,
                "states_explored": self.states_explored,
                "reason": self.reason,
            }
        return out


def member(x, a: DigitSet) -> Membership:
    """Decide ``x in A_p`` for a rational ``x``.

    With ``x = s/b`` the residual after reading a digit is ``(p*s - d*b)/b``:
    the denominator never changes and the numerator is confined to the tail
    hull, so the reachable residuals form a finite graph.  ``x`` is a member
    exactly when an infinite path, i.e. a reachable cycle, survives; dead
    ends are peeled off until only nodes with a live successor remain.
    """
    _require_valid(a)
    x = _frac(x)
    p = a.base
    b = x.denominator
    lo_b, hi_b = a.lo * b, a.hi * b

    def inside(s: int) -> bool:
        return lo_b <= (p - 1) * s <= hi_b

    s0 = x.numerator
    if not inside(s0):
        return Membership("Out", x, p, exclusion_depth=0, reason="outside hull")

    succ: dict[int, list[tuple[int, int]]] = {}
    queue = deque([s0])
    succ[s0] = []
    while queue:
        s = queue.popleft()
        nxt = []
        for d in a.digits:
            t = p * s - d * b
            if inside(t):
                nxt.append((d, t))
                if t not in succ:
                    succ[t] = []
                    queue.append(t)
        succ[s] = nxt

    preds: dict[int, list[int]] = {s: [] for s in succ}
    live = {s: len(v) for s, v in succ.items()}
    for s, v in succ.items():
        for _, t in v:
            preds[t].append(s)
    # longest remaining path from each dead node, filled in as nodes die
    height: dict[int, int] = {}
    dead = deque(s for s, c in live.items() if c == 0)
    for s in dead:
        height[s] = 0
    while dead:
        s = dead.popleft()
        for q in preds[s]:
            live[q] -= 1
            if live[q] == 0:
                height[q] = 1 + max(height[t] for _, t in succ[q])
                dead.append(q)

    if s0 in height:
        return Membership(
            "Out",
            x,
            p,
            exclusion_depth=height[s0] + 1,
            states_explored=len(succ),
            reason="every digit path leaves the tail hull",
        )

    word, seen = [], {}
    s = s0
    while s not in seen:
        seen[s] = len(word)
        d, s = next((d, t) for d, t in succ[s] if t not in height)
        word.append(d)
    i = seen[s]
    return Membership(
        "In",
        x,
        p,
        prefix=tuple(word[:i]),
        cycle=tuple(word[i:]),
        states_explored=len(succ),
    )


def endpoint_membership(g, a: DigitSet) -> Membership:
    """Membership of a gap or cover endpoint."""
    return member(g, a)
