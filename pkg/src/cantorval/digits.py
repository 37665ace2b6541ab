"""Finite integer digit sets ``A`` and the base-``p`` sets they generate.

A digit set ``A`` together with a base ``p`` stands for the compact set

    A_p = { sum_{i>=1} x_i / p**i : x_i in A }.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BaseMismatch, EmptySet, PreconditionViolated, TooFewElements


def range_set(lo: int, hi: int) -> frozenset[int]:
    """The integers in ``[lo, hi]``; empty when ``lo > hi``."""
    return frozenset(range(lo, hi + 1))


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int

    def materialize(self) -> frozenset[int]:
        return range_set(self.lo, self.hi)

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi


class DigitSet:
    """A base ``p >= 2`` and a nonempty sorted tuple of integer digits.

    Digits outside ``(-p, p)`` are accepted (sums and scalings can widen the
    alphabet) but ``in_range`` is then False and the geometry module refuses
    the set.  Treat instances as immutable; they hash by ``(base, digits)``.
    """

    __slots__ = ("base", "_digits", "_runs")

    def __init__(self, base: int, digits: Iterable[int]):
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        ds = tuple(sorted(set(int(d) for d in digits)))
        if not ds:
            raise EmptySet("a digit set needs at least one digit")
        self.base = int(base)
        self._digits = ds
        self._runs = None

    @classmethod
    def _from_merged_runs(cls, base: int, runs: tuple[tuple[int, int], ...]) -> "DigitSet":
        obj = object.__new__(cls)
        obj.base = base
        obj._digits = None
        obj._runs = runs
        return obj

    @property
    def digits(self) -> tuple[int, ...]:
        if self._digits is None:
            ds = []
            for lo, hi in self._runs:
                ds.extend(range(lo, hi + 1))
            self._digits = tuple(ds)
        return self._digits

    @property
    def runs(self) -> tuple[tuple[int, int], ...]:
        """Maximal blocks of consecutive digits as ``(first, last)`` pairs."""
        if self._runs is None:
            out = []
            ds = self._digits
            start = prev = ds[0]
            for d in ds[1:]:
                if d != prev + 1:
                    out.append((start, prev))
                    start = d
                prev = d
            out.append((start, prev))
            self._runs = tuple(out)
        return self._runs

    def __eq__(self, other):
        if not isinstance(other, DigitSet):
            return NotImplemented
        return self.base == other.base and self.runs == other.runs

    def __hash__(self):
        return hash((self.base, self.runs))

    @property
    def in_range(self) -> bool:
        return -self.base < self.lo and self.hi < self.base

    @property
    def lo(self) -> int:
        return self.runs[0][0]

    @property
    def hi(self) -> int:
        return self.runs[-1][1]

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.runs)

    def __iter__(self):
        return iter(self.digits)

    def __contains__(self, d: int) -> bool:
        return any(lo <= d <= hi for lo, hi in self.runs)

    def __neg__(self) -> "DigitSet":
        return scale(-1, self)

    def __repr__(self) -> str:
        body = ",".join(str(d) for d in self.digits)
        return f"{{{body}}}_{self.base}"


def _check_bases(a: DigitSet, b: DigitSet) -> None:
    if a.base != b.base:
        raise BaseMismatch(f"bases differ: {a.base} != {b.base}")


def _from_runs(base: int, runs: list[tuple[int, int]]) -> DigitSet:
    runs.sort()
    merged = []
    cur_lo, cur_hi = runs[0]
    for lo, hi in runs:
        if lo <= cur_hi + 1:
            if hi > cur_hi:
                cur_hi = hi
        else:
            merged.append((cur_lo, cur_hi))
            cur_lo, cur_hi = lo, hi
    merged.append((cur_lo, cur_hi))
    return DigitSet._from_merged_runs(base, tuple(merged))


def minkowski_sum(a: DigitSet, b: DigitSet) -> DigitSet:
    """``{x + y : x in A, y in B}``, computed run by run."""
    if a.base != b.base:
        _check_bases(a, b)
    bruns = b.runs
    return _from_runs(a.base, [(x0 + y0, x1 + y1) for x0, x1 in a.runs for y0, y1 in bruns])


def minkowski_diff(a: DigitSet, b: DigitSet) -> DigitSet:
    if a.base != b.base:
        _check_bases(a, b)
    bruns = b.runs
    return _from_runs(a.base, [(x0 - y1, x1 - y0) for x0, x1 in a.runs for y0, y1 in bruns])


def scale(k: int, a: DigitSet) -> DigitSet:
    return DigitSet(a.base, {k * x for x in a.digits})


def _as_sorted(a) -> list[int]:
    if isinstance(a, DigitSet):
        return list(a.digits)
    return sorted(set(a))


def diam(a) -> int:
    if isinstance(a, DigitSet):
        return a.hi - a.lo
    xs = _as_sorted(a)
    if not xs:
        raise EmptySet("diam of an empty set")
    return xs[-1] - xs[0]


def delta(a) -> int:
    """Largest jump between consecutive elements."""
    if isinstance(a, DigitSet):
        runs = a.runs
        if len(runs) > 1:
            return max(nxt[0] - cur[1] for cur, nxt in zip(runs, runs[1:]))
        if runs[0][1] > runs[0][0]:
            return 1
    xs = _as_sorted(a)
    if len(xs) < 2:
        raise TooFewElements("delta needs at least two elements")
    return max(y - x for x, y in zip(xs, xs[1:]))


def interval_ratio(a) -> Fraction:
    d = delta(a)
    return Fraction(d, d + diam(a))


def is_full_interval(a: DigitSet) -> bool:
    """Whether ``A_p`` is a single closed interval (``1/p >= I(A)``)."""
    d = delta(a)
    # 1/p >= d/(d + diam), cleared of (positive) denominators
    return d + diam(a) >= a.base * d


def full_diff_interval(a: DigitSet, b: DigitSet) -> bool:
    """Whether ``A_p - B_p = [-1, 1]`` for ``A, B`` containing both 0 and p-1."""
    _check_bases(a, b)
    p = a.base
    if p <= 2:
        raise PreconditionViolated("needs p > 2")
    for name, s in (("A", a), ("B", b)):
        if s.lo < 0 or s.hi > p - 1:
            raise PreconditionViolated(f"{name} must lie in <0, {p - 1}>")
        if 0 not in s or p - 1 not in s:
            raise PreconditionViolated(f"{name} must contain 0 and {p - 1}")
    return delta(minkowski_diff(a, b)) <= 2
