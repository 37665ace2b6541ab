"""Finite-depth structural signatures and parameter sweeps.

A signature records what covers and certified cells show around each gap of
a depth-``base_depth`` cover, looking down to ``probe_depth``.  Each
topological type implies certain signature patterns, so a mismatch refutes a
predicted type; a match is only consistency, never proof.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .classify import (
    DiffSpec,
    TopologicalType,
    branches,
    classify,
    conditions,
    difference_digits,
    iter_specs,
    mirror,
)
from .digits import DigitSet, minkowski_diff
from .errors import BaseMismatch, DepthTooLarge
from .geometry import (
    bi_obtainable,
    certified_intervals,
    certifies_intervals,
    cover,
)

T = TopologicalType


@dataclass(frozen=True)
class GapRecord:
    gap: tuple[Fraction, Fraction]
    left_adjacent_certified: bool
    right_adjacent_certified: bool
    left_nearby_gap: bool
    right_nearby_gap: bool
    left_nearby_interval: bool
    right_nearby_interval: bool

    def mirrored(self) -> "GapRecord":
        a, b = self.gap
        return GapRecord(
            gap=(-b, -a),
            left_adjacent_certified=self.right_adjacent_certified,
            right_adjacent_certified=self.left_adjacent_certified,
            left_nearby_gap=self.right_nearby_gap,
            right_nearby_gap=self.left_nearby_gap,
            left_nearby_interval=self.right_nearby_interval,
            right_nearby_interval=self.left_nearby_interval,
        )

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "gap"}
        out["gap"] = [str(self.gap[0]), str(self.gap[1])]
        return out


@dataclass(frozen=True)
class Signature:
    base_depth: int
    probe_depth: int
    window: Fraction
    is_full_hull: bool
    gap_count: int
    has_certified_interval: bool
    gaps: tuple[GapRecord, ...] = field(default=())
    # every base-depth component holds a probe-depth gap
    components_split: bool = False

    def mirrored(self) -> "Signature":
        """Signature expected for the negated digit set."""
        return replace(self, gaps=tuple(g.mirrored() for g in reversed(self.gaps)))

    def as_dict(self) -> dict:
        return {
            "base_depth": self.base_depth,
            "probe_depth": self.probe_depth,
            "window": str(self.window),
            "is_full_hull": self.is_full_hull,
            "gap_count": self.gap_count,
            "has_certified_interval": self.has_certified_interval,
            "components_split": self.components_split,
            "gaps": [g.as_dict() for g in self.gaps],
        }


class _Cells:
    """Memoised bi-obtainability of grid cells ``[k, k+1] / p**m``."""

    def __init__(self, a: DigitSet):
        self.a = a
        self.ok = certifies_intervals(a)
        self._memo: dict[tuple[int, int], bool] = {}

    def certified(self, k: int, m: int) -> bool:
        if not self.ok:
            return False
        key = (k, m)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = bi_obtainable(self.a, k, m)
        return hit


def _run_certified(cells: _Cells, first: int, count: int, m: int) -> bool:
    return all(cells.certified(k, m) for k in range(first, first + count))


def signature(a: DigitSet, base_depth: int = 3, probe_depth: int = 6, budget=None) -> Signature:
    """Structural signature of ``A_p`` around the gaps of ``cover(a, base_depth)``.

    Per gap ``(l, r)``, with ``w = 1/p**(base_depth-1)``:

    * ``right_adjacent_certified``: for every ``m`` in ``base_depth+1 ..
      probe_depth`` the ``p-1`` cells of width ``p**-m`` starting one cell to
      the right of ``r`` are certified, so ``[r + p**-probe, r + p**-base]``
      lies in ``A_p``;
    * ``right_nearby_gap``: a gap of ``cover(a, probe_depth)`` starts in
      ``(r, r + w)``;
    * ``right_nearby_interval``: for some ``m`` in ``base_depth ..
      probe_depth-1`` a certified depth-``m+1`` cell lies in ``(r, r + p**-m]``;

    and the mirror images on the left of ``l``.
    """
    if probe_depth < base_depth:
        raise ValueError("probe_depth must be >= base_depth")
    p = a.base
    base_cover = cover(a, base_depth, budget)
    base_gaps = base_cover.gaps()
    window = Fraction(1, p ** (base_depth - 1)) if base_depth >= 1 else Fraction(p)
    cells = _Cells(a)

    split = probe_depth > base_depth and gaps_in_every_component(
        a, base_depth, probe_depth - base_depth, budget
    )

    has_cert = False
    if cells.ok:
        for m in range(base_depth, probe_depth + 1):
            if len(certified_intervals(a, m)):
                has_cert = True
                break

    records = []
    if base_gaps:
        probe_gaps = cover(a, probe_depth, budget).gaps()
        gap_lefts = [g[0] for g in probe_gaps]
        gap_rights = [g[1] for g in probe_gaps]
        for l, r in base_gaps:
            # a probe gap ending strictly inside (l - w, l)
            i = bisect_right(gap_rights, l - window)
            left_gap = i < len(gap_rights) and gap_rights[i] < l
            j = bisect_right(gap_lefts, r)
            right_gap = j < len(gap_lefts) and gap_lefts[j] < r + window

            right_adj = left_adj = cells.ok
            right_near = left_near = False
            if cells.ok:
                for m in range(base_depth + 1, probe_depth + 1):
                    scale = p**m
                    kr = math.floor(r * scale) + 1
                    kl = math.ceil(l * scale) - 1
                    right_adj = right_adj and _run_certified(cells, kr, p - 1, m)
                    left_adj = left_adj and _run_certified(cells, kl - (p - 2) - 1, p - 1, m)
                for m in range(base_depth, probe_depth):
                    scale = p ** (m + 1)
                    kr = math.floor(r * scale)
                    kl = math.ceil(l * scale)
                    # cells of width p**-(m+1) in (r, r + p**-m], clear of r
                    right_near = right_near or any(
                        cells.certified(k, m + 1)
                        for k in range(kr + 1, kr + p)
                        if Fraction(k, scale) > r
                    )
                    left_near = left_near or any(
                        cells.certified(k, m + 1)
                        for k in range(kl - p, kl - 1)
                        if Fraction(k + 1, scale) < l
                    )
            records.append(
                GapRecord(
                    gap=(l, r),
                    left_adjacent_certified=left_adj,
                    right_adjacent_certified=right_adj,
                    left_nearby_gap=left_gap,
                    right_nearby_gap=right_gap,
                    left_nearby_interval=left_near,
                    right_nearby_interval=right_near,
                )
            )

    return Signature(
        base_depth=base_depth,
        probe_depth=probe_depth,
        window=window,
        is_full_hull=len(base_cover) == 1,
        gap_count=len(base_gaps),
        has_certified_interval=has_cert,
        gaps=tuple(records),
        components_split=split,
    )


def signature_matches(t: TopologicalType, s: Signature) -> bool:
    """Necessary finite-depth conditions for ``t``; True means "not refuted"."""
    t = TopologicalType(t)
    if t is T.FullInterval:
        return s.is_full_hull and s.gap_count == 0
    if s.gap_count == 0:
        return False
    if t is T.CantorSet:
        return s.components_split and not s.has_certified_interval
    if not s.has_certified_interval:
        return False
    if t is T.LCantorval:
        return all(
            g.right_adjacent_certified
            and not g.left_adjacent_certified
            and g.left_nearby_gap
            and g.left_nearby_interval
            for g in s.gaps
        )
    if t is T.RCantorval:
        return all(
            g.left_adjacent_certified
            and not g.right_adjacent_certified
            and g.right_nearby_gap
            and g.right_nearby_interval
            for g in s.gaps
        )
    return all(
        g.left_nearby_gap
        and g.right_nearby_gap
        and g.left_nearby_interval
        and g.right_nearby_interval
        and not g.left_adjacent_certified
        and not g.right_adjacent_certified
        for g in s.gaps
    )


def gaps_in_every_component(a: DigitSet, n: int, lookahead: int = 2, budget=None) -> bool:
    """Every component of ``cover(a, n)`` contains a gap of ``cover(a, n + lookahead)``."""
    outer = cover(a, n, budget)
    inner = cover(a, n + lookahead, budget)
    factor = inner.denom // outer.denom
    gap_starts = inner.hi[:-1]
    for lo, hi in zip(outer.lo.tolist(), outer.hi.tolist()):
        # first inner gap (hi_i, lo_{i+1}) starting at or right of lo
        i = int(np.searchsorted(gap_starts, lo * factor, side="left"))
        if i == len(gap_starts) or gap_starts[i] >= hi * factor:
            return False
    return True


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    spec: DiffSpec
    predicted: TopologicalType
    signature: Signature | None
    consistent: bool | str

    def as_dict(self) -> dict:
        l1, r1, l2, r2, p = self.spec.as_tuple()
        return {
            "l1": l1,
            "r1": r1,
            "l2": l2,
            "r2": r2,
            "p": p,
            "type": self.predicted.value,
            "consistent": self.consistent,
        }


@dataclass
class SweepReport:
    rows: list[SweepRow]
    tallies: Counter
    partition_ok: bool
    mirror_ok: bool
    base_depth: int
    probe_depth: int

    @property
    def inconsistent(self) -> list[SweepRow]:
        return [r for r in self.rows if r.consistent is False]

    @property
    def skipped(self) -> list[SweepRow]:
        return [r for r in self.rows if r.consistent == "skipped"]

    @property
    def ok(self) -> bool:
        return not self.inconsistent and self.partition_ok and self.mirror_ok

    def summary(self) -> dict:
        return {
            "summary": True,
            "rows": len(self.rows),
            "inconsistent": len(self.inconsistent),
            "skipped": len(self.skipped),
            "tallies": {t.value: self.tallies.get(t, 0) for t in TopologicalType},
            "partition_ok": self.partition_ok,
            "mirror_ok": self.mirror_ok,
            "base_depth": self.base_depth,
            "probe_depth": self.probe_depth,
        }


def _signature_or_skip(d: DigitSet, base_depth: int, probe_depth: int, budget):
    try:
        return signature(d, base_depth, probe_depth, budget)
    except DepthTooLarge:
        return None


def sweep(
    p_max: int,
    base_depth: int = 3,
    probe_depth: int = 6,
    verify: bool = True,
    budget: int | None = None,
    workers: int | None = None,
) -> SweepReport:
    """Classify every valid spec with ``p <= p_max`` and check it against its signature.

    Rows come back ordered by ``(p, l1, r1, l2, r2)`` whatever ``workers`` is.
    With ``verify=False`` only the classification is reported.
    """
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    specs = list(iter_specs(p_max))
    digit_sets = {}
    for s in specs:
        digit_sets.setdefault(s, difference_digits(s))

    sigs: dict[DigitSet, Signature | None] = {}
    if verify:
        unique = list(dict.fromkeys(digit_sets.values()))
        if workers and workers > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(workers) as pool:
                results = pool.map(
                    _signature_or_skip,
                    unique,
                    itertools.repeat(base_depth),
                    itertools.repeat(probe_depth),
                    itertools.repeat(budget),
                )
                sigs = dict(zip(unique, results))
        else:
            for d in unique:
                sigs[d] = _signature_or_skip(d, base_depth, probe_depth, budget)

    rows = []
    tallies: Counter = Counter()
    partition_ok = mirror_ok = True
    for s in specs:
        fired = branches(conditions(s))
        partition_ok = partition_ok and len(fired) == 1
        t = classify(s)
        mirror_ok = mirror_ok and t == mirror(classify(s.swapped()))
        tallies[t] += 1
        sig = sigs.get(digit_sets[s]) if verify else None
        if not verify:
            consistent = "skipped"
        elif sig is None:
            consistent = "skipped"
        else:
            consistent = signature_matches(t, sig)
        rows.append(SweepRow(s, t, sig, consistent))
    return SweepReport(rows, tallies, partition_ok, mirror_ok, base_depth, probe_depth)


# --------------------------------------------------------------------------
# grid-level check of (A - B)_p = A_p - B_p


def _grid_values(digits, p: int, n: int) -> set[int]:
    return {
        sum(x * p ** (n - 1 - i) for i, x in enumerate(word))
        for word in itertools.product(digits, repeat=n)
    }


def prop_dod_grid_check(a: DigitSet, b: DigitSet, n: int) -> bool:
    """Depth-``n`` truncations of ``(A-B)_p`` equal differences of truncations of ``A_p``, ``B_p``.

    Both sides are enumerated word by word.
    """
    if a.base != b.base:
        raise BaseMismatch(f"bases differ: {a.base} != {b.base}")
    p = a.base
    lhs = _grid_values(minkowski_diff(a, b).digits, p, n)
    av = _grid_values(a.digits, p, n)
    bv = _grid_values(b.digits, p, n)
    rhs = {x - y for x in av for y in bv}
    return lhs == rhs
