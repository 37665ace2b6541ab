"""Closed-form topology of ``C(l1, r1, p) - C(l2, r2, p)``.

``C(l, r, p)`` keeps the ``l`` leftmost and ``r`` rightmost of the ``p``
equal subintervals at every step of the construction, i.e. it is ``A_p`` for
``A = <0, l-1> u <p-r, p-1>``.  The difference of two such sets is always one
of five things; :func:`classify` says which from five integer inequalities.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .digits import DigitSet, IntRange, minkowski_diff, range_set
from .errors import InvalidSpec


class TopologicalType(str, enum.Enum):
    FullInterval = "FullInterval"
    CantorSet = "CantorSet"
    LCantorval = "LCantorval"
    RCantorval = "RCantorval"
    MCantorval = "MCantorval"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SCantorSpec:
    l: int
    r: int
    p: int

    def __post_init__(self):
        _validate_side(self.l, self.r, self.p)


@dataclass(frozen=True)
class DiffSpec:
    l1: int
    r1: int
    l2: int
    r2: int
    p: int

    def __post_init__(self):
        _validate_side(self.l1, self.r1, self.p)
        _validate_side(self.l2, self.r2, self.p)

    @property
    def left(self) -> SCantorSpec:
        return SCantorSpec(self.l1, self.r1, self.p)

    @property
    def right(self) -> SCantorSpec:
        return SCantorSpec(self.l2, self.r2, self.p)

    def swapped(self) -> "DiffSpec":
        return DiffSpec(self.l2, self.r2, self.l1, self.r1, self.p)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.l1, self.r1, self.l2, self.r2, self.p)


def _validate_side(l: int, r: int, p: int) -> None:
    if p <= 2:
        raise InvalidSpec(f"p must be > 2, got {p}")
    if l < 1 or r < 1:
        raise InvalidSpec(f"l and r must be >= 1, got l={l}, r={r}")
    if l + r >= p:
        raise InvalidSpec(f"need l + r < p, got {l} + {r} >= {p}")


def _spec(spec) -> DiffSpec:
    if isinstance(spec, DiffSpec):
        return spec
    return DiffSpec(*spec)


def _params(spec) -> tuple[int, int, int, int, int]:
    # hot path for sweeps: plain tuples skip dataclass construction
    if isinstance(spec, DiffSpec):
        return spec.as_tuple()
    l1, r1, l2, r2, p = spec
    if not (p > 2 and l1 >= 1 and r1 >= 1 and l2 >= 1 and r2 >= 1
            and l1 + r1 < p and l2 + r2 < p):
        DiffSpec(l1, r1, l2, r2, p)
    return l1, r1, l2, r2, p


class ConditionProfile(NamedTuple):
    s1: bool
    s2: bool
    s3: bool
    s1_star: bool
    s2_star: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self._asdict())


def a_set(spec: SCantorSpec) -> DigitSet:
    if not isinstance(spec, SCantorSpec):
        spec = SCantorSpec(*spec)
    l, r, p = spec.l, spec.r, spec.p
    return DigitSet(p, range_set(0, l - 1) | range_set(p - r, p - 1))


def difference_digits(spec) -> DigitSet:
    """``A(l1, r1, p) - A(l2, r2, p)``, the digit set of the difference."""
    spec = _spec(spec)
    return minkowski_diff(a_set(spec.left), a_set(spec.right))


def conditions(spec) -> ConditionProfile:
    l1, r1, l2, r2, p = _params(spec)
    return ConditionProfile(
        l1 + l2 + r2 >= p or l1 + r1 + r2 >= p,
        l1 + r1 + l2 >= p or r1 + l2 + r2 >= p,
        l1 + r1 + l2 + r2 <= p,
        l1 + l2 + r2 > p or l1 + r1 + r2 > p,
        l1 + r1 + l2 > p or r1 + l2 + r2 > p,
    )


def lr_blocks(spec) -> tuple[IntRange, IntRange]:
    """The two runs ``L`` (negative) and ``R`` (positive) missing from ``A - B``.

    ``A - B = <-p+1, p-1> \\ (L u R)`` for every valid spec.
    """
    l1, r1, l2, r2, p = _params(spec)
    left = IntRange(l1 + r2 - p, min(-l2, -r1))
    right = IntRange(max(l1, r2), p - r1 - l2)
    return left, right


def branches(profile: ConditionProfile) -> list[TopologicalType]:
    """Every case of the classification whose condition holds.

    Exactly one element for any valid spec; kept separate from
    :func:`classify` so the partition property can be checked directly.
    """
    s1, s2, s3, s1_star, s2_star = profile
    fired = []
    if s1 and s2:
        fired.append(TopologicalType.FullInterval)
    if s3:
        fired.append(TopologicalType.CantorSet)
    if s1_star and not s2:
        fired.append(TopologicalType.LCantorval)
    if s2_star and not s1:
        fired.append(TopologicalType.RCantorval)
    if not s1_star and not s2_star and not s3 and not (s1 and s2):
        fired.append(TopologicalType.MCantorval)
    return fired


def classify(spec) -> TopologicalType:
    fired = branches(conditions(spec))
    if len(fired) != 1:
        raise AssertionError(f"{_params(spec)} fires {fired}")
    return fired[0]


_MIRROR = {
    TopologicalType.LCantorval: TopologicalType.RCantorval,
    TopologicalType.RCantorval: TopologicalType.LCantorval,
}


def mirror(t: TopologicalType) -> TopologicalType:
    """Type of ``-E`` given the type of ``E``."""
    return _MIRROR.get(t, t)


def classify_self(spec) -> TopologicalType:
    if not isinstance(spec, SCantorSpec):
        spec = SCantorSpec(*spec)
    return classify(DiffSpec(spec.l, spec.r, spec.l, spec.r, spec.p))


def classify_symmetric(l1: int, l2: int, p: int) -> TopologicalType:
    """Type of ``C(l1, p) - C(l2, p)`` for the symmetric sets ``C(l, l, p)``."""
    return classify(DiffSpec(l1, l1, l2, l2, p))


def kraft_classify(l: int, p: int) -> TopologicalType:
    """Type of ``C(l, p) - C(l, p)`` read off the ratio ``l/p``."""
    SCantorSpec(l, l, p)
    ratio = Fraction(l, p)
    if ratio >= Fraction(1, 3):
        return TopologicalType.FullInterval
    if ratio <= Fraction(1, 4):
        return TopologicalType.CantorSet
    return TopologicalType.MCantorval


def side_pairs(p: int) -> list[tuple[int, int]]:
    return [(l, r) for l in range(1, p - 1) for r in range(1, p - l)]


def iter_spec_tuples(p_max: int, p_min: int = 3) -> Iterator[tuple[int, ...]]:
    """``(l1, r1, l2, r2, p)`` for every valid spec, ordered by p then sides."""
    for p in range(max(3, p_min), p_max + 1):
        pairs = side_pairs(p)
        for l1, r1 in pairs:
            for l2, r2 in pairs:
                yield (l1, r1, l2, r2, p)


def iter_specs(p_max: int, p_min: int = 3) -> Iterator[DiffSpec]:
    for t in iter_spec_tuples(p_max, p_min):
        yield DiffSpec(*t)
