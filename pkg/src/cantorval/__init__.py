"""Topology of differences of base-p Cantor sets, with an exact geometry engine."""

__version__ = "0.1.0"

from .classify import (
    ConditionProfile,
    DiffSpec,
    SCantorSpec,
    TopologicalType,
    a_set,
    classify,
    classify_self,
    classify_symmetric,
    conditions,
    difference_digits,
    kraft_classify,
    lr_blocks,
    mirror,
)
from .digits import (
    DigitSet,
    delta,
    diam,
    full_diff_interval,
    interval_ratio,
    is_full_interval,
    minkowski_diff,
    minkowski_sum,
    scale,
)
from .errors import (
    BaseMismatch,
    CantorvalError,
    DepthTooLarge,
    DigitOutOfRange,
    EmptySet,
    InvalidSpec,
    PreconditionViolated,
    TooFewElements,
)
from .geometry import (
    IntervalSet,
    Membership,
    PAdicRational,
    bi_obtainable,
    certified_intervals,
    cover,
    gaps,
    member,
    representable,
)
from .render import RenderSpec, render_svg
from .verify import Signature, signature, signature_matches, sweep

__all__ = [name for name in dir() if not name.startswith("_")]
