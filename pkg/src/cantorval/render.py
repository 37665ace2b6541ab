"""Deterministic SVG pictures of the first construction steps of ``A_p``.

Row ``j`` shows ``cover(A, j)`` as filled bars.  A short vertical line sits
on a bar endpoint exactly when that endpoint belongs to ``A_p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digits import DigitSet
from .geometry import cover, endpoint_membership, tail_hull


@dataclass(frozen=True)
class RenderSpec:
    digits: DigitSet
    steps: int
    width: int = 1000
    row_height: int = 40
    tick: int = 20
    margin: int = 20
    bar_height: int = 10

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.width <= 2 * self.margin:
            raise ValueError("width too small for the margins")


def _fmt(v: Fraction) -> str:
    # fixed decimals from exact arithmetic, no float round-trip
    scaled = round(v * 1000)
    sign = "-" if scaled < 0 else ""
    q, r = divmod(abs(scaled), 1000)
    return f"{sign}{q}.{r:03d}"


def _label(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def render_svg(spec: RenderSpec, budget: int | None = None) -> str:
    a = spec.digits
    h0, h1 = tail_hull(a, 0)
    span = h1 - h0
    usable = spec.width - 2 * spec.margin

    def x_of(v: Fraction) -> Fraction:
        return spec.margin + (v - h0) * usable / span

    height = (spec.steps + 1) * spec.row_height + 2 * spec.margin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{height}" '
        f'viewBox="0 0 {spec.width} {height}" data-digits="{",".join(map(str, a.digits))}" '
        f'data-base="{a.base}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{height}" fill="white"/>',
    ]
    members: dict[Fraction, bool] = {}
    for j in range(spec.steps + 1):
        y_mid = Fraction(spec.margin + j * spec.row_height + spec.row_height // 2)
        bar_top = y_mid - Fraction(spec.bar_height, 2)
        out.append(f'<g class="row" data-step="{j}">')
        for lo, hi in cover(a, j, budget):
            x0, x1 = x_of(lo), x_of(hi)
            out.append(
                f'<rect class="bar" x="{_fmt(x0)}" y="{_fmt(bar_top)}" width="{_fmt(x1 - x0)}" '
                f'height="{spec.bar_height}" fill="black" data-lo="{_label(lo)}" data-hi="{_label(hi)}"/>'
            )
            for v, x in ((lo, x0), (hi, x1)):
                if v not in members:
                    members[v] = bool(endpoint_membership(v, a))
                if members[v]:
                    half = Fraction(spec.tick, 2)
                    out.append(
                        f'<line class="tick" x1="{_fmt(x)}" y1="{_fmt(y_mid - half)}" '
                        f'x2="{_fmt(x)}" y2="{_fmt(y_mid + half)}" stroke="black" '
                        f'stroke-width="1" data-at="{_label(v)}"/>'
                    )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
