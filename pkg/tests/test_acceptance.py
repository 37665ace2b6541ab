"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the "acceptance criteria" section of the terminal summary.
"""

import random
import re
from fractions import Fraction as F
from pathlib import Path

import numpy as np

from cantorval.classify import (
    TopologicalType as T,
    a_set,
    branches,
    classify,
    classify_symmetric,
    conditions,
    difference_digits,
    iter_spec_tuples,
    kraft_classify,
    lr_blocks,
    mirror,
    side_pairs,
)
from cantorval.cli import main
from cantorval.digits import DigitSet, delta, is_full_interval, minkowski_diff
from cantorval.geometry import (
    certified_intervals,
    cover,
    has_closure_property,
    member,
    representable,
    representable_set,
)
from cantorval.verify import prop_dod_grid_check, sweep

GOLDEN = Path(__file__).parent / "golden" / "figure1.svg"


def _difference_sets(p_max):
    return list(dict.fromkeys(difference_digits(s) for s in iter_spec_tuples(p_max)))


def test_c1_examples(criterion):
    with criterion(1, "worked examples, exact", 1.0) as c:
        checks = [
            classify((1, 1, 2, 1, 4)) is T.FullInterval,
            classify((2, 1, 2, 1, 4)) is T.FullInterval,
            classify((1, 1, 1, 1, 4)) is T.CantorSet,
            classify((3, 2, 1, 3, 7)) is T.LCantorval,
            difference_digits((3, 2, 1, 3, 7)).digits == (-6, -5, -4, -3, -2, -1, 0, 1, 2, 5, 6),
            classify((1, 3, 3, 2, 7)) is T.RCantorval,
            difference_digits((1, 3, 3, 2, 7)).digits == (-6, -5) + tuple(range(-2, 7)),
            classify_symmetric(2, 1, 5) is T.FullInterval,
            classify_symmetric(1, 1, 5) is T.CantorSet,
            kraft_classify(1, 3) is T.FullInterval,
            kraft_classify(2, 7) is T.MCantorval,
            difference_digits((2, 2, 2, 2, 7)).digits == (-6, -5, -4, -1, 0, 1, 4, 5, 6),
        ]
        c.detail = f"{sum(checks)}/{len(checks)} checks"
        c.ok = all(checks)


def test_c2_partition_and_mirror(criterion):
    with criterion(2, "partition + mirror, p <= 30", 10.0) as c:
        n = bad = 0
        for spec in iter_spec_tuples(30):
            n += 1
            fired = branches(conditions(spec))
            l1, r1, l2, r2, p = spec
            if len(fired) != 1 or fired[0] != mirror(classify((l2, r2, l1, r1, p))):
                bad += 1
        c.detail = f"{n} specs, {bad} violations"
        c.ok = bad == 0


def test_c3_interval_criterion(criterion):
    with criterion(3, "FullInterval <=> delta(A-B) <= 2 <=> is_full_interval, p <= 30", 10.0) as c:
        n = bad = 0
        full = T.FullInterval
        for p in range(3, 31):
            sides = {pair: a_set(pair + (p,)) for pair in side_pairs(p)}
            for (l1, r1), a in sides.items():
                for (l2, r2), b in sides.items():
                    d = minkowski_diff(a, b)
                    n += 1
                    x = classify((l1, r1, l2, r2, p)) is full
                    if not (x == (delta(d) <= 2) == is_full_interval(d)):
                        bad += 1
        c.detail = f"{n} specs, {bad} disagreements"
        c.ok = bad == 0


def test_c4_block_equivalences(criterion):
    with criterion(4, "block equivalences and A-B = <-p+1,p-1> minus L, R, p <= 15", 5.0) as c:
        n = bad = 0
        for spec in iter_spec_tuples(15):
            n += 1
            p = spec[-1]
            cond = conditions(spec)
            left, right = lr_blocks(spec)
            lset, rset = left.materialize(), right.materialize()
            ok = (
                cond.s1 == (len(lset) <= 1)
                and cond.s1_star == (not lset)
                and cond.s2 == (len(rset) <= 1)
                and cond.s2_star == (not rset)
                and cond.s3 == bool(rset & {p + x for x in lset})
                and set(difference_digits(spec).digits) == set(range(-p + 1, p)) - lset - rset
            )
            bad += not ok
        c.detail = f"{n} specs, {bad} violations"
        c.ok = bad == 0


def test_c5_sweep_signatures(criterion):
    with criterion(5, "sweep --p-max 10 --verify at depths (3, 6)", 300.0) as c:
        report = sweep(10, base_depth=3, probe_depth=6, verify=True)
        s = report.summary()
        c.detail = (
            f"{s['rows']} rows, {s['inconsistent']} inconsistent, {s['skipped']} skipped, "
            f"tallies {s['tallies']}"
        )
        c.ok = s["inconsistent"] == 0 and all(v > 0 for v in s["tallies"].values()) and report.ok


def _inner_points(lo, hi, rng, k=3):
    pts = [(lo + hi) / 2]
    for _ in range(k):
        den = rng.randrange(2, 60)
        num = rng.randrange(1, den)
        pts.append(lo + (hi - lo) * F(num, den))
    return pts


def test_c6_geometry_soundness(criterion):
    with criterion(6, "cover monotonicity, gap and certificate soundness, propagation, p <= 7", 120.0) as c:
        rng = random.Random(2024)
        sets = _difference_sets(7)
        mono = gap_pts = cert_pts = prop_cells = 0
        failures = []
        for a in sets:
            covers = [cover(a, n) for n in range(7)]
            for n in range(6):
                mono += 1
                if not covers[n + 1].issubset(covers[n]):
                    failures.append(("monotone", a, n))
            for n in range(1, 5):
                for lo, hi in covers[n].gaps():
                    for x in _inner_points(lo, hi, rng, 2):
                        gap_pts += 1
                        if member(x, a):
                            failures.append(("gap", a, x))
            for n in range(1, 4):
                for lo, hi in certified_intervals(a, n):
                    for x in [lo, hi] + _inner_points(lo, hi, rng):
                        cert_pts += 1
                        if not member(x, a):
                            failures.append(("certificate", a, x))
            if has_closure_property(a):
                p = a.base
                prev = None
                for n in range(1, 6):
                    ks = representable_set(a, n)
                    bi = ks[np.isin(ks + 1, ks)]
                    if prev is not None:
                        children = (prev[:, None] * p + np.arange(p)[None, :]).ravel()
                        prop_cells += len(children)
                        if not np.isin(children, bi).all():
                            failures.append(("propagation", a, n))
                    prev = bi
        c.detail = (
            f"{len(sets)} digit sets; {mono} inclusions, {gap_pts} gap points, "
            f"{cert_pts} certified points, {prop_cells} child cells; {len(failures)} failures"
        )
        c.ok = not failures


def test_c7_grid_equality(criterion):
    with criterion(7, "(A-B) grid equals A grid minus B grid, 200 random cases", 30.0) as c:
        rng = random.Random(7)
        bad = 0
        for _ in range(200):
            p = rng.randrange(3, 8)
            alphabet = range(-p + 1, p)
            a = DigitSet(p, rng.sample(alphabet, rng.randrange(1, 5)))
            b = DigitSet(p, rng.sample(alphabet, rng.randrange(1, 5)))
            bad += not prop_dod_grid_check(a, b, rng.randrange(1, 4))
        c.detail = f"{bad} mismatches"
        c.ok = bad == 0


def test_c8_ternary_membership(criterion):
    with criterion(8, "membership oracle on triadic rationals", 30.0) as c:
        cantor = DigitSet(3, [0, 2])
        checks = [bool(member(F(1, 4), cantor)), not member(F(1, 2), cantor)]
        covers = [cover(cantor, m) for m in range(9)]
        bad = points = 0
        for n in range(6):
            for k in range(3**n + 1):
                x = F(k, 3**n)
                points += 1
                m = member(x, cantor)
                # the terminating expansion or the one ending in 2, 2, 2, ...
                expected = representable(cantor, k, n) or representable(cantor, k - 1, n)
                ok = bool(m) == expected
                if m:
                    ok = ok and all(cv.contains(x) for cv in covers)
                else:
                    ok = ok and not covers[m.exclusion_depth].contains(x)
                bad += not ok
        c.detail = f"{points} points, {bad} disagreements"
        c.ok = all(checks) and bad == 0


def test_c9_figure_render(criterion, tmp_path):
    with criterion(9, "figure render matches golden SVG", 30.0) as c:
        out = tmp_path / "figure1.svg"
        code = main(["render", "--digits", "-4,0,2,3,4", "--p", "5", "--steps", "2", "--out", str(out)])
        svg = out.read_text()
        fig = DigitSet(5, [-4, 0, 2, 3, 4])
        row1 = svg.split('data-step="1"')[1].split("</g>")[0]
        ends = {F(v) for v in re.findall(r'data-(?:lo|hi)="([^"]+)"', row1)}
        tick_ok = True
        for body in re.findall(r'<g class="row" data-step="\d+">(.*?)</g>', svg, re.S):
            bar_ends = {F(v) for v in re.findall(r'data-(?:lo|hi)="([^"]+)"', body)}
            ticks = {F(v) for v in re.findall(r'data-at="([^"]+)"', body)}
            tick_ok = tick_ok and ticks == {v for v in bar_ends if member(v, fig)}
        identical = out.read_bytes() == GOLDEN.read_bytes()
        c.detail = f"byte-identical={identical}, row-1 endpoints {sorted(map(str, ends))}, ticks agree={tick_ok}"
        c.ok = code == 0 and identical and ends == {F(-1), F(-3, 5), F(-1, 5), F(1)} and tick_ok
