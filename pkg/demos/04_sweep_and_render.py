"""Check every predicted type against finite-depth evidence, then draw a picture."""

import sys
from pathlib import Path

from cantorval import DigitSet, RenderSpec, render_svg, sweep

p_max = int(sys.argv[1]) if len(sys.argv) > 1 else 7
report = sweep(p_max, base_depth=3, probe_depth=6)
print(report.summary())
for row in report.inconsistent:
    print("inconsistent:", row.spec)

out = Path(sys.argv[2] if len(sys.argv) > 2 else "figure1.svg")
out.write_text(render_svg(RenderSpec(DigitSet(5, [-4, 0, 2, 3, 4]), steps=2)))
print("wrote", out)
