"""Write region diagrams for the planar and interval scenarios.

Usage: ``python3 demos/figures.py [OUTDIR]`` (default ``demos/figures``).
"""
import pathlib
import sys

from toricdisp import SCENARIOS, region, render_svg

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).with_name("figures"))
out.mkdir(parents=True, exist_ok=True)
for name, s in SCENARIOS.items():
    r = region(s)
    path = out / f"{name}.svg"
    path.write_text(render_svg(s.model, r.nd, r.d, s.view_box(), name), encoding="utf-8")
    print(f"{path}: {len(r.nd)} certified piece(s), {len(r.d)} probe piece(s)")
