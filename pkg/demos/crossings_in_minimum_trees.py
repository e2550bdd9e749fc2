"""
Crossings in minimum colored spanning trees
===========================================

A minimum spanning tree over red-blue edges is not always drawn without
crossings. This walk-through builds one with many crossings, counts them,
and checks the structural facts the verifier reports.
"""
import sys
from pathlib import Path

from bichroma import min_colored_spanning_tree, verify_minbst_properties
from bichroma.crossings import max_edge_crossings, max_total_crossings
from bichroma.generators import gen_max_crossing_gadget, gen_per_edge_gadget, gen_uniform
from bichroma.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

# Random points rarely produce many crossings.
pts = gen_uniform(60, seed=3).points
report = verify_minbst_properties(pts, min_colored_spanning_tree(pts))
print(f"uniform n=60: {report.crossing_count} crossings, "
      f"at most {report.per_edge_max} on one edge")

# Two tight clusters far apart plus a close pair below them. Every edge from
# the blue cluster to the lone red point crosses every edge from the red
# cluster to the lone blue point.
for n in (8, 12, 16):
    pts = gen_max_crossing_gadget(n).points
    report = verify_minbst_properties(pts, min_colored_spanning_tree(pts))
    print(f"gadget n={n}: {report.crossing_count} crossings "
          f"(largest possible {max_total_crossings(n)}), quasi-plane {report.quasi_plane}")

# With a single blue point in the far cluster, one edge meets n - 3 others.
pts = gen_per_edge_gadget(12).points
report = verify_minbst_properties(pts, min_colored_spanning_tree(pts))
print(f"per-edge gadget n=12: {report.per_edge_max} crossings on one edge "
      f"(largest possible {max_edge_crossings(12)})")

# The crossing graph never has a triangle. Its shortest odd cycle, if any:
print("odd girth of the crossing graph:", report.odd_girth)
print("all checks passed:", report.all_ok)

pts = gen_max_crossing_gadget(10).points
render_svg(pts, min_colored_spanning_tree(pts), out / "gadget10.svg",
           mark_crossings=True, title="gadget n=10")
print("wrote", out / "gadget10.svg")
