"""
Plane trees from shifted quadtrees
==================================

The approximation splits the normalized instance with a shifted quadtree and
merges partial trees bottom-up without ever creating a crossing. Here we
compare random shifts with the best grid shift and look at how far each tree
sits below its per-shift length bound.
"""
import sys
from pathlib import Path

import numpy as np

from bichroma import (ColoredTree, Shift, approx_tree, build_quadtree, derandomized_tree,
                      is_plane, min_colored_spanning_tree, normalize, opt_prime)
from bichroma.generators import gen_uniform
from bichroma.quadtree import derandomized_bound, grid_size, length_bound
from bichroma.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

pts = gen_uniform(48, seed=7).points
best = min_colored_spanning_tree(pts)
print(f"minimum tree: {best.total_length:.4f}, plane: {is_plane(best)}")

# Lengths relative to the minimum tree over twenty random shifts
ratios = [approx_tree(pts, Shift.random(s)).total_length / best.total_length for s in range(20)]
print(f"random shifts: mean ratio {np.mean(ratios):.4f}, worst {max(ratios):.4f}")

# Bounds are stated on the normalized copy, where the bounding square has side 1
norm, _ = normalize(pts)
ref = min_colored_spanning_tree(norm)
shift = Shift.random(0)
tree = approx_tree(pts, shift)
profile = opt_prime(ref, build_quadtree(norm, shift))
print("boundary potential per level:", [round(v, 3) for v in profile.per_level])
print(f"normalized length {ColoredTree(norm, tree.edges).total_length:.4f} "
      f"<= bound {length_bound(ref.total_length, profile.total):.4f}")

# Trying every grid shift picks the shortest tree deterministically
tree, shift = derandomized_tree(pts)
print(f"best grid shift {shift.label()}: ratio {tree.total_length / best.total_length:.4f}, "
      f"guarantee {derandomized_bound(ref.total_length, grid_size(len(pts))) / ref.total_length:.1f}")

render_svg(pts, tree, out / "plane48.svg", title=f"plane tree, {shift.label()}")
print("wrote", out / "plane48.svg")
