"""Minimum and plane properly-colored spanning trees of colored point sets."""

__version__ = "0.1.0"

from .crossings import (CrossingReport, crossing_pairs, is_plane, is_quasi_plane,
                        path_between_edges, verify_minbst_properties)
from .errors import (BichromaError, DegenerateExtent, DegenerateOverlap, EdgeNotInTree,
                     GeometryViolation, InputError, InsideHull, InternalError, Monochromatic,
                     NotGeneralPosition, TooFewPoints, TooLarge)
from .geometry import (AxisRect, ColoredPoint, Segment, convex_hull, dist_point_rect, orient,
                       proper_crossing)
from .minbst import ColoredTree, closest_pair_bichromatic, min_colored_spanning_tree, tree_length
from .plane import MergeParty, attach_point, cone_star_tree, merge_parties, visible_edge
from .quadtree import (OptPrimeProfile, Shift, ShiftedQuadtree, approx_tree, build_quadtree,
                       derandomized_tree, expected_opt_prime_discrete, normalize, opt_prime)

__all__ = [
    "AxisRect", "BichromaError", "ColoredPoint", "ColoredTree", "CrossingReport",
    "DegenerateExtent", "DegenerateOverlap", "EdgeNotInTree", "GeometryViolation",
    "InputError", "InsideHull", "InternalError", "MergeParty", "Monochromatic",
    "NotGeneralPosition", "OptPrimeProfile", "Segment", "Shift", "ShiftedQuadtree",
    "TooFewPoints", "TooLarge", "approx_tree", "attach_point", "build_quadtree",
    "closest_pair_bichromatic", "cone_star_tree", "convex_hull", "crossing_pairs",
    "derandomized_tree", "dist_point_rect", "expected_opt_prime_discrete", "is_plane",
    "is_quasi_plane", "merge_parties", "min_colored_spanning_tree", "normalize",
    "opt_prime", "orient", "path_between_edges", "proper_crossing", "tree_length",
    "verify_minbst_properties", "visible_edge",
]
