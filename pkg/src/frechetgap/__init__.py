"""Exact Fréchet-distance variants, OV gadget reductions, and a fast
linear-time weak Fréchet algorithm for 1D curves."""

from .curve import (Curve, compose, curve1, curve2, curve_dumps, curve_from_obj,
                    curve_loads, curve_to_obj, normalize_collinear, repeat,
                    reverse, subcurve)
from .engines import (Matching, NoWitnessError, critical_values,
                      decide_discrete_frechet, decide_discrete_weak_frechet,
                      decide_frechet, decide_partial_frechet,
                      decide_weak_frechet, discrete_frechet_exact,
                      discrete_weak_frechet_exact, extract_matching,
                      frechet_exact, hausdorff_image_1d, partial_frechet_exact,
                      weak_frechet_exact)
from .exactnum import Radical, fmt_exact, sqrt_exact, to_exact
from .freespace import FreeSpaceDiagram
from .gadgets import (GadgetCurvePair, OVInstance, TrivialityClass,
                      brute_force_ov, build_full_reduction,
                      build_partial_reduction, build_reduction,
                      build_vector_gadgets, build_weak_continuous_2d,
                      build_weak_discrete_1d, classify_instance, ov_dumps,
                      ov_instance, ov_loads, pair_dumps, pair_loads,
                      subdivide_for_discrete, subdivide_pair_for_discrete)
from .gapcheck import (GapReport, campaign_instances, check_instance,
                       random_instance, resolve_instance)
from .render import FsdRender, render_fsd
from .weak1d import (canonicalize, find_spanning_edge, greedy_matching,
                     is_canonical, is_growing, point_segment_distance_1d,
                     weak_frechet_1d_linear)

__all__ = [
    "Curve", "compose", "curve1", "curve2", "curve_dumps", "curve_from_obj",
    "curve_loads", "curve_to_obj", "normalize_collinear", "repeat", "reverse",
    "subcurve",
    "Matching", "NoWitnessError", "critical_values", "decide_discrete_frechet",
    "decide_discrete_weak_frechet", "decide_frechet", "decide_partial_frechet",
    "decide_weak_frechet", "discrete_frechet_exact",
    "discrete_weak_frechet_exact", "extract_matching", "frechet_exact",
    "hausdorff_image_1d", "partial_frechet_exact", "weak_frechet_exact",
    "Radical", "fmt_exact", "sqrt_exact", "to_exact",
    "FreeSpaceDiagram",
    "GadgetCurvePair", "OVInstance", "TrivialityClass", "brute_force_ov",
    "build_full_reduction", "build_partial_reduction", "build_reduction",
    "build_vector_gadgets", "build_weak_continuous_2d", "build_weak_discrete_1d",
    "classify_instance", "ov_dumps", "ov_instance", "ov_loads", "pair_dumps",
    "pair_loads", "subdivide_for_discrete", "subdivide_pair_for_discrete",
    "GapReport", "campaign_instances", "check_instance", "random_instance",
    "resolve_instance",
    "FsdRender", "render_fsd",
    "canonicalize", "find_spanning_edge", "greedy_matching", "is_canonical",
    "is_growing", "point_segment_distance_1d", "weak_frechet_1d_linear",
]
