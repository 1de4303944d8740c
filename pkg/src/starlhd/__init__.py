"""Space-filling Latin hypercube designs from stars of PG(p-1, 2)."""

__version__ = "0.1.0"

from .arrays import (
    DesignArray,
    GeneratorAssignment,
    assignment_from_rays,
    existence_preconditions,
    near_orthogonality_score,
    star_to_noa,
    verify_strength,
)
from .geometry import (
    Flat,
    Pencil,
    Spread,
    Star,
    check_star_feasibility,
    construct_spread,
    construct_star,
    dot,
    pencil_from_index,
    span,
    verify_cover,
)
from .guidelines import check_guidelines, run_simulation, search_compliant
from .lhd import Lhd, LevelArray, build_lhd, expand, perturb, random_lhd
from .metrics import DistanceSummary, aid, mid, projection_summary

__all__ = [
    "DesignArray", "DistanceSummary", "Flat", "GeneratorAssignment", "LevelArray", "Lhd",
    "Pencil", "Spread", "Star", "aid", "assignment_from_rays", "build_lhd",
    "check_guidelines", "check_star_feasibility", "construct_spread", "construct_star",
    "dot", "existence_preconditions", "expand", "mid", "near_orthogonality_score",
    "pencil_from_index", "perturb", "projection_summary", "random_lhd", "run_simulation",
    "search_compliant", "span", "star_to_noa", "verify_cover", "verify_strength",
]
