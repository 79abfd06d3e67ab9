"""Exact verification of characterizing-slope regions for low-volume knots."""

from .bounds import (
    PAPER_CONSTANTS,
    RIGOROUS_CONSTANTS,
    LengthBoundConstants,
    fkp_bound_holds,
    fkp_minimal_bound,
    max_p_from_length,
    max_q_from_length,
    min_length_from_slope,
    slope_distance,
)
from .census import Census, KnotRecord, builtin_census, dump_census, load_census
from .exactnum import RationalInterval, Slope, parse_rational, pi_enclosure, rational_normalize
from .laurent import LaurentPoly, q_poly, torus_alexander, torus_second_derivative
from .obstructions import (
    VSequence,
    cable_alexander,
    cable_solutions,
    cw_correction_term,
    cw_excludes,
    d_gap_sum,
    genus_rigidity,
    nu_plus_excludes_mirror,
    satellite_slope_transform,
    schubert_genus,
)
from .pipeline import (
    Context,
    ExclusionIncomplete,
    Region,
    Verdict,
    characterizing_region,
    check_slope,
    exclusion_report,
)
from .twist import TwistCertificate, family_certificate, twist_surgery_slope

__version__ = "0.1.0"
