"""Lattice points of vector-dilated rational polytopes.

Exact counting in {x : Ax <= t}, multivariate quasipolynomial fitting and
mechanical checks of the reciprocity laws relating interior and closed
counts at negated dilations.
"""

from .counting import (
    CountResult,
    classify_boundary,
    count,
    count_brute,
    count_classical,
    count_facet_closed,
    count_facet_relint,
    count_glued,
    count_recursive,
    count_removed,
    union_membership_counts,
)
from .errors import (
    ChamberError,
    DegenerateRowError,
    DependencyError,
    DimensionError,
    EhrhartError,
    FitError,
    InvalidArgumentError,
    InvalidPolytopeError,
    ParseError,
    RankDeficientError,
    SamplingError,
    SingularMatrixError,
)
from .exact import ceil_div, column_reduce, det, floor_div, minors_lcm, rank, solve_square
from .io import PolytopeDocument, dumps_document, load_document, loads_document
from .polytope import (
    GlueEdge,
    GluedPolytope,
    HRep,
    chamber_samples,
    dilate,
    enumerate_vertices,
    facet,
    glued,
    glued_chamber_samples,
    glued_dilate,
    incidence,
    is_chamber_point,
    is_glued_chamber_point,
)
from .quasipoly import (
    FitReport,
    MultiQuasiPolynomial,
    check_reciprocity,
    check_removed_reciprocity,
    evaluate,
    fit,
    fit_facets,
    fit_pair,
    infer_period,
    refines,
    specialize,
)

__version__ = "0.1.0"
