"""Exact max-plus rational series and semi-polyhedral realization sets."""

from .qmax import QMax, leq, oplus, otimes, parse_scalar, power
from .sympoly import SymMonomial, SymPoly, evaluate, poly_add, poly_mul
from .expr import (
    Monomial,
    Product,
    RatExpr,
    SeriesStream,
    Star,
    StarOfUnit,
    Sum,
    coefficient,
    coefficients,
    evaluate_at,
    format_expr,
    parse,
)
from .normalform import (
    CanonicalUGM,
    StarHeightOne,
    TransientForm,
    canonicalize,
    merge,
    series_equal,
    shift,
    to_star_height_one,
    to_transient_form,
    undersample,
)
from .semipoly import (
    HalfSpace,
    Polyhedron,
    SemiPolySet,
    Stratum,
    poly_is_empty,
    set_poly_eq,
    set_poly_is_zero,
    set_poly_le,
    sps_contains,
    sps_intersect,
    sps_is_empty,
    sps_union,
    sps_witness,
)
from .equality import AlignedPair, align, convex_eq_set, equality_set, line_eq_set, line_le_set
from .realization import (
    Realization,
    UniversalExpr,
    accessible_subsets,
    enumerate_circuits,
    enumerate_paths,
    minimal_realization,
    realization_set,
    recognized_series,
    sequence_value,
    universal_series,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
