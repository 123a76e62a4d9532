"""Quadrics over finite fields: point counts, pair intersections, bounds, census."""
from .gf import Elem, FieldSpec, extend_field, make_field
from .projective import enumerate_points, pi
from .quadric import QuadraticForm, QuadricType, canonical_form, classify, rank
from .pairs import common_hyperplane, intersection_count, order, pair_report
from .parsing import parse_form, parse_quadric

__all__ = [
    "Elem", "FieldSpec", "QuadraticForm", "QuadricType", "canonical_form", "classify",
    "common_hyperplane", "enumerate_points", "extend_field", "intersection_count",
    "make_field", "order", "pair_report", "parse_form", "parse_quadric", "pi", "rank",
]
