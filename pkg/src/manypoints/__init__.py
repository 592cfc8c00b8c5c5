"""Curves over finite fields with many rational points: Artin-Schreier
fibre products, trace codes, bounds and reference tables."""

from .curve import ArtinSchreierCurve, count_points, curve_report, genus
from .gf import FieldTable, build_field, parse_field_spec

__version__ = "0.1.0"

__all__ = ["ArtinSchreierCurve", "FieldTable", "build_field", "count_points", "curve_report", "genus", "parse_field_spec"]
