"""Executable constructions of curves with many points."""

from .method1 import method1, method1_variants, pipeline, variant_blocks
from .method3 import degree4_family, method3, quadric_family
from .method4 import method4, method4_variants, min_weight_subcodes, product_subcode
from .quadratic import method2, quad_report, solve_dl_system
from .result import ConstructionResult, replay

__all__ = [
    "ConstructionResult",
    "degree4_family",
    "method1",
    "method1_variants",
    "method2",
    "method3",
    "method4",
    "method4_variants",
    "min_weight_subcodes",
    "pipeline",
    "product_subcode",
    "quad_report",
    "quadric_family",
    "replay",
    "solve_dl_system",
    "variant_blocks",
]
