"""The reference regression: every construction whose (g, N) appears in the
embedded example tables, rebuilt and verified from scratch."""

from __future__ import annotations

from dataclasses import dataclass

from .code import build_Ch, build_melas_dual
from .construct.method1 import method1, method1_variants
from .construct.method3 import degree4_family, method3, quadric_family
from .construct.method4 import method4, method4_variants, product_subcode
from .construct.quadratic import method2
from .construct.result import ConstructionResult
from .function import FunctionExpr
from .gf import FieldTable, build_field
from .tables import RegressionReport, regression_check

EXAMPLE_TABLES = [
    "Example3.3", "Example3.4", "Example3.5", "Example3.8", "Example3.10",
    "Example3.13", "Example3.17", "Example3.19", "Example3.20",
]


def f4_blocks(tbl: FieldTable) -> tuple[dict, list[FunctionExpr]]:
    """x^3, w x^3 + w x for w in F_4 - F_2, plus the shifted family
    a (x^(t+4) - x^(t+1)) for t = 1, 3; returned as variant parameters and
    extra blocks."""
    if tbl.q != 4:
        raise ValueError("needs GF(4)")
    extra = [FunctionExpr.build(tbl, {3: 1})]
    for w in (2, 3):
        extra.append(FunctionExpr.build(tbl, {3: w, 1: w}))
    return {"t": [1, 3]}, extra


def f4_pipeline() -> list[ConstructionResult]:
    tbl = build_field(2, 2)
    params, extra = f4_blocks(tbl)
    return method1_variants(tbl, "shifted", params, extra_blocks=extra)


def method1_runs() -> list[ConstructionResult]:
    runs = [(2, 3, [1, 2, 3]), (2, 5, [1, 2, 3, 4, 5]), (2, 7, [1, 2, 3]), (3, 1, [1]), (3, 3, [1, 2, 3])]
    return [method1(build_field(p, m), r) for p, m, rs in runs for r in rs]


def method2_runs() -> list[ConstructionResult]:
    runs = [(6, [1, 2]), (8, [1, 2, 3]), (7, [1, 2, 3, 4])]
    return [method2(build_field(2, m), r) for m, rs in runs for r in rs]


def method3_runs() -> list[ConstructionResult]:
    f27, f81, f243 = build_field(3, 3), build_field(3, 4), build_field(3, 5)
    return [
        method3(f27, 1),
        quadric_family(f27),
        degree4_family(f81),
        method3(f243, 1),
        quadric_family(f243),
        method3(f243, 2),
    ]


def method4_runs() -> list[ConstructionResult]:
    out: list[ConstructionResult] = []
    bch = build_Ch(build_field(2, 3), 1, punctured=True)
    for r in (1, 2, 3):
        out.extend(method4_variants(bch, r))
    melas = build_melas_dual(build_field(2, 4))
    out.extend(method4(melas, r) for r in (1, 2, 3, 4))
    f32 = build_field(2, 5)
    out.extend(product_subcode(f32, r) for r in (1, 2, 3, 4))
    return out


@dataclass
class SuiteOutcome:
    results: list[ConstructionResult]
    report: RegressionReport

    @property
    def ok(self) -> bool:
        return self.report.ok and all(r.ok for r in self.results)


def paper_suite() -> SuiteOutcome:
    results = method1_runs() + f4_pipeline() + method2_runs() + method3_runs() + method4_runs()
    verified = [r for r in results if r.ok]
    report = regression_check(verified, expect=EXAMPLE_TABLES)
    return SuiteOutcome(results, report)
