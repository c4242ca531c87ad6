# catalog.py
"""
主定理证明中的八个见证族。

每个族由生成其 Gram 矩阵的规范形参数 (geometry, case, c) 指定 —— d(x, y) 一律由
restrict_form 推导, 不用印刷出来的系数。印刷系数只作为注记保存在 printed_form 中。

    定理情形 (1): 平面, Σ·Q = 1        → PlaneI (16k − 3), PlaneII (16k + 5)
    定理情形 (2): DP6,  Σ·S = 1        → A (b=0), B (b=1), C (b=2)
    定理情形 (3): DP6,  Σ·S = 2        → D (b=0), E (b=1), F (b=2)

见证 (a, x, y, n) 满足 a²·d(x, y) = 2n² + 2n + 2, 作为 k 的多项式恒等式。
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from src.arith.exact_arith import IntPolynomial
from src.lattice.gram import QuadraticForm
from src.lattice.normal_form import CaseId, Geometry


class FamilyId(Enum):
    PLANE_I = "PlaneI"
    PLANE_II = "PlaneII"
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        for fid in cls:
            if fid.value.lower() == text.strip().lower():
                return fid
        raise ValueError(f"未知见证族 {text!r}, 可选: {[f.value for f in cls]}")


@dataclass(frozen=True)
class Witness:
    """(a(k), x(k), y(k), n(k))"""

    a: IntPolynomial
    x: IntPolynomial
    y: IntPolynomial
    n: IntPolynomial

    def at(self, k: int) -> Tuple[int, int, int, int]:
        return self.a(k), self.x(k), self.y(k), self.n(k)

    def __str__(self):
        return f"({self.a}, {self.x}, {self.y}, {self.n})"


@dataclass(frozen=True)
class FamilySpec:
    id: FamilyId
    geometry: Geometry
    case_id: CaseId
    c: int
    witness: Witness
    theorem_case: int
    printed_form: QuadraticForm
    label: str


_K = IntPolynomial.k()


def _lin(slope: int, intercept: int) -> IntPolynomial:
    return IntPolynomial.linear(slope, intercept)


def _w(a: int, x: IntPolynomial, y: int, n: IntPolynomial) -> Witness:
    return Witness(IntPolynomial.const(a), x, IntPolynomial.const(y), n)


def _printed(a: int, b: int, c: IntPolynomial) -> QuadraticForm:
    return QuadraticForm(a, b, c)


# "2(1−3k)" 在此直接展开为 2 − 6k; PlaneII 印刷为 (a,y,z,n), 按 (a,x,y,n) 读取
_CATALOG: Tuple[FamilySpec, ...] = (
    FamilySpec(
        FamilyId.PLANE_I, Geometry.PLANE, CaseId.I, 1,
        _w(1, _lin(-3, 1), 1, _lin(-6, 2)), 1,
        _printed(8, 6, _lin(6, 0)), "(a,x,y,n)=(1,1-3k,1,2(1-3k))",
    ),
    FamilySpec(
        FamilyId.PLANE_II, Geometry.PLANE, CaseId.II, 1,
        _w(1, _lin(3, 0), 1, _lin(6, 0)), 1,
        _printed(8, 2, _lin(6, 2)), "(a,y,z,n)=(1,3k,1,6k)",
    ),
    FamilySpec(
        FamilyId.A, Geometry.DP6, CaseId.B0, 1,
        _w(1, _lin(4, -1), 2, _lin(12, -2)), 2,
        _printed(18, 6, _lin(6, 0)), "(a,x,y,n)=(1,4k-1,2,12k-2)",
    ),
    FamilySpec(
        FamilyId.B, Geometry.DP6, CaseId.B1, 1,
        _w(1, _lin(4, 1), 2, _lin(12, 2)), 2,
        _printed(18, -6, _lin(6, 2)), "(a,x,y,n)=(1,4k+1,2,12k+2)",
    ),
    FamilySpec(
        FamilyId.C, Geometry.DP6, CaseId.B2, 1,
        _w(1, _lin(4, -5), 2, _lin(12, -18)), 2,
        # 印刷为 (5k−4); 由 Gram 矩阵推导应为 (6k−4), 见证只对后者成立
        _printed(18, -18, _lin(5, -4)), "(a,x,y,n)=(1,4k-5,2,12k-18)",
    ),
    FamilySpec(
        FamilyId.D, Geometry.DP6, CaseId.B0, 2,
        _w(1, _lin(1, -1), 1, _lin(3, -2)), 3,
        _printed(18, 12, _lin(6, 0)), "(a,x,y,n)=(1,k-1,1,3k-2)",
    ),
    FamilySpec(
        FamilyId.E, Geometry.DP6, CaseId.B1, 2,
        _w(1, _K, 1, _lin(3, 0)), 3,
        _printed(18, 0, _lin(6, 2)), "(a,x,y,n)=(1,k,1,3k)",
    ),
    FamilySpec(
        FamilyId.F, Geometry.DP6, CaseId.B2, 2,
        _w(1, _lin(1, -1), 1, _lin(3, -4)), 3,
        _printed(18, -12, _lin(6, -4)), "(a,x,y,n)=(1,k-1,1,3k-4)",
    ),
)

_BY_ID: Dict[FamilyId, FamilySpec] = {spec.id: spec for spec in _CATALOG}
_BY_CASE: Dict[Tuple[Geometry, CaseId, int], FamilySpec] = {
    (spec.geometry, spec.case_id, spec.c): spec for spec in _CATALOG
}


def family_catalog() -> Tuple[FamilySpec, ...]:
    """全部八个族 (不可变常量)"""
    return _CATALOG


def get_family(family_id) -> FamilySpec:
    if not isinstance(family_id, FamilyId):
        family_id = FamilyId.parse(str(family_id))
    return _BY_ID[family_id]


def lookup_family(geometry: Geometry, case_id: CaseId, c: int) -> FamilySpec:
    """按 (geometry, case, c) 查族; 不在主定理覆盖范围内抛 ValueError"""
    key = (geometry, case_id, c)
    if key not in _BY_CASE:
        raise ValueError(
            f"没有见证族覆盖 {geometry.value}/{case_id.value}/c={c} (主定理只覆盖 Σ·Q = 1 与 Σ·S ∈ {{1,2}})"
        )
    return _BY_CASE[key]
