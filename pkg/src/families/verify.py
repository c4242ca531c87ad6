# verify.py
"""
见证族的精确校验。

- verify_family_symbolic: 把 a(k)²·d(x(k), y(k)) 与 2n(k)² + 2n(k) + 2 展开成 IntPolynomial
  逐系数比较 —— 为真即对一切整数 k 成立。
- verify_family_numeric: 逐个 k 精确求值, 并用 Pell 判定独立交叉检验 (***)。
- certify_canonical_form: 对一个具体规范形给出满足 (***) 的判别式 d 与见证
  (主定理的构造性内容)。
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.arith.exact_arith import IntPolynomial, poly_equal
from src.diophantine.conditions import condition_star, condition_triple_star
from src.lattice.gram import (
    GramMatrix,
    QuadraticForm,
    discriminant_symbolic,
    pencil_discriminant,
    restrict_form,
)
from src.lattice.normal_form import CanonicalForm, canonical_gram, closed_form_disc
from src.families.catalog import FamilyId, FamilySpec, lookup_family
from src.utils.logger import get_logger

log = get_logger(__name__)


def family_gram(spec: FamilySpec) -> GramMatrix:
    """族的秩 3 Gram 矩阵, Σ² 槽位是 k 的多项式"""
    return canonical_gram(spec.geometry, spec.case_id, spec.c, IntPolynomial.k())


def family_disc(spec: FamilySpec) -> IntPolynomial:
    """disc⟨H², Q|S, Σ⟩ 作为 k 的多项式"""
    return discriminant_symbolic(family_gram(spec))


def closed_form_family_disc(spec: FamilySpec) -> IntPolynomial:
    return IntPolynomial.coerce(closed_form_disc(spec.geometry, spec.case_id, spec.c, IntPolynomial.k()))


def derive_form(spec: FamilySpec) -> QuadraticForm:
    """权威的 d(x, y): restrict_form(canonical_gram(...))"""
    return restrict_form(family_gram(spec))


def _form_for(spec: FamilySpec, use_printed_form: bool) -> QuadraticForm:
    return spec.printed_form if use_printed_form else derive_form(spec)


def expand_identity(spec: FamilySpec, use_printed_form: bool = False) -> Tuple[IntPolynomial, IntPolynomial]:
    """(lhs, rhs) = (a²·d(x, y), 2n² + 2n + 2), 均为 k 的多项式"""
    form = _form_for(spec, use_printed_form)
    w = spec.witness
    lhs = IntPolynomial.coerce(w.a * w.a * form.at(w.x, w.y))
    rhs = 2 * w.n * w.n + 2 * w.n + 2
    return lhs, rhs


def verify_family_symbolic(spec: FamilySpec, use_printed_form: bool = False) -> bool:
    lhs, rhs = expand_identity(spec, use_printed_form)
    ok = poly_equal(lhs, rhs)
    log.debug("family %s symbolic: lhs=%s rhs=%s ok=%s", spec.id.value, lhs, rhs, ok)
    return ok


@dataclass(frozen=True)
class NumericRow:
    k: int
    a: int
    x: int
    y: int
    n: int
    d: int
    lhs: int
    rhs: int
    triple_star: Optional[bool]  # d ≤ 0 时不做 (***) 交叉检验
    ok: bool

    def to_dict(self) -> dict:
        return {
            "k": self.k, "a": self.a, "x": self.x, "y": self.y, "n": self.n,
            "d": self.d, "lhs": self.lhs, "rhs": self.rhs,
            "triple_star": self.triple_star, "ok": self.ok,
        }


def verify_family_numeric(
    spec: FamilySpec, k_min: int, k_max: int, use_printed_form: bool = False
) -> List[NumericRow]:
    """k_min ≤ k ≤ k_max 逐点精确求值; d > 0 时 Pell 判定必须给出 (***) 为真"""
    if k_min > k_max:
        raise ValueError(f"需要 k_min ≤ k_max, got {k_min} > {k_max}")
    form = _form_for(spec, use_printed_form)
    rows: List[NumericRow] = []
    for k in range(k_min, k_max + 1):
        a, x, y, n = spec.witness.at(k)
        d = form.substitute(k).at(x, y)
        lhs = a * a * d
        rhs = 2 * n * n + 2 * n + 2
        triple = condition_triple_star(d)[0] if d > 0 else None
        rows.append(NumericRow(k, a, x, y, n, d, lhs, rhs, triple, lhs == rhs and triple is not False))
    return rows


# ======================================================================
# 构造性结论: 规范形 → 满足 (***) 的判别式
# ======================================================================


@dataclass(frozen=True)
class SpecialDiscriminant:
    """X ∈ C_d 且 d 满足 (***): Σ(x, y) = x·(Q|S) + y·Σ 给出 disc⟨H², Σ(x, y)⟩ = d"""

    form: CanonicalForm
    family: FamilyId
    x: int
    y: int
    a: int
    n: int
    d: int
    star: bool

    def to_dict(self) -> dict:
        return {
            "canonical_form": self.form.to_dict(),
            "family": self.family.value,
            "x": self.x, "y": self.y, "a": self.a, "n": self.n,
            "d": self.d, "star": self.star,
        }


def family_for(form: CanonicalForm) -> FamilySpec:
    return lookup_family(form.geometry, form.case_id, form.c)


def certify_canonical_form(form: CanonicalForm) -> SpecialDiscriminant:
    """取对应族的见证在 form.k 处求值, 并用 Gram 矩阵直接重算 d 与 (***) 方程"""
    spec = family_for(form)
    a, x, y, n = spec.witness.at(form.k)
    d = pencil_discriminant(form.gram, x, y)
    if d != derive_form(spec).substitute(form.k).at(x, y):
        raise RuntimeError(f"{spec.id.value}: restrict_form 与直接行列式不一致 (k={form.k})")
    if a * a * d != 2 * n * n + 2 * n + 2:
        raise RuntimeError(f"{spec.id.value}: 见证在 k={form.k} 处不成立")
    return SpecialDiscriminant(form, spec.id, x, y, a, n, d, condition_star(d))
