"""
见证族测试 —— 目录、推导出的 d(x, y)、符号 / 数值恒等式、规范形证书、mod 6 剩余类。

运行: pytest tests/test_families.py -v

测试策略:
- 八个族的恒等式 a²·d(x, y) = 2n² + 2n + 2 按多项式逐系数比较, 并用 sympy.expand 独立复核。
- 族 C 的印刷系数 (5k − 4) 被强制代入时必须失败 (k ≠ 0 处逐点失败)。
- 跨模块: 每个族在 k ∈ [−20, 20] 上给出的 d 若满足 (*), Pell 判定必须给出 (***) 为真。
"""

import sys
import os
import time

import pytest
import sympy

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.arith.exact_arith import IntPolynomial
from src.diophantine.conditions import condition_star, condition_triple_star
from src.families.catalog import FamilyId, family_catalog, get_family, lookup_family
from src.families.residues import (
    dp6_residue_equivalence_check,
    residue_sides,
    residue_table,
    section_lift,
)
from src.families.verify import (
    certify_canonical_form,
    closed_form_family_disc,
    derive_form,
    expand_identity,
    family_disc,
    family_for,
    verify_family_numeric,
    verify_family_symbolic,
)
from src.lattice.normal_form import CaseId, Geometry, MarkedClassData, normalize
from src.utils.logger import quiet

quiet()

K = IntPolynomial.k()
SK = sympy.Symbol("k")


def to_sympy(p):
    p = IntPolynomial.coerce(p)
    return sum((c * SK**i for i, c in enumerate(p.coefficients)), sympy.Integer(0))


# ---------- 目录 ----------
class TestCatalog:

    def test_eight_families(self):
        ids = [spec.id for spec in family_catalog()]
        assert ids == list(FamilyId)
        assert len(ids) == 8

    def test_witness_examples(self):
        assert get_family("PlaneI").witness.at(1) == (1, -2, 1, -4)
        w = get_family(FamilyId.PLANE_I).witness
        assert (w.a, w.x, w.y, w.n) == (IntPolynomial.const(1), 1 - 3 * K, IntPolynomial.const(1), 2 - 6 * K)
        w = get_family("E").witness
        assert (w.x, w.n) == (K, 3 * K)
        w = get_family("C").witness
        assert (w.x, w.y, w.n) == (4 * K - 5, IntPolynomial.const(2), 12 * K - 18)

    def test_parse(self):
        assert FamilyId.parse("planeii") == FamilyId.PLANE_II
        assert FamilyId.parse(" c ") == FamilyId.C
        with pytest.raises(ValueError):
            FamilyId.parse("Z")
        with pytest.raises(ValueError):
            get_family("PlaneIII")

    def test_theorem_cases(self):
        cases = {spec.id: spec.theorem_case for spec in family_catalog()}
        assert cases[FamilyId.PLANE_I] == cases[FamilyId.PLANE_II] == 1
        assert {cases[f] for f in (FamilyId.A, FamilyId.B, FamilyId.C)} == {2}
        assert {cases[f] for f in (FamilyId.D, FamilyId.E, FamilyId.F)} == {3}

    def test_lookup(self):
        assert lookup_family(Geometry.DP6, CaseId.B2, 1).id == FamilyId.C
        assert lookup_family(Geometry.PLANE, CaseId.II, 1).id == FamilyId.PLANE_II
        with pytest.raises(ValueError):
            lookup_family(Geometry.DP6, CaseId.B0, 0)


# ---------- d(x, y) ----------
class TestDerivedForms:

    def test_examples(self):
        assert derive_form(get_family("PlaneI")).coefficients() == (
            IntPolynomial.const(8), IntPolynomial.const(6), 6 * K)
        assert derive_form(get_family("E")).coefficients() == (
            IntPolynomial.const(18), IntPolynomial.const(0), 6 * K + 2)
        assert derive_form(get_family("C")).coefficients() == (
            IntPolynomial.const(18), IntPolynomial.const(-18), 6 * K - 4)

    def test_only_c_differs_from_printed(self):
        for spec in family_catalog():
            same = derive_form(spec).coefficients() == spec.printed_form.coefficients()
            assert same == (spec.id != FamilyId.C), spec.id

    def test_family_disc_matches_closed_form(self):
        for spec in family_catalog():
            assert family_disc(spec) == closed_form_family_disc(spec), spec.id


# ---------- 符号校验 ----------
class TestSymbolic:

    def test_all_families_pass(self):
        start = time.perf_counter()
        for spec in family_catalog():
            assert verify_family_symbolic(spec), spec.id
        assert time.perf_counter() - start < 1.0

    def test_expanded_sides(self):
        expected = {
            FamilyId.PLANE_I: 72 * K**2 - 60 * K + 14,
            FamilyId.PLANE_II: 72 * K**2 + 12 * K + 2,
            FamilyId.A: 288 * K**2 - 72 * K + 6,
            FamilyId.B: 288 * K**2 + 120 * K + 14,
            FamilyId.C: 288 * K**2 - 840 * K + 614,
            FamilyId.D: 18 * K**2 - 18 * K + 6,
            FamilyId.E: 18 * K**2 + 6 * K + 2,
            FamilyId.F: 18 * K**2 - 42 * K + 26,
        }
        for spec in family_catalog():
            lhs, rhs = expand_identity(spec)
            assert lhs == rhs == expected[spec.id], spec.id

    def test_sympy_oracle(self):
        x, y = sympy.symbols("x y")
        for spec in family_catalog():
            a_, b_, c_ = (to_sympy(v) for v in derive_form(spec).coefficients())
            w = spec.witness
            subs = {x: to_sympy(w.x), y: to_sympy(w.y)}
            lhs = sympy.expand(to_sympy(w.a) ** 2 * (a_ * x**2 + b_ * x * y + c_ * y**2).subs(subs))
            n = to_sympy(w.n)
            assert sympy.expand(lhs - (2 * n**2 + 2 * n + 2)) == 0, spec.id

    def test_printed_c_fails(self):
        spec = get_family("C")
        assert verify_family_symbolic(spec)
        assert not verify_family_symbolic(spec, use_printed_form=True)
        lhs, rhs = expand_identity(spec, use_printed_form=True)
        # 差在一次项: (5k − 4) 与 (6k − 4) 相差 k·y² = 4k
        assert rhs - lhs == 4 * K

    def test_printed_form_harmless_elsewhere(self):
        for spec in family_catalog():
            if spec.id != FamilyId.C:
                assert verify_family_symbolic(spec, use_printed_form=True), spec.id


# ---------- 数值校验 ----------
class TestNumeric:

    def test_examples(self):
        row = verify_family_numeric(get_family("PlaneI"), 1, 1)[0]
        assert (row.d, row.lhs, row.rhs, row.ok) == (26, 26, 26, True)
        row = verify_family_numeric(get_family("A"), 1, 1)[0]
        assert (row.x, row.y, row.n, row.d, row.rhs) == (3, 2, 10, 222, 222)
        row = verify_family_numeric(get_family("F"), 1, 1)[0]
        assert (row.x, row.y, row.n, row.d, row.rhs) == (0, 1, -1, 2, 2)
        assert row.ok and row.triple_star

    def test_range_rows(self):
        rows = verify_family_numeric(get_family("D"), -3, 3)
        assert [r.k for r in rows] == list(range(-3, 4))
        assert all(r.ok for r in rows)

    def test_printed_c_fails_at_nonzero_k(self):
        rows = verify_family_numeric(get_family("C"), -20, 20, use_printed_form=True)
        for r in rows:
            assert r.ok == (r.k == 0), r.k

    def test_rejects_empty_range(self):
        with pytest.raises(ValueError):
            verify_family_numeric(get_family("A"), 3, 1)

    def test_cross_module_consistency(self):
        start = time.perf_counter()
        for spec in family_catalog():
            for row in verify_family_numeric(spec, -20, 20):
                assert row.ok, (spec.id, row.k)
                if row.d > 6 and condition_star(row.d):
                    assert condition_triple_star(row.d)[0], (spec.id, row.k, row.d)
        assert time.perf_counter() - start < 30.0


# ---------- 规范形证书 ----------
class TestCertify:

    def test_plane_example(self):
        form = normalize(MarkedClassData(Geometry.PLANE, 0, 1, 4))
        cert = certify_canonical_form(form)
        assert cert.family == FamilyId.PLANE_I
        assert (cert.x, cert.y, cert.n) == (-5, 1, -10)
        assert cert.d == 182 and cert.star
        assert cert.a**2 * cert.d == 2 * cert.n**2 + 2 * cert.n + 2

    def test_dp6_after_normalization(self):
        form = normalize(MarkedClassData(Geometry.DP6, 6, 1, 4))
        assert family_for(form).id == FamilyId.A
        cert = certify_canonical_form(form)
        assert condition_triple_star(cert.d)[0]
        payload = cert.to_dict()
        assert payload["family"] == "A" and payload["canonical_form"]["k"] == -14

    def test_every_covered_case(self):
        for m in range(-6, 7):
            for c, geometry in ((1, Geometry.PLANE), (1, Geometry.DP6), (2, Geometry.DP6)):
                for s in range(-10, 11):
                    data = MarkedClassData(geometry, m, c, s)
                    if not data.is_admissible:
                        continue
                    cert = certify_canonical_form(normalize(data))
                    assert cert.a**2 * cert.d == 2 * cert.n**2 + 2 * cert.n + 2

    def test_dp6_c0_not_covered(self):
        form = normalize(MarkedClassData(Geometry.DP6, 0, 0, 2))
        with pytest.raises(ValueError):
            certify_canonical_form(form)


# ---------- mod 6 ----------
class TestResidues:

    def test_equivalence(self):
        assert dp6_residue_equivalence_check()

    def test_examples(self):
        assert residue_sides(3) == (False, False)
        assert residue_sides(5) == (True, True)
        assert residue_sides(0) == (False, False)
        assert len(residue_table()) == 6

    def test_section_lift(self):
        assert section_lift(1) == (0, 0)
        assert section_lift(2) == (1, 0)
        assert section_lift(0) is None
        assert section_lift(3) is None
        for r in range(6):
            lift = section_lift(r)
            if lift is not None:
                a, b = lift
                assert (r - 3 * (a + b)) % 6 in (1, 5)
            assert (lift is not None) == residue_sides(r)[1]
