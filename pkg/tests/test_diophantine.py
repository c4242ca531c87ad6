"""
diophantine 测试 —— 连分数 / Pell 方程 / 条件 (*) (**) (***)。

运行: pytest tests/test_diophantine.py -v

测试策略:
- cf_sqrt 与 sympy 的 continued_fraction_periodic 对照。
- (***) 的 Pell 判定与盒内暴力 oracle 对照 (d ∈ [7, 2000] 且满足 (*))。
- (**) 与 sympy.factorint 上的直接实现对照。
- 文中给出的判别式 (14, 26, 38, 74) 逐个核对, 带 perf_counter 时间预算。
"""

import sys
import os
import time
from math import isqrt

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy.ntheory.continued_fraction import continued_fraction_periodic

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.arith.exact_arith import integer_sqrt_exact
from src.diophantine.pell import (
    PellSolution,
    cf_sqrt,
    convergents,
    pell_fundamental_unit,
    pell_solve,
    pell_solve_bounded,
)
from src.diophantine.conditions import (
    KNOWN_RATIONAL_DISCRIMINANTS,
    STRICTNESS_EXAMPLE,
    ConditionReport,
    TripleStarWitness,
    condition_double_star,
    condition_report,
    condition_star,
    condition_triple_star,
    enumerate_discriminants,
    pell_to_witness,
    triple_star_bruteforce,
    witness_roundtrip,
    witness_to_pell,
)
from src.utils.config_loader import get_default_config
from src.utils.logger import quiet

quiet()

DEFAULTS = get_default_config()


def _first_y(D, N, y_max):
    """x² − D·y² = N 在 1 ≤ y ≤ y_max 内的最小 y"""
    for y in range(1, y_max + 1):
        t = D * y * y + N
        if t > 0 and integer_sqrt_exact(t) is not None:
            return y
    return None


@st.composite
def triple_star_witnesses(draw):
    """(a, n, d) 满足 a²·d = 2n² + 2n + 2: 先取 n, 再取 a² | 2n² + 2n + 2"""
    n = draw(st.integers(-10**4, 10**4))
    value = 2 * n * n + 2 * n + 2
    a = draw(st.sampled_from([a for a in range(1, isqrt(value) + 1) if value % (a * a) == 0]))
    return a, n, value // (a * a)


# ---------- 连分数 ----------
class TestContinuedFraction:

    def test_examples(self):
        assert cf_sqrt(2) == (1, (2,))
        assert cf_sqrt(28) == (5, (3, 2, 3, 10))
        assert cf_sqrt(76) == (8, (1, 2, 1, 1, 5, 4, 5, 1, 1, 2, 1, 16))

    def test_rejects_square_and_nonpositive(self):
        for D in (0, -2, 4, 49):
            with pytest.raises(ValueError):
                cf_sqrt(D)

    def test_matches_sympy(self):
        for D in range(2, 600):
            if sympy.sqrt(D).is_Integer:
                continue
            a0, period = cf_sqrt(D)
            expected = continued_fraction_periodic(0, 1, D)
            assert [a0, list(period)] == expected, D

    def test_convergents(self):
        # √2: 1/1, 3/2, 7/5, 17/12
        assert list(convergents(1, (2,), 4)) == [(1, 1), (3, 2), (7, 5), (17, 12)]
        assert list(convergents(1, (2,), 0)) == []

    def test_fundamental_unit(self):
        assert pell_fundamental_unit(2) == (3, 2)
        assert pell_fundamental_unit(28) == (127, 24)
        assert pell_fundamental_unit(61) == (1766319049, 226153980)
        for D in range(2, 200):
            if sympy.sqrt(D).is_Integer:
                continue
            u, v = pell_fundamental_unit(D)
            assert u * u - D * v * v == 1


# ---------- Pell ----------
class TestPell:

    def test_examples(self):
        assert pell_solve(28, -3) == PellSolution(5, 1, 28, -3)
        assert pell_solve(52, -3) == PellSolution(7, 1, 52, -3)
        assert pell_solve(76, -3) == PellSolution(61, 7, 76, -3)
        assert pell_solve(148, -3) is None
        assert pell_solve(4, -3) == PellSolution(1, 1, 4, -3)

    def test_square_branch_none(self):
        # (x − 3y)(x + 3y) = −3 无正解
        assert pell_solve(9, -3) is None

    def test_rejects_outside_convergent_regime(self):
        with pytest.raises(ValueError):
            pell_solve(10, 4)
        with pytest.raises(ValueError):
            pell_solve(6, -3)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            pell_solve(0, -3)
        with pytest.raises(ValueError):
            pell_solve(28, 0)

    def test_solution_validates(self):
        with pytest.raises(ValueError):
            PellSolution(5, 2, 28, -3)
        with pytest.raises(ValueError):
            PellSolution(0, 1, 3, -3)

    def test_square_factor_in_n(self):
        # 非互素解: 18² − 20·4² = 4 来自 9² − 20·2² = 1
        assert pell_solve(20, 4) == PellSolution(18, 4, 20, 4)
        assert pell_solve(18, 4) == PellSolution(34, 8, 18, 4)
        assert pell_solve(17, -4) == PellSolution(8, 2, 17, -4)

    def test_agrees_with_bruteforce_small(self):
        for D in range(10, 200):
            if integer_sqrt_exact(D) is not None:
                continue
            n_bound = isqrt(D - 1)
            for N in range(-n_bound, n_bound + 1):
                if N == 0 or N * N >= D:
                    continue
                y_brute = _first_y(D, N, 300)
                sol = pell_solve(D, N)
                if y_brute is not None:
                    assert sol is not None and sol.y <= y_brute, (D, N)

    def test_convergent_completeness_minus_three(self):
        rng = np.random.default_rng(5000)
        start = time.perf_counter()
        checked = 0
        while checked < 200:
            D = int(rng.integers(10, 5001))
            if integer_sqrt_exact(D) is not None:
                continue
            checked += 1
            y_brute = _first_y(D, -3, 10**4)
            if y_brute is not None:
                sol = pell_solve(D, -3)
                assert sol is not None and sol.y <= y_brute, D
        assert time.perf_counter() - start < 30.0

    def test_bounded(self):
        assert pell_solve_bounded(2, -1) == PellSolution(1, 1, 2, -1)
        assert pell_solve_bounded(2, 7) == PellSolution(3, 1, 2, 7)
        assert pell_solve_bounded(2, -3) is None
        assert pell_solve_bounded(6, -3) is None
        assert pell_solve_bounded(8, -3) is None
        with pytest.raises(ValueError):
            pell_solve_bounded(4, -3)

    def test_bounded_agrees_with_convergents(self):
        for D in range(10, 120):
            if sympy.sqrt(D).is_Integer:
                continue
            for N in (-3, -2, -1, 1, 2, 3):
                assert (pell_solve_bounded(D, N) is None) == (pell_solve(D, N) is None), (D, N)

    @given(st.integers(2, 5000), st.integers(1, 400))
    @settings(max_examples=200, deadline=None)
    def test_minimal_solution_is_minimal(self, D, y_cap):
        assume(not sympy.sqrt(D).is_Integer)
        sol = pell_solve(D, -1)
        if sol is None:
            return
        for y in range(1, min(sol.y, y_cap)):
            assert integer_sqrt_exact(D * y * y - 1) is None, (D, y)


# ---------- 条件 ----------
class TestConditions:

    def test_star(self):
        assert condition_star(8)
        assert not condition_star(6)
        assert condition_star(74)
        assert not condition_star(9)

    def test_double_star_examples(self):
        assert condition_double_star(74)
        assert not condition_double_star(12)
        assert condition_double_star(14)
        assert not condition_double_star(18)
        assert not condition_double_star(10)  # 5 ≡ 2 (mod 3)
        with pytest.raises(ValueError):
            condition_double_star(1)

    def test_double_star_matches_factorint(self):
        for d in range(2, 3000):
            f = sympy.factorint(d)
            expected = (
                d % 4 != 0
                and d % 9 != 0
                and all(p == 2 or p % 3 != 2 for p in f)
            )
            assert condition_double_star(d) == expected, d

    def test_triple_star_examples(self):
        assert condition_triple_star(14) == (True, TripleStarWitness(1, 2))
        assert condition_triple_star(26) == (True, TripleStarWitness(1, 3))
        assert condition_triple_star(38) == (True, TripleStarWitness(7, 30))
        assert condition_triple_star(74) == (False, None)

    def test_triple_star_small_d(self):
        assert condition_triple_star(1) == (False, None)
        assert condition_triple_star(2) == (True, TripleStarWitness(1, 0))
        assert condition_triple_star(3) == (False, None)
        assert condition_triple_star(4) == (False, None)
        with pytest.raises(ValueError):
            condition_triple_star(0)

    def test_bruteforce_examples(self):
        assert triple_star_bruteforce(26, 10, 100) == TripleStarWitness(1, 3)
        assert triple_star_bruteforce(74, 50, 10**6) is None
        assert triple_star_bruteforce(2, 1, 1) == TripleStarWitness(1, 0)

    def test_headline_discriminants(self):
        start = time.perf_counter()
        for d in KNOWN_RATIONAL_DISCRIMINANTS:
            report = condition_report(d)
            assert report.star and report.triple_star
            w = report.triple_star_witness
            assert w.a * w.a * d == 2 * w.n * w.n + 2 * w.n + 2
        assert time.perf_counter() - start < 1.0

    def test_strictness_example(self):
        start = time.perf_counter()
        report = condition_report(STRICTNESS_EXAMPLE)
        assert report.star and report.double_star and not report.triple_star
        assert report.triple_star_witness is None and report.pell_certificate is None
        assert report.period_length == len(cf_sqrt(2 * STRICTNESS_EXAMPLE)[1])
        assert time.perf_counter() - start < 1.0

    def test_triple_star_implies_double_star(self):
        start = time.perf_counter()
        for d in range(7, 2001):
            if condition_triple_star(d)[0]:
                assert condition_double_star(d), d
        assert condition_double_star(STRICTNESS_EXAMPLE)
        assert not condition_triple_star(STRICTNESS_EXAMPLE)[0]
        assert time.perf_counter() - start < 10.0

    def test_oracle_equivalence(self):
        a_max, n_max = DEFAULTS["oracle_a_max"], DEFAULTS["oracle_n_max"]
        start = time.perf_counter()
        for d in range(7, 2001):
            if not condition_star(d):
                continue
            ok, witness = condition_triple_star(d)
            brute = triple_star_bruteforce(d, a_max, n_max)
            if brute is not None:
                assert ok, d
            if ok:
                assert witness.holds_for(d), d
                if witness.a <= a_max and witness.n <= n_max:
                    assert brute == witness, d
        assert time.perf_counter() - start < 60.0


# ---------- 见证 / 报告 ----------
class TestWitness:

    def test_roundtrip_examples(self):
        assert witness_roundtrip(TripleStarWitness(1, 2), 14)[0] == PellSolution(5, 1, 28, -3)
        assert witness_roundtrip(TripleStarWitness(1, 3), 26)[0] == PellSolution(7, 1, 52, -3)
        assert witness_roundtrip(TripleStarWitness(1, 0), 2)[0] == PellSolution(1, 1, 4, -3)

    def test_negative_n_normalized(self):
        sol, back = witness_roundtrip(TripleStarWitness(1, -3), 14)
        assert sol == PellSolution(5, 1, 28, -3)
        assert back == TripleStarWitness(1, 2)

    def test_rejects_non_witness(self):
        with pytest.raises(ValueError):
            witness_to_pell(TripleStarWitness(1, 1), 14)
        with pytest.raises(ValueError):
            pell_to_witness(PellSolution(5, 1, 28, -3), 13)

    @given(triple_star_witnesses())
    @settings(max_examples=200, deadline=None)
    def test_roundtrip_property(self, witness):
        a, n, d = witness
        sol, back = witness_roundtrip(TripleStarWitness(a, n), d)
        assert sol.x * sol.x - 2 * d * sol.y * sol.y == -3
        assert back == TripleStarWitness(a, n).normalized()
        assert condition_triple_star(d)[0]

    def test_report_rejects_inconsistent(self):
        with pytest.raises(ValueError):
            ConditionReport(d=14, star=True, double_star=True, triple_star=True)
        with pytest.raises(ValueError):
            ConditionReport(
                d=74, star=True, double_star=True, triple_star=False,
                triple_star_witness=TripleStarWitness(1, 2),
            )

    def test_report_dict(self):
        payload = condition_report(14).to_dict()
        assert payload["d"] == 14
        assert payload["witness"] == {"a": 1, "n": 2}
        assert payload["pell"] == {"x": 5, "y": 1}
        assert payload["period_length"] == 4

    def test_report_d1(self):
        report = condition_report(1)
        assert not report.star and not report.double_star and not report.triple_star
        with pytest.raises(ValueError):
            condition_report(0)


# ---------- 枚举 ----------
class TestEnumerate:

    def test_star_triple_star(self):
        ds = [r.d for r in enumerate_discriminants(40, ["star", "triple_star"])]
        for d in KNOWN_RATIONAL_DISCRIMINANTS:
            assert d in ds
        assert ds == sorted(set(ds))

    def test_empty_below_eight(self):
        assert list(enumerate_discriminants(7, ["star"])) == []

    def test_star_double_star_includes_74(self):
        ds = [r.d for r in enumerate_discriminants(80, ["star", "double_star"])]
        assert STRICTNESS_EXAMPLE in ds
        assert all(condition_star(d) and condition_double_star(d) for d in ds)

    def test_no_filter(self):
        ds = [r.d for r in enumerate_discriminants(20)]
        assert ds == list(range(7, 21))

    def test_unknown_predicate(self):
        with pytest.raises(ValueError):
            list(enumerate_discriminants(40, ["bogus"]))
