# conditions.py
"""
判别式 d 上的三个算术条件:

    (*)   d > 6 且 d ≡ 0, 2 (mod 6)                        —— C_d 非空
    (**)  d 不被 4、9 或任何 ≡ 2 (mod 3) 的奇素数整除       —— 伴随 K3
    (***) a²·d = 2n² + 2n + 2 有整数解 (a, n)              —— F(X) 与 K3 的 Hilb² 双有理

(***) 通过配方 2a²d = (2n+1)² + 3 化为 Pell 方程 x² − 2d·y² = −3 精确判定,
(x, y) = (2n+1, a)。暴力扫描 triple_star_bruteforce 只是半判定 oracle。
几何意义要求 d 满足 (*); 这里的谓词对任意 d ≥ 1 都可调用。
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple

from src.arith.exact_arith import factorize, integer_sqrt_exact
from src.diophantine.pell import (
    PellSolution,
    cf_sqrt,
    pell_solve,
    pell_solve_bounded,
)
from src.utils.logger import get_logger

log = get_logger(__name__)

PELL_N = -3
# 已知有理的特殊三次四维簇判别式 (Pfaffian 14, 以及 26, 38)
KNOWN_RATIONAL_DISCRIMINANTS = (14, 26, 38)
# 满足 (**) 但不满足 (***) 的例子
STRICTNESS_EXAMPLE = 74

PREDICATES = ("star", "double_star", "triple_star")


# ======================================================================
# 1. 见证
# ======================================================================


@dataclass(frozen=True)
class TripleStarWitness:
    """(***) 的见证 (a, n): a > 0, 规范化后 n ≥ 0"""

    a: int
    n: int

    def holds_for(self, d: int) -> bool:
        return self.a * self.a * d == 2 * self.n * self.n + 2 * self.n + 2

    def normalized(self) -> "TripleStarWitness":
        """n ↦ −1 − n 保持 2n² + 2n + 2 不变"""
        return self if self.n >= 0 else TripleStarWitness(self.a, -1 - self.n)

    def to_dict(self) -> dict:
        return {"a": self.a, "n": self.n}


def witness_to_pell(w: TripleStarWitness, d: int) -> PellSolution:
    """(a, n) ↦ (x, y) = (2n+1, a), 满足 x² − 2d·y² = −3"""
    if w.a <= 0 or not w.holds_for(d):
        raise ValueError(f"({w.a}, {w.n}) 不是 d={d} 的 (***) 见证")
    w = w.normalized()
    return PellSolution(x=2 * w.n + 1, y=w.a, D=2 * d, N=PELL_N)


def pell_to_witness(sol: PellSolution, d: int) -> TripleStarWitness:
    """(x, y) ↦ (a, n) = (y, (x−1)/2), n 规范化为 ≥ 0"""
    if sol.D != 2 * d or sol.N != PELL_N:
        raise ValueError(f"Pell 解 {sol} 不对应 x² − {2 * d}·y² = {PELL_N}")
    if sol.x % 2 == 0:
        # x² ≡ −3 (mod 4) 对偶数 x 不可能
        raise ValueError(f"x 必须为奇数, got {sol.x}")
    w = TripleStarWitness(a=sol.y, n=(sol.x - 1) // 2).normalized()
    if not w.holds_for(d):
        raise ValueError(f"恢复出的 ({w.a}, {w.n}) 不满足 a²d = 2n²+2n+2 (d={d})")
    return w


def witness_roundtrip(w: TripleStarWitness, d: int) -> Tuple[PellSolution, TripleStarWitness]:
    """见证 → Pell 解 → 见证 (n 规范化)"""
    sol = witness_to_pell(w, d)
    return sol, pell_to_witness(sol, d)


# ======================================================================
# 2. 三个条件
# ======================================================================


def condition_star(d: int) -> bool:
    """(*) d > 6 且 d ≡ 0, 2 (mod 6)"""
    return d > 6 and d % 6 in (0, 2)


def condition_double_star(d: int) -> bool:
    """(**) 4 ∤ d, 9 ∤ d, 且 d 没有 ≡ 2 (mod 3) 的奇素因子"""
    if d < 2:
        raise ValueError(f"condition_double_star 需要 d ≥ 2, got {d}")
    if d % 4 == 0 or d % 9 == 0:
        return False
    return all(p == 2 or p % 3 != 2 for p in factorize(d).primes)


def _triple_star_pell(d: int) -> Optional[PellSolution]:
    D = 2 * d
    if integer_sqrt_exact(D) is None and PELL_N * PELL_N >= D:
        # d ≤ 4: |N| ≥ √D, 渐近分数不完备, 用有界扫描
        return pell_solve_bounded(D, PELL_N)
    return pell_solve(D, PELL_N)


def condition_triple_star(d: int) -> Tuple[bool, Optional[TripleStarWitness]]:
    """(***) 精确判定; 可解时返回规范化见证 (a, n)"""
    if d < 1:
        raise ValueError(f"condition_triple_star 需要 d ≥ 1, got {d}")
    sol = _triple_star_pell(d)
    if sol is None:
        return False, None
    return True, pell_to_witness(sol, d)


def triple_star_bruteforce(d: int, a_max: int, n_max: int) -> Optional[TripleStarWitness]:
    """
    盒内扫描: a ∈ [1, a_max], 检查 2a²d − 3 是否为奇完全平方 x², n = (x−1)/2 ≤ n_max。
    返回 None 只表示盒内无见证, 不表示不可解。
    """
    for a in range(1, a_max + 1):
        t = 2 * a * a * d - 3
        if t < 0:
            continue
        x = integer_sqrt_exact(t)
        if x is None or x % 2 == 0:
            continue
        n = (x - 1) // 2
        if n <= n_max:
            return TripleStarWitness(a, n)
    return None


# ======================================================================
# 3. 报告
# ======================================================================


@dataclass(frozen=True)
class ConditionReport:
    d: int
    star: bool
    double_star: bool
    triple_star: bool
    triple_star_witness: Optional[TripleStarWitness] = None
    pell_certificate: Optional[PellSolution] = None
    period_length: Optional[int] = None

    def __post_init__(self):
        if self.triple_star:
            if self.triple_star_witness is None or not self.triple_star_witness.holds_for(self.d):
                raise ValueError(f"d={self.d}: (***) 为真但见证缺失或不成立")
            expected = witness_to_pell(self.triple_star_witness, self.d)
            if self.pell_certificate != expected:
                raise ValueError(f"d={self.d}: Pell 证书 {self.pell_certificate} 与见证不对应")
        elif self.triple_star_witness is not None or self.pell_certificate is not None:
            raise ValueError(f"d={self.d}: (***) 为假却带有见证")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "star": self.star,
            "double_star": self.double_star,
            "triple_star": self.triple_star,
            "witness": self.triple_star_witness.to_dict() if self.triple_star_witness else None,
            "pell": self.pell_certificate.to_dict() if self.pell_certificate else None,
            "period_length": self.period_length,
        }


def condition_report(d: int) -> ConditionReport:
    """d 的完整报告 (d ≥ 1); d = 1 时 (**) 记为 False"""
    if d < 1:
        raise ValueError(f"condition_report 需要 d ≥ 1, got {d}")
    ok, witness = condition_triple_star(d)
    pell = witness_to_pell(witness, d) if witness else None
    D = 2 * d
    period = len(cf_sqrt(D)[1]) if integer_sqrt_exact(D) is None else None
    report = ConditionReport(
        d=d,
        star=condition_star(d),
        double_star=condition_double_star(d) if d >= 2 else False,
        triple_star=ok,
        triple_star_witness=witness,
        pell_certificate=pell,
        period_length=period,
    )
    log.debug("condition_report(%d): %s", d, report.to_dict())
    return report


def enumerate_discriminants(
    max_d: int, predicates: Iterable[str] = (), min_d: int = 7
) -> Iterator[ConditionReport]:
    """min_d ≤ d ≤ max_d 中满足全部所选谓词的 d, 升序; 先算便宜的谓词"""
    selected = tuple(predicates)
    unknown = [p for p in selected if p not in PREDICATES]
    if unknown:
        raise ValueError(f"未知谓词 {unknown}, 可选: {PREDICATES}")
    for d in range(max(min_d, 1), max_d + 1):
        if "star" in selected and not condition_star(d):
            continue
        if "double_star" in selected and not (d >= 2 and condition_double_star(d)):
            continue
        if "triple_star" in selected and not condition_triple_star(d)[0]:
            continue
        yield condition_report(d)
