# pell.py
"""
广义 Pell 方程 x² − D·y² = N。

- cf_sqrt: √D 的简单连分数 (PQa 迭代), 周期恰好返回一次。
- pell_solve: |N| < √D 时, 所有互素解都出现在 √D 的渐近分数中;
  对每个 f² | N 解 N/f² 的互素解再乘回 f,
  扫描一个周期 (周期长度为奇数时两个周期) 即可判定可解性。
  D 为完全平方时改用 (x − r·y)(x + r·y) = N 的因子对枚举。
- pell_solve_bounded: |N| ≥ √D 的小 D 情形, 用基本单位 (u, v) 给出的
  经典上界 y ≤ √(|N|(u ± 1)/(2D)) 有限扫描。

全部为精确整数运算。
"""

from __future__ import annotations
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, List, Optional, Tuple

from src.arith.exact_arith import integer_sqrt_exact
from src.utils.logger import get_logger

log = get_logger(__name__)


@dataclass(frozen=True)
class PellSolution:
    """x² − D·y² = N 的一个正解; 构造时校验方程"""

    x: int
    y: int
    D: int
    N: int

    def __post_init__(self):
        if self.x <= 0 or self.y <= 0:
            raise ValueError(f"PellSolution 需要 x, y > 0, got ({self.x}, {self.y})")
        if self.x * self.x - self.D * self.y * self.y != self.N:
            raise ValueError(
                f"({self.x}, {self.y}) 不满足 x² − {self.D}·y² = {self.N}"
            )

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y}


# ======================================================================
# 1. 连分数
# ======================================================================


def cf_sqrt(D: int) -> Tuple[int, Tuple[int, ...]]:
    """√D = [a₀; period...], D > 0 且非完全平方。周期以 2·a₀ 结尾。"""
    if D <= 0:
        raise ValueError(f"cf_sqrt 需要 D > 0, got {D}")
    if integer_sqrt_exact(D) is not None:
        raise ValueError(f"cf_sqrt 需要非完全平方 D, got {D}")
    a0 = isqrt(D)
    m, q, a = 0, 1, a0
    period: List[int] = []
    while a != 2 * a0:
        m = q * a - m
        q = (D - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    log.debug("cf_sqrt(%d): a0=%d, period length %d", D, a0, len(period))
    return a0, tuple(period)


def convergents(a0: int, terms: Tuple[int, ...], count: int) -> Iterator[Tuple[int, int]]:
    """[a₀; terms, terms, ...] 的前 count 个渐近分数 (p_i, q_i)"""
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    if count <= 0:
        return
    yield p, q
    i = 0
    while i < count - 1:
        a = terms[i % len(terms)]
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        i += 1


def _scan_length(period: Tuple[int, ...]) -> int:
    """需要扫描的渐近分数个数: 周期长度 l 为偶数时 l, 奇数时 2l"""
    l = len(period)
    return l if l % 2 == 0 else 2 * l


def pell_fundamental_unit(D: int) -> Tuple[int, int]:
    """x² − D·y² = 1 的最小正解"""
    a0, period = cf_sqrt(D)
    p, q = 0, 0
    for p, q in convergents(a0, period, _scan_length(period)):
        pass
    if p * p - D * q * q != 1:
        # 不可能发生: 扫描末项恒为基本单位
        raise RuntimeError(f"√{D} 的周期末渐近分数不是基本单位: ({p}, {q})")
    return p, q


# ======================================================================
# 2. 求解
# ======================================================================


def _solve_square(r: int, D: int, N: int) -> Optional[PellSolution]:
    """D = r²: (x − r·y)(x + r·y) = N, 枚举因子对"""
    best: Optional[Tuple[int, int]] = None
    n_abs = abs(N)
    for u_abs in range(1, isqrt(n_abs) + 1):
        if n_abs % u_abs:
            continue
        for small in (u_abs, n_abs // u_abs):
            for u in (small, -small):
                w = N // u
                diff = w - u
                if (u + w) % 2 or diff <= 0 or diff % (2 * r):
                    continue
                x, y = (u + w) // 2, diff // (2 * r)
                if x > 0 and y > 0 and (best is None or (x, y) < best):
                    best = (x, y)
    return PellSolution(best[0], best[1], D, N) if best else None


def pell_solve(D: int, N: int) -> Optional[PellSolution]:
    """
    判定 x² − D·y² = N 是否有正整数解, 有则返回最小的一个。
    非平方 D 需要 0 < |N| < √D, 否则抛 ValueError (超出渐近分数完备的范围)。
    """
    if D <= 0:
        raise ValueError(f"pell_solve 需要 D > 0, got {D}")
    if N == 0:
        raise ValueError("pell_solve 需要 N ≠ 0")
    r = integer_sqrt_exact(D)
    if r is not None:
        return _solve_square(r, D, N)
    if N * N >= D:
        raise ValueError(f"|N| = {abs(N)} ≥ √{D}: 不在渐近分数判定的范围内")
    a0, period = cf_sqrt(D)
    scan = _scan_length(period)
    best: Optional[Tuple[int, int]] = None
    for f in _square_divisors(N):
        m = N // (f * f)
        for p, q in convergents(a0, period, scan):
            if p * p - D * q * q == m:
                if best is None or f * q < best[1]:
                    best = (f * p, f * q)
                break
    return PellSolution(best[0], best[1], D, N) if best else None


def _square_divisors(N: int) -> List[int]:
    """满足 f² | N 的全部 f ≥ 1"""
    n_abs = abs(N)
    return [f for f in range(1, isqrt(n_abs) + 1) if n_abs % (f * f) == 0]


def pell_solve_bounded(D: int, N: int) -> Optional[PellSolution]:
    """
    非平方 D、任意 N ≠ 0 的有限判定。设 (u, v) 为基本单位, 每个解类都有代表满足
        N < 0: √(|N|/D) ≤ y ≤ √(|N|(u+1)/(2D))
        N > 0: 0 ≤ y ≤ √(N(u−1)/(2D))
    只适合 D、N 都很小的情形 (这里用于 D = 2d, d ≤ 4)。
    """
    if D <= 0 or integer_sqrt_exact(D) is not None:
        raise ValueError(f"pell_solve_bounded 需要非平方 D > 0, got {D}")
    if N == 0:
        raise ValueError("pell_solve_bounded 需要 N ≠ 0")
    u, v = pell_fundamental_unit(D)
    if N < 0:
        y_max = isqrt(-N * (u + 1) // (2 * D))
    else:
        y_max = isqrt(N * (u - 1) // (2 * D))
    for y in range(0, y_max + 1):
        x = integer_sqrt_exact(D * y * y + N) if D * y * y + N >= 0 else None
        if x is None:
            continue
        if y == 0:
            # (x, 0) 乘以基本单位得到正解
            return PellSolution(x * u, x * v, D, N)
        if x == 0:
            return PellSolution(D * y * v, y * u, D, N)
        return PellSolution(x, y, D, N)
    return None
