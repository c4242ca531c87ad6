# exact_arith.py
"""
精确整数 / 整系数多项式算术 —— 其它所有模块的底座。

- IntPolynomial: 关于族参数 k 的整系数一元多项式, 用于格矩阵的 Σ² 槽位、
  判别式的符号计算、以及见证族恒等式的精确校验。
- Factorization / factorize: 试除法分解, 供条件 (**) 使用。
- integer_sqrt_exact: 完全平方判定 (Pell / 暴力 oracle 内部使用)。

全部使用 Python 任意精度 int, 无任何浮点。
"""

from __future__ import annotations
from dataclasses import dataclass
from itertools import zip_longest
from math import isqrt
from typing import Iterable, List, Optional, Sequence, Tuple, Union

# ======================================================================
# 1. 整系数多项式 (IntPolynomial)
# ======================================================================

# 零多项式的规范编码: 空系数元组 ()
IntLike = Union[int, "IntPolynomial"]


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    """去掉高次零系数, 得到规范编码"""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """
    关于参数 k 的整系数多项式。
    coefficients[i] 是 k^i 的系数; 最高次系数非零, 零多项式为 ()。
    """

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        for c in self.coefficients:
            # bool 是 int 的子类, 这里显式排除
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"多项式系数必须是 int, got {c!r}")
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    # ---------- 构造 ----------
    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def k(cls) -> "IntPolynomial":
        """形式参数 k 本身"""
        return cls((0, 1))

    @classmethod
    def linear(cls, slope: int, intercept: int) -> "IntPolynomial":
        """slope·k + intercept"""
        return cls((intercept, slope))

    @staticmethod
    def coerce(value: IntLike) -> "IntPolynomial":
        if isinstance(value, IntPolynomial):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return IntPolynomial.const(value)
        raise TypeError(f"无法转换为 IntPolynomial: {value!r}")

    # ---------- 属性 ----------
    @property
    def degree(self) -> int:
        """次数; 零多项式为 -1"""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def constant_value(self) -> int:
        """常数多项式的值; 非常数抛 ValueError"""
        if not self.is_constant:
            raise ValueError(f"不是常数多项式: {self}")
        return self.coefficients[0] if self.coefficients else 0

    # ---------- 环运算 ----------
    def __add__(self, other: IntLike) -> "IntPolynomial":
        if not isinstance(other, (int, IntPolynomial)):
            return NotImplemented
        o = IntPolynomial.coerce(other)
        return IntPolynomial(
            tuple(a + b for a, b in zip_longest(self.coefficients, o.coefficients, fillvalue=0))
        )

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntLike) -> "IntPolynomial":
        if not isinstance(other, (int, IntPolynomial)):
            return NotImplemented
        return self + (-IntPolynomial.coerce(other))

    def __rsub__(self, other: IntLike) -> "IntPolynomial":
        if not isinstance(other, (int, IntPolynomial)):
            return NotImplemented
        return IntPolynomial.coerce(other) - self

    def __mul__(self, other: IntLike) -> "IntPolynomial":
        if not isinstance(other, (int, IntPolynomial)):
            return NotImplemented
        o = IntPolynomial.coerce(other)
        if self.is_zero or o.is_zero:
            return IntPolynomial()
        res = [0] * (len(self.coefficients) + len(o.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(o.coefficients):
                res[i + j] += a * b
        return IntPolynomial(tuple(res))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"只支持非负整数次幂, got {exponent!r}")
        result = IntPolynomial.const(1)
        base = self
        # 快速幂
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def compose(self, inner: IntLike) -> "IntPolynomial":
        """self(inner(k)), Horner 展开"""
        inner_p = IntPolynomial.coerce(inner)
        result = IntPolynomial()
        for c in reversed(self.coefficients):
            result = result * inner_p + c
        return result

    def __call__(self, k: int) -> int:
        return poly_eval(self, k)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coefficients == IntPolynomial.const(other).coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms: List[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                var = "k" if power == 1 else f"k^{power}"
                body = var if mag == 1 else f"{mag}{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"


def poly_eval(p: IntPolynomial, k: int) -> int:
    """精确求值 p(k) (Horner)"""
    acc = 0
    for c in reversed(p.coefficients):
        acc = acc * k + c
    return acc


def poly_equal(p: IntLike, q: IntLike) -> bool:
    """规范化后逐系数比较 (多项式恒等式判定)"""
    return IntPolynomial.coerce(p).coefficients == IntPolynomial.coerce(q).coefficients


def evaluate(value: IntLike, k: Optional[int]) -> int:
    """int 原样返回; 多项式需给出 k"""
    if isinstance(value, IntPolynomial):
        if value.is_constant:
            return value.constant_value()
        if k is None:
            raise ValueError(f"含参数 k 的表达式求值需要给出 k: {value}")
        return poly_eval(value, k)
    return value


# ======================================================================
# 2. 因子分解 (Factorization)
# ======================================================================

# 试除上界: 只处理 ≤ 10^12 的输入 (√n ≤ 10^6 次试除)
FACTORIZE_LIMIT = 10**12


@dataclass(frozen=True)
class Factorization:
    """n = Π p^e, factors 按素数升序"""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError(f"因子必须按素数严格升序: {self.factors}")
        for p, e in self.factors:
            if e < 1 or not is_prime(p):
                raise ValueError(f"非法因子 ({p}, {e})")
        if self.product() != self.n:
            raise ValueError(f"因子乘积 {self.product()} != {self.n}")

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __str__(self):
        return " · ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorization_from_pairs(pairs: Sequence[Tuple[int, int]]) -> Factorization:
    """由 (p, e) 列表重建 Factorization (校验规范性)"""
    pairs = tuple((int(p), int(e)) for p, e in pairs)
    n = 1
    for p, e in pairs:
        n *= p**e
    return Factorization(n=n, factors=pairs)


def _check_factor_input(n: int):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"需要 int, got {n!r}")
    if n > FACTORIZE_LIMIT:
        raise ValueError(f"输入超出试除法范围 (≤ {FACTORIZE_LIMIT}): {n}")


def factorize(n: int) -> Factorization:
    """确定性试除分解, 试除到 √n。n ≥ 2。"""
    _check_factor_input(n)
    if n < 2:
        raise ValueError(f"factorize 需要 n ≥ 2, got {n}")
    factors: List[Tuple[int, int]] = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n=n, factors=tuple(factors))


def is_prime(n: int) -> bool:
    """确定性素性判定 (试除)"""
    _check_factor_input(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ======================================================================
# 3. 完全平方
# ======================================================================


def integer_sqrt_exact(n: int) -> Optional[int]:
    """n 是完全平方时返回 r (r² = n), 否则 None。不做近似。"""
    if n < 0:
        raise ValueError(f"integer_sqrt_exact 需要 n ≥ 0, got {n}")
    r = isqrt(n)
    return r if r * r == n else None
