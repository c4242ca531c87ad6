# gram.py
"""
整数 Gram 矩阵 (带有序标记基) 与判别式。

- GramMatrix: r×r 对称矩阵 (1 ≤ r ≤ 3), 第 i 行对应 basis_labels[i] 所代表的类。
  约定 e₁ 总是超平面平方类 H² (e₁·e₁ = 3)。
- discriminant / discriminant_symbolic: 行列式 (后者允许 Σ² 槽位是关于 k 的多项式)。
- QuadraticForm / restrict_form: 判别式在铅笔 x·e₂ + y·e₃ 上的限制
      d(x, y) = disc⟨e₁, x·e₂ + y·e₃⟩ = (e₁·e₁)·v² − (e₁·v)²。
  每个 d(x, y) 都由 Gram 数据重新推导, 不抄写任何印刷出来的系数。
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from src.arith.exact_arith import IntPolynomial, IntLike, evaluate

Entry = Union[int, IntPolynomial]

MAX_RANK = 3
DEFAULT_LABELS = ("e1", "e2", "e3")

# ======================================================================
# 1. GramMatrix
# ======================================================================


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True)
class GramMatrix:
    """对称整数 Gram 矩阵 + 有序基标签。Σ² 槽位 (最后一个对角元) 可为 IntPolynomial。"""

    entries: Tuple[Tuple[Entry, ...], ...]
    basis_labels: Tuple[str, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        labels = tuple(self.basis_labels)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "basis_labels", labels)

        r = len(rows)
        if not (1 <= r <= MAX_RANK):
            raise ValueError(f"Gram 矩阵阶数必须在 1..{MAX_RANK}, got {r}")
        for row in rows:
            if len(row) != r:
                raise ValueError(f"Gram 矩阵必须是方阵, 行长度 {len(row)} != {r}")
            for v in row:
                if not (_is_int(v) or isinstance(v, IntPolynomial)):
                    raise TypeError(f"Gram 矩阵元素必须是 int 或 IntPolynomial, got {v!r}")
        for i in range(r):
            for j in range(i + 1, r):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(
                        f"Gram 矩阵不对称: entries[{i}][{j}]={rows[i][j]} != entries[{j}][{i}]={rows[j][i]}"
                    )
        if len(labels) != r:
            raise ValueError(f"basis_labels 长度 {len(labels)} != 阶数 {r}")
        if len(set(labels)) != r:
            raise ValueError(f"basis_labels 必须互不相同: {labels}")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def pairing(self, i: int, j: int) -> Entry:
        return self.entries[i][j]

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(v, IntPolynomial) and not v.is_constant for row in self.entries for v in row)

    def substitute(self, k: int) -> "GramMatrix":
        """把多项式元素在 k 处求值, 得到纯整数矩阵"""
        return GramMatrix(
            entries=tuple(tuple(evaluate(v, k) for v in row) for row in self.entries),
            basis_labels=self.basis_labels,
        )

    def rows(self) -> List[List]:
        """嵌套 list (渲染用); 多项式元素转为字符串"""
        return [[v if _is_int(v) else str(v) for v in row] for row in self.entries]

    def __str__(self):
        return ";".join(",".join(str(v) for v in row) for row in self.entries)


def gram(rows: Sequence[Sequence[Entry]], labels: Optional[Sequence[str]] = None) -> GramMatrix:
    """便捷构造; labels 缺省为 e1, e2, e3"""
    labels = tuple(labels) if labels is not None else DEFAULT_LABELS[: len(rows)]
    return GramMatrix(entries=tuple(tuple(r) for r in rows), basis_labels=labels)


def k8() -> GramMatrix:
    """K₈ = ⟨H², Q⟩ (含平面的三次四维簇)"""
    return gram([[3, 2], [2, 4]], ("H2", "Q"))


def k18() -> GramMatrix:
    """K₁₈ = ⟨H², S⟩ (含六次 del Pezzo 曲面)"""
    return gram([[3, 6], [6, 18]], ("H2", "S"))


def parse_gram(text: str, labels: Optional[Sequence[str]] = None) -> GramMatrix:
    """解析 "3,2;2,4" (行用 ';' 分隔, 元素用 ',' 分隔)。失败抛 ValueError。"""
    if text is None or not text.strip():
        raise ValueError("Gram 文本为空")
    rows: List[List[int]] = []
    for raw_row in text.strip().split(";"):
        cells = [c.strip() for c in raw_row.split(",")]
        try:
            rows.append([int(c) for c in cells])
        except ValueError:
            raise ValueError(f"Gram 元素不是整数: {raw_row!r}") from None
    return gram(rows, labels)


# ======================================================================
# 2. 判别式
# ======================================================================


def _det(m: Sequence[Sequence[IntLike]]) -> IntLike:
    """按第一行 Laplace 展开; r ≤ 3, 对 int 与 IntPolynomial 通用"""
    r = len(m)
    if r == 1:
        return m[0][0]
    if r == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total: IntLike = 0
    for j in range(r):
        minor = [[m[i][c] for c in range(r) if c != j] for i in range(1, r)]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def discriminant(g: GramMatrix) -> int:
    """disc = det(Gram), 精确整数。含非常数多项式元素时抛 TypeError。"""
    if g.is_symbolic:
        raise TypeError("discriminant 需要纯整数矩阵; 含参数 k 时请用 discriminant_symbolic")
    return _det([[evaluate(v, None) for v in row] for row in g.entries])


def discriminant_symbolic(g: GramMatrix) -> IntPolynomial:
    """Σ² 槽位 (最后一个对角元) 为 IntPolynomial 时, 行列式作为 k 的多项式。"""
    r = g.rank
    for i in range(r):
        for j in range(r):
            if (i, j) != (r - 1, r - 1) and isinstance(g.entries[i][j], IntPolynomial):
                raise TypeError(
                    f"多项式元素只允许出现在 Σ² 槽位 ({r - 1},{r - 1}), got entries[{i}][{j}]"
                )
    lifted = [[IntPolynomial.coerce(v) for v in row] for row in g.entries]
    return IntPolynomial.coerce(_det(lifted))


def transform(g: GramMatrix, u: Sequence[Sequence[int]]) -> GramMatrix:
    """基变换: 新基 e'_j = Σ_i u[i][j]·e_i, 返回 UᵀGU (标签沿用)"""
    r = g.rank
    if len(u) != r or any(len(row) != r for row in u):
        raise ValueError(f"变换矩阵必须是 {r}×{r}")
    out = [
        [
            sum(u[a][i] * g.entries[a][b] * u[b][j] for a in range(r) for b in range(r))
            for j in range(r)
        ]
        for i in range(r)
    ]
    return GramMatrix(entries=tuple(tuple(row) for row in out), basis_labels=g.basis_labels)


# ======================================================================
# 3. 限制判别式 d(x, y)
# ======================================================================


@dataclass(frozen=True)
class QuadraticForm:
    """d(x, y) = a·x² + b·xy + c·y²; 系数可为 k 的多项式"""

    a: Entry
    b: Entry
    c: Entry

    def at(self, x: IntLike, y: IntLike) -> IntLike:
        """环上通用求值: x, y 可为 int 或 IntPolynomial"""
        return self.a * x * x + self.b * x * y + self.c * y * y

    def substitute(self, k: int) -> "QuadraticForm":
        return QuadraticForm(evaluate(self.a, k), evaluate(self.b, k), evaluate(self.c, k))

    def coefficients(self) -> Tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
        return tuple(IntPolynomial.coerce(v) for v in (self.a, self.b, self.c))

    def __str__(self):
        def term(coef, var):
            text = str(coef)
            if isinstance(coef, IntPolynomial) and len([c for c in coef.coefficients if c]) > 1:
                text = f"({text})"
            return f"{text}{var}"

        return " + ".join(term(c, v) for c, v in ((self.a, "x^2"), (self.b, "xy"), (self.c, "y^2")))


def restrict_form(g: GramMatrix) -> QuadraticForm:
    """
    d(x, y) = disc⟨e₁, x·e₂ + y·e₃⟩ 展开:
        a = 3·(e₂·e₂) − (e₁·e₂)²
        b = 6·(e₂·e₃) − 2·(e₁·e₂)(e₁·e₃)
        c = 3·(e₃·e₃) − (e₁·e₃)²
    """
    if g.rank != 3:
        raise ValueError(f"restrict_form 需要 rank 3 的 Gram 矩阵, got rank {g.rank}")
    e = g.entries
    h = e[0][0]
    if h != 3:
        raise ValueError(f"e₁·e₁ 必须为 3 (超平面平方类), got {h}")

    def simplify(v: IntLike) -> Entry:
        if isinstance(v, IntPolynomial) and v.is_constant:
            return v.constant_value()
        return v

    a = h * e[1][1] - e[0][1] * e[0][1]
    b = 2 * h * e[1][2] - 2 * e[0][1] * e[0][2]
    c = h * e[2][2] - e[0][2] * e[0][2]
    return QuadraticForm(simplify(a), simplify(b), simplify(c))


def eval_form(f: QuadraticForm, x: int, y: int, k: Optional[int] = None) -> int:
    """a·x² + b·xy + c·y² 精确求值; 系数含 k 时需给出 k"""
    g = f.substitute(k) if k is not None else f
    return evaluate(g.at(x, y), None)


def pencil_discriminant(g: GramMatrix, x: int, y: int) -> int:
    """直接构造 ⟨e₁, v⟩ (v = x·e₂ + y·e₃) 的 2×2 Gram 矩阵求行列式 (restrict_form 的暴力对照)"""
    if g.rank != 3:
        raise ValueError(f"pencil_discriminant 需要 rank 3, got {g.rank}")
    e = [[evaluate(v, None) for v in row] for row in g.entries]
    e1v = x * e[0][1] + y * e[0][2]
    vv = x * x * e[1][1] + 2 * x * y * e[1][2] + y * y * e[2][2]
    return _det([[e[0][0], e1v], [e1v, vv]])
