# normal_form.py
"""
秩 3 子格 ⟨H², Q|S, Σ⟩ 的规范形。

两种几何:
- Plane (含平面, K₈ = ⟨H², Q⟩, Σ·Q = 1):
    case I : [[3,2,0],[2,4,1],[0,1,2k]]      disc = 16k − 3
    case II: [[3,2,1],[2,4,1],[1,1,2k+1]]    disc = 16k + 5
- DP6 (含六次 del Pezzo 曲面, K₁₈ = ⟨H², S⟩, Σ·S = c ∈ {0,1,2}):
    B0: [[3,6,0],[6,18,c],[0,c,2k]]          disc = 36k − 3c²
    B1: [[3,6,1],[6,18,c],[1,c,2k+1]]        disc = 36k − 3c² + 12c
    B2: [[3,6,2],[6,18,c],[2,c,2k]]          disc = 36k − 3c² + 24c − 72

输入 MarkedClassData = (geometry, m = H²·Σ, c = (Q|S)·Σ, s = Σ²)。
可容许性: 3s − m² ≡ 0, 2 (mod 6), 即 disc⟨H², Σ⟩ 落在 (*) 的同余类。

归一化只做固定前两个基向量的幺模基变换 Σ ↦ ε·Σ + u·H² + w·(Q|S),
变换后的 Σ'² 总是用双线性型重新计算, 不查表。
"""

from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple

from src.arith.exact_arith import IntPolynomial, IntLike
from src.lattice.gram import GramMatrix, gram, discriminant, transform
from src.utils.logger import get_logger

log = get_logger(__name__)

# 平面情形穷举搜索的默认窗口 (configs/default_config.yaml: normal_form.plane_search_bound)
DEFAULT_PLANE_SEARCH_BOUND = 8


class Geometry(Enum):
    PLANE = "plane"
    DP6 = "dp6"


class CaseId(Enum):
    I = "I"
    II = "II"
    B0 = "B0"
    B1 = "B1"
    B2 = "B2"


PLANE_CASES = (CaseId.I, CaseId.II)
DP6_CASES = (CaseId.B0, CaseId.B1, CaseId.B2)
DP6_PAIRINGS = (0, 1, 2)

# 前两个基向量的 Gram 数据 (H²·H², H²·X, X·X), X = Q 或 S
_K_DATA = {
    Geometry.PLANE: (3, 2, 4),
    Geometry.DP6: (3, 6, 18),
}
_LABELS = {
    Geometry.PLANE: ("H2", "Q", "Sigma"),
    Geometry.DP6: ("H2", "S", "Sigma"),
}


# ======================================================================
# 1. 异常
# ======================================================================


class AdmissibilityViolation(ValueError):
    """3s − m² mod 6 ∉ {0, 2}: 输入不可能来自代数类"""

    def __init__(self, m: int, s: int):
        self.m = m
        self.s = s
        self.residue = (3 * s - m * m) % 6
        super().__init__(
            f"可容许性同余不成立: 3·Σ² − (H²·Σ)² = 3·{s} − {m}² ≡ {self.residue} (mod 6), 需要 ≡ 0 或 2"
        )


class InvalidPairing(ValueError):
    """Σ 与 Q / S 的配对值超出规范形引理的范围"""


class NormalizationFailure(RuntimeError):
    """搜索窗口内找不到把 H²·Σ 移到 {0, 1} 的变换 —— 说明实现假设被打破, 不是数学问题"""


# ======================================================================
# 2. 数据结构
# ======================================================================


@dataclass(frozen=True)
class MarkedClassData:
    """(geometry, m = H²·Σ, c = (Q|S)·Σ, s = Σ²)"""

    geometry: Geometry
    m: int
    c: int
    s: int

    @property
    def admissibility_residue(self) -> int:
        return (3 * self.s - self.m * self.m) % 6

    @property
    def is_admissible(self) -> bool:
        return self.admissibility_residue in (0, 2)

    def check_admissible(self):
        if not self.is_admissible:
            raise AdmissibilityViolation(self.m, self.s)


@dataclass(frozen=True)
class CanonicalForm:
    """规范形: 引理中某一个显式矩阵 + 其参数 k (及 DP6 的 c)"""

    geometry: Geometry
    case_id: CaseId
    c: int
    k: int
    gram: GramMatrix
    # Σ' = transform[2]·Σ + transform[0]·H² + transform[1]·(Q|S)
    transform: Tuple[int, int, int] = field(default=(0, 0, 1), compare=False)

    def __post_init__(self):
        expected = canonical_gram(self.geometry, self.case_id, self.c, self.k)
        if self.gram.entries != expected.entries:
            raise ValueError(f"gram 与 {self.geometry.value}/{self.case_id.value} 的规范矩阵不一致: {self.gram}")
        if discriminant(self.gram) != closed_form_disc(self.geometry, self.case_id, self.c, self.k):
            raise ValueError(f"disc 与闭式公式不一致: {self.gram}")

    @property
    def disc(self) -> int:
        return discriminant(self.gram)

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry.value,
            "case": self.case_id.value,
            "c": self.c,
            "k": self.k,
            "gram": self.gram.rows(),
            "disc": self.disc,
        }


# ======================================================================
# 3. 规范矩阵与闭式判别式
# ======================================================================


def _validate_case(geometry: Geometry, case_id: CaseId, c: int):
    if geometry == Geometry.PLANE:
        if case_id not in PLANE_CASES:
            raise ValueError(f"平面情形只有 case I / II, got {case_id.value}")
    elif geometry == Geometry.DP6:
        if case_id not in DP6_CASES:
            raise ValueError(f"DP6 情形只有 case B0 / B1 / B2, got {case_id.value}")
        if c not in DP6_PAIRINGS:
            raise InvalidPairing(f"DP6 需要 S·Σ = c ∈ {{0,1,2}}, got {c}")
    else:
        raise ValueError(f"未知几何类型: {geometry!r}")


def canonical_gram(geometry: Geometry, case_id: CaseId, c: int, k: IntLike) -> GramMatrix:
    """引理中显式给出的矩阵; k 可以是 int 或关于 k 的 IntPolynomial。平面情形 c 固定为 1。"""
    _validate_case(geometry, case_id, c)
    hh, hx, xx = _K_DATA[geometry]
    if geometry == Geometry.PLANE:
        b, pair = (0, 1) if case_id == CaseId.I else (1, 1)
        odd = case_id == CaseId.II
    else:
        b = {CaseId.B0: 0, CaseId.B1: 1, CaseId.B2: 2}[case_id]
        pair = c
        odd = case_id == CaseId.B1
    sigma_sq = 2 * k + 1 if odd else 2 * k
    if isinstance(sigma_sq, IntPolynomial) and sigma_sq.is_constant:
        sigma_sq = sigma_sq.constant_value()
    return gram(
        [[hh, hx, b], [hx, xx, pair], [b, pair, sigma_sq]],
        _LABELS[geometry],
    )


def closed_form_disc(geometry: Geometry, case_id: CaseId, c: int, k: IntLike) -> IntLike:
    """引理给出的闭式判别式"""
    _validate_case(geometry, case_id, c)
    if case_id == CaseId.I:
        return 16 * k - 3
    if case_id == CaseId.II:
        return 16 * k + 5
    base = 36 * k - 3 * c * c
    if case_id == CaseId.B0:
        return base
    if case_id == CaseId.B1:
        return base + 12 * c
    return base + 24 * c - 72


def plane_case_of(m: int) -> CaseId:
    """平面情形的分类只依赖 m mod 4: 0, 3 → I; 1, 2 → II"""
    return CaseId.I if m % 4 in (0, 3) else CaseId.II


# ======================================================================
# 4. 归一化
# ======================================================================


def input_gram(data: MarkedClassData) -> GramMatrix:
    """由原始数据构造 ⟨H², Q|S, Σ⟩ 的 Gram 矩阵"""
    hh, hx, xx = _K_DATA[data.geometry]
    return gram(
        [[hh, hx, data.m], [hx, xx, data.c], [data.m, data.c, data.s]],
        _LABELS[data.geometry],
    )


def marked_data_of(form: CanonicalForm) -> MarkedClassData:
    """从规范形的 gram 读回 (m, c, s)"""
    e = form.gram.entries
    return MarkedClassData(form.geometry, m=e[0][2], c=e[1][2], s=e[2][2])


def _pair(g: GramMatrix, v: Sequence[int], w: Sequence[int]) -> int:
    """双线性型 v·w (v, w 为基坐标)"""
    r = g.rank
    return sum(v[i] * g.entries[i][j] * w[j] for i in range(r) for j in range(r))


def _finish(data: MarkedClassData, case_id: CaseId, c: int, vec: Tuple[int, int, int]) -> CanonicalForm:
    """对基 (H², Q|S, Σ') 用双线性型重算 Gram 矩阵, 读出 k 并与引理矩阵核对"""
    g = input_gram(data)
    sigma_sq = _pair(g, vec, vec)
    odd = case_id in (CaseId.II, CaseId.B1)
    if sigma_sq % 2 != (1 if odd else 0):
        raise NormalizationFailure(
            f"{case_id.value} 需要 Σ'² 为{'奇' if odd else '偶'}数, got Σ'² = {sigma_sq} (数据 {data})"
        )
    k = (sigma_sq - 1) // 2 if odd else sigma_sq // 2
    u = [[1, 0, vec[0]], [0, 1, vec[1]], [0, 0, vec[2]]]
    try:
        form = CanonicalForm(
            geometry=data.geometry,
            case_id=case_id,
            c=c,
            k=k,
            gram=transform(g, u),
            transform=vec,
        )
    except ValueError as e:
        raise NormalizationFailure(f"变换 {vec} 没有得到规范矩阵: {e}") from e
    log.debug("normalize %s -> %s k=%d transform=%s", data, case_id.value, k, vec)
    return form


def normalize_dp6(data: MarkedClassData) -> CanonicalForm:
    """
    写 H²·Σ = 3a + b (0 ≤ b ≤ 2), 把 Σ 换成 Σ − 3a·H² + a·S:
    H²·Σ' = b, S·Σ' = c 不变, Σ'² = s + 9a² − 6am + 2ac。
    """
    if data.geometry != Geometry.DP6:
        raise ValueError(f"normalize_dp6 需要 DP6 数据, got {data.geometry.value}")
    if data.c not in DP6_PAIRINGS:
        raise InvalidPairing(f"DP6 需要 S·Σ = c ∈ {{0,1,2}}, got {data.c}")
    data.check_admissible()
    a, b = divmod(data.m, 3)
    case_id = DP6_CASES[b]
    return _finish(data, case_id, data.c, (-3 * a, a, 1))


def _plane_candidates(m: int, bound: int) -> List[Tuple[int, int, int, int]]:
    """
    枚举 Σ' = ε·Σ + α·H² + β·Q 中保持 Q·Σ' = 1 的变换:
        ε = +1: 2α + 4β = 0;  ε = −1: 2α + 4β = 2。
    β 的窗口以线性解 β₀ 为中心, 半径 bound。
    返回 (ε, α, β, H²·Σ') 且 H²·Σ' ∈ {0, 1} 的全部候选。
    """
    found = []
    for eps in (1, -1):
        alpha_base = (1 - eps) // 2  # α = alpha_base − 2β
        beta0 = (eps * m + 3 * alpha_base) // 4
        for beta in range(beta0 - bound, beta0 + bound + 1):
            alpha = alpha_base - 2 * beta
            m_new = eps * m + 3 * alpha + 2 * beta
            if m_new in (0, 1):
                found.append((eps, alpha, beta, m_new))
    return found


def normalize_plane(data: MarkedClassData, search_bound: int = DEFAULT_PLANE_SEARCH_BOUND) -> CanonicalForm:
    """
    在 (ε, α, β) 上有界搜索, 把 H²·Σ 移到 0 (case I) 或 1 (case II)。
    取第一个命中者: ε = +1 优先, 其次 |α| + |β| 最小。
    """
    if data.geometry != Geometry.PLANE:
        raise ValueError(f"normalize_plane 需要 Plane 数据, got {data.geometry.value}")
    if data.c != 1:
        raise InvalidPairing(f"平面情形需要 Q·Σ = 1, got {data.c}")
    data.check_admissible()

    candidates = _plane_candidates(data.m, search_bound)
    if not candidates:
        raise NormalizationFailure(
            f"|β − β₀| ≤ {search_bound} 内没有把 H²·Σ = {data.m} 移到 {{0,1}} 的变换; 搜索窗口可疑"
        )
    eps, alpha, beta, m_new = min(candidates, key=lambda t: (t[0] != 1, abs(t[1]) + abs(t[2])))
    case_id = CaseId.I if m_new == 0 else CaseId.II
    return _finish(data, case_id, 1, (alpha, beta, eps))


def normalize(data: MarkedClassData, search_bound: int = DEFAULT_PLANE_SEARCH_BOUND) -> CanonicalForm:
    if data.geometry == Geometry.PLANE:
        return normalize_plane(data, search_bound)
    return normalize_dp6(data)


def dp6_section_pairing(r: int) -> Tuple[int, int, int]:
    """
    有理截面约化: Σ·S = r, r mod 6 ∈ {1,2,4,5}。
    先按需 Σ ↦ −Σ 使余数落在 {1,2}, 再加 H² 的倍数 (H²·S = 6)。
    返回 (sign, shift, c), 满足 c = sign·r + 6·shift ∈ {1, 2}。
    """
    res = r % 6
    if res in (0, 3):
        raise InvalidPairing(f"Σ·S = {r} ≡ {res} (mod 6), 无法约化到 {{1,2}}")
    sign = 1 if res in (1, 2) else -1
    c = (sign * r) % 6
    shift = (c - sign * r) // 6
    return sign, shift, c
