# residues.py
"""
DP6 有理截面命题中的 mod 6 论证, 作有限枚举校验。

记 r = Σ·S。两侧条件:
  (1) 经 r ↦ −r 与 r ↦ r + 6t (加 H² 的倍数, H²·S = 6) 可达 {1, 2};
  (2) 存在 Σ' = p*Σ + j_*q*(a·e + b·f) 使 Σ'·F ≡ 1, 5 (mod 6),
      其中 Σ'·F = Σ·S − 3(a + b), 即 {r − 3s mod 6} 与 {1, 5} 相交。
只用到上面这条剩余关系; 爆破几何本身不建模。
"""

from __future__ import annotations
from typing import Dict, Optional, Tuple

MODULUS = 6
SECTION_PAIRINGS = frozenset({1, 2})
UNIT_RESIDUES = frozenset({1, 5})


def residue_sides(r0: int) -> Tuple[bool, bool]:
    """(条件 (1) 可达, 条件 (2) 可达)"""
    r = r0 % MODULUS
    left = {r, (-r) % MODULUS} & SECTION_PAIRINGS
    right = {(r - 3 * s) % MODULUS for s in range(MODULUS)} & UNIT_RESIDUES
    return bool(left), bool(right)


def residue_table() -> Dict[int, Tuple[bool, bool]]:
    return {r: residue_sides(r) for r in range(MODULUS)}


def dp6_residue_equivalence_check() -> bool:
    """对 r₀ ∈ {0,…,5} 两侧可达性一致"""
    return all(left == right for left, right in residue_table().values())


def section_lift(r0: int) -> Optional[Tuple[int, int]]:
    """
    (1) ⟹ (2) 的显式提升: 返回 (a, b) 使 (r₀ − 3(a + b)) mod 6 ∈ {1, 5}。
    Σ·S ≡ 1, 5 → (0, 0); Σ·S ≡ 2, 4 → (1, 0) (即加上 j_*q*e)。不可提升时返回 None。
    """
    for a in range(2):
        if (r0 - 3 * a) % MODULUS in UNIT_RESIDUES:
            return a, 0
    return None
