"""
配置加载器 —— 把 YAML 嵌套 schema 展开为代码读取的扁平 key。

代码读取的扁平 key:
    schema_version       (report.schema_version)      JSON 报告 schema 版本
    enumerate_ceiling    (enumerate.ceiling)          enumerate 的 max_d 上限
    plane_search_bound   (normal_form.plane_search_bound)
    oracle_a_max, oracle_n_max  (oracle.a_max / oracle.n_max)  暴力 oracle 的盒子
    family_k_min, family_k_max  (family.k_min / family.k_max)  family verify 缺省 k 区间
    log_level            (logging.level)

环境变量 HASSETT_ENUMERATE_CEILING 覆盖 enumerate_ceiling (文件加载之后生效)。
"""

from __future__ import annotations
import copy
import os
from typing import Dict, Any, Optional
import yaml

from src.utils.logger import LEVELS

ENV_ENUMERATE_CEILING = "HASSETT_ENUMERATE_CEILING"


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """加载 YAML 配置文件并规范化; path 为空时只用默认值 (+ 环境变量)。

    Args:
        path: YAML 文件路径。
    Returns:
        规范化后的扁平 config dict。
    """
    raw: Dict[str, Any] = {}
    if path:
        with open(path, encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    cfg = normalize_config(raw)
    return apply_env_overrides(cfg)


def normalize_config(raw: Dict[str, Any]) -> Dict[str, Any]:
    """把嵌套 YAML schema 规范化为扁平结构, 并填充默认值。

    支持两种输入:
    1. 嵌套配置 (report./enumerate./normal_form./oracle./family./logging.)
    2. 扁平配置 (直接含 enumerate_ceiling 等), 扁平值优先。
    """
    cfg = copy.deepcopy(raw)
    result = get_default_config()

    report = cfg.get("report", {}) or {}
    enum_cfg = cfg.get("enumerate", {}) or {}
    nf = cfg.get("normal_form", {}) or {}
    oracle = cfg.get("oracle", {}) or {}
    family = cfg.get("family", {}) or {}
    logging_cfg = cfg.get("logging", {}) or {}

    if "schema_version" in report:
        result["schema_version"] = str(report["schema_version"])
    if "ceiling" in enum_cfg:
        result["enumerate_ceiling"] = int(enum_cfg["ceiling"])
    if "plane_search_bound" in nf:
        result["plane_search_bound"] = int(nf["plane_search_bound"])
    if "a_max" in oracle:
        result["oracle_a_max"] = int(oracle["a_max"])
    if "n_max" in oracle:
        result["oracle_n_max"] = int(oracle["n_max"])
    if "k_min" in family:
        result["family_k_min"] = int(family["k_min"])
    if "k_max" in family:
        result["family_k_max"] = int(family["k_max"])
    if "level" in logging_cfg:
        result["log_level"] = str(logging_cfg["level"])

    # 扁平 key 直接覆盖 (向后兼容)
    for key in get_default_config():
        if key in cfg:
            result[key] = cfg[key]
    return result


def apply_env_overrides(cfg: Dict[str, Any]) -> Dict[str, Any]:
    """环境变量覆盖。非整数值抛 ValueError。"""
    raw = os.environ.get(ENV_ENUMERATE_CEILING)
    if raw is not None and raw.strip():
        try:
            cfg["enumerate_ceiling"] = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_ENUMERATE_CEILING} 必须是整数, got {raw!r}") from None
    return cfg


def validate_config(cfg: Dict[str, Any]) -> Dict[str, Any]:
    """校验 config 取值范围与一致性。失败抛 ValueError。"""
    ceiling = cfg.get("enumerate_ceiling", 10**6)
    if ceiling < 7:
        raise ValueError(f"enumerate_ceiling 至少为 7, got {ceiling}")

    bound = cfg.get("plane_search_bound", 8)
    if bound < 1:
        raise ValueError(f"plane_search_bound 必须 ≥ 1, got {bound}")

    for key in ("oracle_a_max", "oracle_n_max"):
        if cfg.get(key, 1) < 1:
            raise ValueError(f"{key} 必须为正, got {cfg.get(key)}")

    if cfg.get("family_k_min", -20) > cfg.get("family_k_max", 20):
        raise ValueError(
            f"family_k_min > family_k_max: {cfg.get('family_k_min')} > {cfg.get('family_k_max')}"
        )

    level = str(cfg.get("log_level", "INFO")).strip().upper()
    if level not in LEVELS:
        raise ValueError(f"log_level 必须是 {LEVELS} 之一, got {cfg.get('log_level')!r}")
    return cfg


def get_default_config() -> Dict[str, Any]:
    """返回默认配置 (不读磁盘、不读环境变量)。"""
    return {
        "schema_version": "1.0.0",
        "enumerate_ceiling": 10**6,
        "plane_search_bound": 8,
        "oracle_a_max": 200,
        "oracle_n_max": 10**7,
        "family_k_min": -20,
        "family_k_max": 20,
        "log_level": "INFO",
    }
