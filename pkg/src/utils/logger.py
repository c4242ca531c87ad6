"""
日志工具 —— 提供可开关、可分级的日志, 替代散落各处的 print。

库模块只在 DEBUG 级别记录 (Pell 周期长度、归一化所选变换、各见证族结论),
命令行用 --quiet / --verbose 切换; 结果本身走 stdout 渲染, 不走日志。
"""

from __future__ import annotations
import logging
import sys
from typing import Optional

_CONFIGURED = False
_LOGGER_NAME = "hassett"


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """获取 logger。首次调用时按默认配置初始化。
    模块名 (src.xxx) 统一挂到 hassett 命名空间下, 共享同一个 handler。"""
    global _CONFIGURED
    if name and not name.startswith(_LOGGER_NAME):
        name = f"{_LOGGER_NAME}.{name}"
    logger = logging.getLogger(name or _LOGGER_NAME)
    if not _CONFIGURED:
        _configure_default()
        _CONFIGURED = True
    return logger


def _configure_default():
    """默认配置: INFO 级别, 输出到 stderr (stdout 留给 JSON/CSV 报告)。"""
    logger = logging.getLogger(_LOGGER_NAME)
    logger.setLevel(logging.INFO)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
    logger.propagate = False


LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def set_level(level: str):
    """动态设置日志级别 (LEVELS 之一, 大小写不敏感); 未知级别抛 ValueError。"""
    name = str(level).strip().upper()
    if name not in LEVELS:
        raise ValueError(f"未知日志级别 {level!r}, 可选: {', '.join(LEVELS)}")
    logging.getLogger(_LOGGER_NAME).setLevel(getattr(logging, name))


def quiet():
    """静默: 只保留 ERROR 以上 (CLI --quiet)。"""
    set_level("ERROR")


def verbose():
    """详细: DEBUG 级别 (打印归一化变换、Pell 周期等内部细节)。"""
    set_level("DEBUG")
