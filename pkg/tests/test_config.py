"""
配置加载器测试 —— YAML 嵌套 schema → 扁平 key、环境变量覆盖、取值校验。

运行: pytest tests/test_config.py -v
"""

import sys
import os
import logging

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.utils.config_loader import (
    ENV_ENUMERATE_CEILING,
    apply_env_overrides,
    get_default_config,
    load_config,
    normalize_config,
    validate_config,
)
from src.utils.logger import get_logger, quiet, set_level, verbose

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
DEFAULT_YAML = os.path.join(ROOT, "configs", "default_config.yaml")


@pytest.fixture(autouse=True)
def _clear_env(monkeypatch):
    monkeypatch.delenv(ENV_ENUMERATE_CEILING, raising=False)


class TestLoadConfig:

    def test_defaults_without_file(self):
        assert load_config() == get_default_config()

    def test_default_yaml_matches_defaults(self):
        cfg = validate_config(load_config(DEFAULT_YAML))
        assert cfg == get_default_config()

    def test_nested_sections(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(
            "enumerate:\n  ceiling: 5000\n"
            "normal_form:\n  plane_search_bound: 3\n"
            "family:\n  k_min: -5\n  k_max: 5\n"
            "logging:\n  level: DEBUG\n",
            encoding="utf-8",
        )
        cfg = load_config(str(path))
        assert cfg["enumerate_ceiling"] == 5000
        assert cfg["plane_search_bound"] == 3
        assert (cfg["family_k_min"], cfg["family_k_max"]) == (-5, 5)
        assert cfg["log_level"] == "DEBUG"
        assert cfg["oracle_a_max"] == 200

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(str(path)) == get_default_config()

    def test_flat_keys_win(self):
        cfg = normalize_config({"enumerate": {"ceiling": 100}, "enumerate_ceiling": 200})
        assert cfg["enumerate_ceiling"] == 200

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(str(tmp_path / "nope.yaml"))


class TestEnvOverride:

    def test_ceiling_override(self, monkeypatch):
        monkeypatch.setenv(ENV_ENUMERATE_CEILING, "1234")
        assert load_config()["enumerate_ceiling"] == 1234

    def test_blank_ignored(self, monkeypatch):
        monkeypatch.setenv(ENV_ENUMERATE_CEILING, "  ")
        assert apply_env_overrides(get_default_config())["enumerate_ceiling"] == 10**6

    def test_not_int(self, monkeypatch):
        monkeypatch.setenv(ENV_ENUMERATE_CEILING, "1e6")
        with pytest.raises(ValueError):
            load_config()


class TestValidate:

    @pytest.mark.parametrize("key,value", [
        ("enumerate_ceiling", 6),
        ("plane_search_bound", 0),
        ("oracle_a_max", 0),
        ("oracle_n_max", -1),
    ])
    def test_rejects(self, key, value):
        cfg = get_default_config()
        cfg[key] = value
        with pytest.raises(ValueError):
            validate_config(cfg)

    def test_rejects_inverted_k_range(self):
        cfg = get_default_config()
        cfg["family_k_min"], cfg["family_k_max"] = 3, -3
        with pytest.raises(ValueError):
            validate_config(cfg)

    def test_rejects_unknown_log_level(self):
        cfg = get_default_config()
        cfg["log_level"] = "LOUD"
        with pytest.raises(ValueError):
            validate_config(cfg)
        cfg["log_level"] = "debug"
        assert validate_config(cfg)["log_level"] == "debug"

    def test_defaults_valid(self):
        assert validate_config(get_default_config()) == get_default_config()


class TestLogger:

    def test_namespace(self):
        assert get_logger("src.lattice.gram").name == "hassett.src.lattice.gram"
        assert get_logger().name == "hassett"

    def test_levels(self):
        root = logging.getLogger("hassett")
        verbose()
        assert root.level == logging.DEBUG
        set_level("warning")
        assert root.level == logging.WARNING
        quiet()
        assert root.level == logging.ERROR

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            set_level("LOUD")

    def test_single_handler(self):
        root = logging.getLogger("hassett")
        get_logger("a")
        before = len(root.handlers)
        get_logger("b")
        get_logger("src.lattice.gram")
        assert len(root.handlers) == before
        # pytest 的日志插件会挂自己的 StreamHandler 子类, 只数本项目的
        own = [h for h in root.handlers if type(h) is logging.StreamHandler]
        assert len(own) == 1 and not root.propagate
