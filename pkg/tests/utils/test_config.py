"""
設定與日誌工具測試
"""

import logging

import pytest
import yaml

from src.core.errors import UsageError
from src.utils.config import get_census_settings, get_log_settings, get_output_format, load_config
from src.utils.logger import log_file_of, setup_logger
from src.utils.settings import DEFAULTS, load_settings, normalize_settings


def _write(path, data):
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


class TestNormalizeSettings:
    """測試設定正規化"""

    def test_defaults(self):
        """空設定得到完整預設值"""
        settings = normalize_settings(None)
        for section, values in DEFAULTS.items():
            assert settings[section] == values

    def test_merge_keeps_other_keys(self):
        """只覆蓋指定的鍵"""
        settings = normalize_settings({"census": {"jobs": 8}})
        assert settings["census"]["jobs"] == 8
        assert settings["census"]["smooth_depth"] == 6

    def test_legacy_log_level(self):
        """根層級的 log_level 仍然有效"""
        assert normalize_settings({"log_level": "debug"})["logging"]["level"] == "DEBUG"
        explicit = normalize_settings({"log_level": "debug", "logging": {"level": "error"}})
        assert explicit["logging"]["level"] == "ERROR"

    def test_unknown_keys_preserved(self):
        assert normalize_settings({"extra": 1})["extra"] == 1

    def test_format_lowercased(self):
        assert normalize_settings({"output": {"format": "JSON"}})["output"]["format"] == "json"


class TestLoadSettings:
    """測試設定檔讀取"""

    def test_missing_file(self, tmp_path):
        assert load_settings(str(tmp_path / "nope.yaml"))["census"]["q"] == 2

    def test_broken_yaml(self, tmp_path):
        """格式錯誤時退回預設值"""
        path = tmp_path / "broken.yaml"
        path.write_text("census: [1, 2\n", encoding="utf-8")
        assert load_settings(str(path))["output"]["format"] == "md"


class TestLoadConfig:
    """測試數值檢查"""

    def test_valid(self, tmp_path):
        config = load_config(_write(tmp_path / "c.yaml", {"census": {"jobs": "4"}, "output": {"format": "csv"}}))
        assert get_census_settings(config)["jobs"] == 4
        assert get_output_format(config) == "csv"
        assert get_log_settings(config)["level"] == "INFO"

    @pytest.mark.parametrize(
        "data",
        [
            {"census": {"jobs": 0}},
            {"census": {"smooth_depth": 7}},
            {"census": {"q": "two"}},
            {"output": {"format": "xml"}},
        ],
    )
    def test_invalid(self, tmp_path, data):
        with pytest.raises(UsageError):
            load_config(_write(tmp_path / "c.yaml", data))


class TestSetupLogger:
    """測試日誌設定"""

    def test_idempotent(self, tmp_path):
        """重複呼叫不會重複添加處理器"""
        name = "cubic_stats_test_logger"
        logger = setup_logger(name, "DEBUG", str(tmp_path), to_file=True)
        count = len(logger.handlers)
        again = setup_logger(name, "WARNING", str(tmp_path), to_file=True)
        assert again is logger
        assert len(logger.handlers) == count == 2
        assert logger.level == logging.WARNING
        assert log_file_of(logger).startswith(str(tmp_path))
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)

    def test_console_only(self, tmp_path):
        logger = setup_logger("cubic_stats_console_logger", "INFO", str(tmp_path), to_file=False)
        assert log_file_of(logger) is None
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
