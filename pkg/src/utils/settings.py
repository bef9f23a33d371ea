from __future__ import annotations

import logging
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/config.yaml"

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "logging": {"level": "INFO", "dir": "logs", "to_file": True},
    "census": {"q": 2, "jobs": 1, "smooth_depth": 6, "progress_every": 50, "member_samples": 1000},
    "output": {"format": "md", "atlas_names": False},
}


def _ensure_dict(value: Any) -> Dict[str, Any]:
    if isinstance(value, dict):
        return value
    return {}


def normalize_settings(raw: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Normalize raw config/config.yaml into a consistent structure.

    Each known section is merged key by key over DEFAULTS; unknown top-level keys
    are preserved untouched.
    """

    raw = _ensure_dict(raw)
    normalized = dict(raw)
    for section, defaults in DEFAULTS.items():
        merged = dict(defaults)
        merged.update(_ensure_dict(raw.get(section)))
        normalized[section] = merged

    # Legacy: a bare `log_level` at root.
    if raw.get("log_level") and "level" not in _ensure_dict(raw.get("logging")):
        normalized["logging"]["level"] = str(raw["log_level"])

    normalized["logging"]["level"] = str(normalized["logging"]["level"]).upper()
    normalized["output"]["format"] = str(normalized["output"]["format"]).lower()
    return normalized


def load_settings(config_path: str = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    try:
        with open(config_path, "r", encoding="utf-8") as file:
            raw = yaml.safe_load(file) or {}
    except FileNotFoundError:
        logger.debug(f"找不到設定檔 {config_path}，使用預設值")
        raw = {}
    except yaml.YAMLError as exc:
        logger.warning(f"設定檔 {config_path} 格式錯誤，使用預設值: {exc}")
        raw = {}
    return normalize_settings(raw)
