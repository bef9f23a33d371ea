from typing import Any, Dict, Optional

from ..core.errors import UsageError
from .settings import DEFAULT_CONFIG_PATH, load_settings

OUTPUT_FORMATS = ("md", "csv", "json")


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """讀取設定檔並檢查數值範圍"""
    config = load_settings(config_path or DEFAULT_CONFIG_PATH)

    census = config["census"]
    for key in ("q", "jobs", "smooth_depth", "progress_every", "member_samples"):
        try:
            census[key] = int(census[key])
        except (TypeError, ValueError):
            raise UsageError(f"census.{key} 必須為整數，收到 {census[key]!r}")
    if census["jobs"] < 1:
        raise UsageError("census.jobs 必須 ≥ 1")
    if not 1 <= census["smooth_depth"] <= 6:
        raise UsageError("census.smooth_depth 必須介於 1 與 6")

    if config["output"]["format"] not in OUTPUT_FORMATS:
        raise UsageError(f"output.format 必須為 {OUTPUT_FORMATS} 之一")
    config["output"]["atlas_names"] = bool(config["output"]["atlas_names"])
    config["logging"]["to_file"] = bool(config["logging"]["to_file"])
    return config


def get_census_settings(config: Dict[str, Any]) -> Dict[str, int]:
    return dict(config["census"])


def get_output_format(config: Dict[str, Any]) -> str:
    return config["output"]["format"]


def get_log_settings(config: Dict[str, Any]) -> Dict[str, Any]:
    return dict(config["logging"])
