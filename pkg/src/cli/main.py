"""
命令列介面

子指令：tables、verify、census、classify、distribution、classes、characters、schema。
結果輸出到 stdout（或 --output 指定的檔案），日誌輸出到 stderr 與 logs/。
結束碼：0 成功，1 驗證或普查失敗，2 使用方式錯誤。
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

from ..core.counting import FLAVORS
from ..core.errors import CubicStatsError, UsageError
from ..oracle.census import census, write_fixtures
from ..oracle.cubic import N_MONOMIALS, CubicForm
from ..utils.config import OUTPUT_FORMATS, load_config
from ..utils.logger import setup_logger
from ..version import APP_NAME, __version__
from .models import report_schemas
from .render import (
    MARKINGS,
    build_census_report,
    build_character_report,
    build_class_table,
    build_classify_report,
    build_distribution_report,
    build_table_report,
    evaluate_report,
    render,
)
from .verify import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class CliArgumentParser(argparse.ArgumentParser):
    """把 argparse 的錯誤轉成 UsageError，由 main 統一處理結束碼"""

    def error(self, message: str):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help="輸出格式")
    common.add_argument("--atlas-names", action="store_true", default=argparse.SUPPRESS, help="加上 Atlas 類名稱")
    common.add_argument("--config", default=argparse.SUPPRESS, help="設定檔路徑（預設 config/config.yaml）")
    common.add_argument("--log-level", default=argparse.SUPPRESS, help="日誌等級")
    common.add_argument("--output", default=argparse.SUPPRESS, help="輸出檔案（預設 stdout）")
    common.add_argument("--q", type=int, default=argparse.SUPPRESS, help="有限域大小（質數冪）")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = CliArgumentParser(
        prog="run_cli.py",
        description=f"{APP_NAME} v{__version__}",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", parser_class=CliArgumentParser)
    sub.required = True

    tables = sub.add_parser("tables", parents=[common], help="重建表 1–4")
    tables.add_argument("which", type=int, help="表格編號 1–4")

    verify = sub.add_parser("verify", parents=[common], help="執行所有不變量檢查")
    verify.add_argument("--only", nargs="*", default=None, help="只執行指定 id 的檢查")

    census_parser = sub.add_parser("census", parents=[common], help="F_2 上的完整普查")
    census_parser.add_argument("--jobs", type=int, default=None, help="平行工作行程數")
    census_parser.add_argument("--smooth-depth", type=int, default=None, help="光滑性檢查的最大擴張次數")
    census_parser.add_argument("--member-samples", type=int, default=None, help="抽樣檢查的非代表元個數")
    census_parser.add_argument("--fixtures", default=None, help="寫出軌道代表元夾具檔（YAML）")

    classify = sub.add_parser("classify", parents=[common], help="分類單一三次型")
    classify.add_argument("coeffs", help="5 位十六進位，或 20 個以逗號 / 空白分隔的 0/1 係數")
    classify.add_argument("--smooth-depth", type=int, default=None, help="光滑性檢查的最大擴張次數")

    distribution = sub.add_parser("distribution", parents=[common], help="標記的分佈表")
    distribution.add_argument("marking", help=" / ".join(MARKINGS))
    distribution.add_argument("--fiber", default=None, help="纖維，格式 flavor:n，flavor 為 " + " / ".join(FLAVORS))

    sub.add_parser("classes", parents=[common], help="共軛類一覽")
    sub.add_parser("characters", parents=[common], help="特徵標表")
    sub.add_parser("schema", parents=[common], help="輸出 JSON 報表的 schema")
    return parser


def parse_form(text: str) -> CubicForm:
    """解析 classify 的係數參數"""
    cleaned = text.replace(",", " ").split()
    try:
        if len(cleaned) == N_MONOMIALS:
            return CubicForm.from_coefficients([int(c) for c in cleaned])
        if len(cleaned) == 1 and len(cleaned[0]) == N_MONOMIALS and set(cleaned[0]) <= {"0", "1"}:
            return CubicForm.from_coefficients([int(c) for c in cleaned[0]])
        if len(cleaned) == 1:
            return CubicForm.from_hex(cleaned[0])
    except ValueError as exc:
        raise UsageError(f"無法解析三次型 {text!r}: {exc}") from exc
    raise UsageError(f"無法解析三次型 {text!r}：需要 20 個係數或十六進位字串")


def parse_fiber(text: Optional[str]) -> Optional[Tuple[str, int]]:
    if text is None:
        return None
    flavor, _, n = text.partition(":")
    if flavor not in FLAVORS or not n.isdigit():
        raise UsageError(f"--fiber 格式為 flavor:n，flavor 為 {FLAVORS}，收到 {text!r}")
    return flavor, int(n)


def _resolve(args: argparse.Namespace) -> Dict[str, Any]:
    """命令列參數覆蓋設定檔"""
    config = load_config(getattr(args, "config", None))
    if hasattr(args, "log_level"):
        config["logging"]["level"] = str(args.log_level).upper()
    if hasattr(args, "format"):
        config["output"]["format"] = args.format
    if hasattr(args, "atlas_names"):
        config["output"]["atlas_names"] = True
    census_settings = config["census"]
    if hasattr(args, "q"):
        census_settings["q"] = args.q
    for key in ("jobs", "smooth_depth", "member_samples"):
        value = getattr(args, key, None)
        if value is not None:
            census_settings[key] = value
    if census_settings["jobs"] < 1:
        raise UsageError("--jobs 必須 ≥ 1")
    if not 1 <= census_settings["smooth_depth"] <= 6:
        raise UsageError("--smooth-depth 必須介於 1 與 6")
    return config


def _emit(text: str, args: argparse.Namespace) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w", encoding="utf-8") as file:
            file.write(text)
        logger.info(f"輸出已寫入 {path}")
    else:
        sys.stdout.write(text)


def _run(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    fmt = config["output"]["format"]
    atlas = config["output"]["atlas_names"]
    q = getattr(args, "q", None)

    if args.command == "tables":
        report = build_table_report(args.which, atlas_names=atlas)
        if q is not None:
            report = evaluate_report(report, q)
        _emit(render(report, fmt), args)
        return EXIT_OK

    if args.command == "distribution":
        report = build_distribution_report(args.marking, parse_fiber(args.fiber))
        if q is not None:
            report = evaluate_report(report, q)
        _emit(render(report, fmt), args)
        return EXIT_OK if all(report.identities.values()) else EXIT_FAILURE

    if args.command == "verify":
        report = run_verification(only=args.only)
        _emit(render(report, fmt), args)
        return EXIT_OK if report.status == "PASS" else EXIT_FAILURE

    if args.command == "census":
        settings = config["census"]
        try:
            result = census(
                q=settings["q"],
                jobs=settings["jobs"],
                smooth_depth=settings["smooth_depth"],
                progress_every=settings["progress_every"],
                member_samples=settings["member_samples"],
            )
        except MemoryError:
            logger.error("普查時記憶體不足")
            return EXIT_FAILURE
        if args.fixtures:
            write_fixtures(result, args.fixtures)
        report = build_census_report(result)
        _emit(render(report, fmt), args)
        logger.info(f"CENSUS {report.status} {report.matched_classes}/{len(report.classes)}")
        return EXIT_OK if report.status == "PASS" else EXIT_FAILURE

    if args.command == "classify":
        if q not in (None, 2):
            raise UsageError("classify 只支援 q = 2")
        depth = args.smooth_depth or config["census"]["smooth_depth"]
        report = build_classify_report(parse_form(args.coeffs), depth)
        _emit(render(report, fmt), args)
        return EXIT_OK

    if args.command == "classes":
        _emit(render(build_class_table(), fmt), args)
        return EXIT_OK

    if args.command == "characters":
        _emit(render(build_character_report(atlas_names=atlas), fmt), args)
        return EXIT_OK

    if args.command == "schema":
        _emit(json.dumps(report_schemas(), ensure_ascii=False, indent=2, sort_keys=True) + "\n", args)
        return EXIT_OK

    raise UsageError(f"未知的子指令: {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _resolve(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE

    log = config["logging"]
    setup_logger("src", log["level"], log["dir"], log["to_file"])
    logger.debug(f"執行 {args.command}，設定 {config}")

    try:
        return _run(args, config)
    except UsageError as exc:
        logger.error(f"使用方式錯誤: {exc}")
        return EXIT_USAGE
    except CubicStatsError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
