"""
报告写入模块，负责生成JSON报告和导出Excel表格
"""

import json
import os
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

import pandas as pd
from openpyxl.utils import get_column_letter

from src import __version__
from src.config import REPORT_SCHEMA
from src.utils.helpers import ensure_directory_exists, format_fraction

logger = logging.getLogger()

# 报告顶层必须包含的字段
REPORT_FIELDS = ("schema", "tool_version", "command", "input", "config", "result")


def _plain(value: Any) -> Any:
    """把报告中的对象转换为JSON可表示的值"""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "to_dict"):
        return _plain(value.to_dict())
    if hasattr(value, "item"):
        # numpy 标量
        return value.item()
    return value


class ReportWriter:
    """报告写入类，负责组装、校验、序列化报告以及导出表格"""

    def __init__(self, indent: int = 2):
        """初始化报告写入器

        Args:
            indent: JSON缩进
        """
        self.indent = indent

    def build_report(self, command: str, input_data: Dict[str, Any], config_echo: Dict[str, Any],
                     result: Any) -> Dict[str, Any]:
        """组装报告

        Args:
            command: 子命令名
            input_data: 输入描述（原始文本、规范形式等）
            config_echo: 本次使用的参数
            result: 结果对象或字典

        Returns:
            符合 REPORT_SCHEMA 的报告字典
        """
        report = {
            "schema": REPORT_SCHEMA,
            "tool_version": __version__,
            "command": command,
            "input": _plain(input_data),
            "config": _plain(config_echo),
            "result": _plain(result),
        }
        self.validate(report)
        return report

    def validate(self, report: Dict[str, Any]) -> None:
        """校验报告的顶层结构，不符合时抛出 ValueError"""
        missing = [name for name in REPORT_FIELDS if name not in report]
        if missing:
            raise ValueError(f"报告缺少字段: {missing}")
        extra = [name for name in report if name not in REPORT_FIELDS]
        if extra:
            raise ValueError(f"报告包含未知字段: {extra}")
        if report["schema"] != REPORT_SCHEMA:
            raise ValueError(f"报告格式版本不符: {report['schema']}")
        if not isinstance(report["command"], str) or not report["command"]:
            raise ValueError("报告的 command 字段必须是非空字符串")

    def dumps(self, report: Dict[str, Any]) -> str:
        """确定性的JSON文本：键排序，相同输入得到逐字节相同的输出"""
        return json.dumps(report, sort_keys=True, indent=self.indent, ensure_ascii=False)

    def write_report(self, report: Dict[str, Any], output_file: str) -> bool:
        """把报告写入JSON文件

        Args:
            report: 报告字典
            output_file: 输出文件路径

        Returns:
            是否成功写入
        """
        try:
            self.validate(report)
            ensure_directory_exists(os.path.dirname(output_file))
            with open(output_file, "w", encoding="utf-8") as f:
                f.write(self.dumps(report))
                f.write("\n")
            logger.info(f"报告已写入文件: {output_file}")
            return True
        except (OSError, ValueError) as e:
            logger.error(f"写入报告时出错: {e}")
            return False

    def write_tables(self, sheets: Dict[str, List[Dict[str, Any]]], output_file: str) -> bool:
        """把若干张表导出到Excel文件，每张表一个工作表

        Args:
            sheets: 工作表名到行列表的映射
            output_file: 输出文件路径（.xlsx）

        Returns:
            是否成功写入
        """
        try:
            ensure_directory_exists(os.path.dirname(output_file))
            with pd.ExcelWriter(output_file, engine="openpyxl") as writer:
                written = 0
                for name, rows in sheets.items():
                    if not rows:
                        continue
                    df = pd.DataFrame([self._flat_row(row) for row in rows])
                    sheet = name[:31]
                    df.to_excel(writer, index=False, sheet_name=sheet)

                    # 设置列宽
                    worksheet = writer.sheets[sheet]
                    for i, column in enumerate(df.columns, start=1):
                        max_length = max(
                            df[column].astype(str).map(len).max(),
                            len(str(column))
                        ) + 2
                        worksheet.column_dimensions[get_column_letter(i)].width = max_length
                    written += 1
                if written == 0:
                    pd.DataFrame({"empty": []}).to_excel(writer, index=False, sheet_name="empty")

            logger.info(f"表格已写入文件: {output_file}")
            return True

        except (OSError, ValueError) as e:
            logger.error(f"写入表格时出错: {e}")
            return False

    @staticmethod
    def _flat_row(row: Dict[str, Any]) -> Dict[str, Any]:
        """嵌套的值转换为紧凑JSON字符串，标量保持原样"""
        flat = {}
        for key, value in row.items():
            value = _plain(value)
            if isinstance(value, (dict, list)):
                value = json.dumps(value, ensure_ascii=False, sort_keys=True)
            flat[key] = value
        return flat


def verdict_tables(verdict_dict: Dict[str, Any]) -> Dict[str, List[Dict[str, Any]]]:
    """从 analyze 的结果字典中取出逐底数与逐素数的表"""
    return {
        "maximal": list(verdict_dict.get("maximal", [])),
        "minimal": list(verdict_dict.get("minimal", [])),
        "certificates": list(verdict_dict.get("certificates", [])),
    }


def format_table(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """控制台输出用的纯文本表格"""
    if not rows:
        return "(空)"
    df = pd.DataFrame([ReportWriter._flat_row(row) for row in rows])
    if columns:
        df = df[[c for c in columns if c in df.columns]]
    return df.to_string(index=False)
