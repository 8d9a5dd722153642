"""
工具通用辅助方法
"""

import json
from pathlib import Path
from typing import Optional

from loguru import logger


class ToolCommonMixin:
    """
    公共辅助方法
    """

    def _json(self, payload: object) -> str:
        """
        将 Python 对象序列化为 JSON 文本

        参数：
        - payload: object
          任意可 JSON 序列化对象

        返回：
        - str：缩进 2、保留非 ASCII 字符、末尾换行
        """
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    def _emit(self, text: str, out: Optional[Path]) -> None:
        """
        输出到文件或 stdout

        说明：
        - 文件输出时父目录不存在会先创建
        """
        if out is None:
            print(text, end="" if text.endswith("\n") else "\n")
            return
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        logger.info(f"已写入 {out}")

    def _read_json(self, path: Path) -> object:
        """
        异常：
        - FileNotFoundError / json.JSONDecodeError
        """
        return json.loads(Path(path).read_text(encoding="utf-8"))
