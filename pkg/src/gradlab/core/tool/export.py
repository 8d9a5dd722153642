"""
导出与回读
"""

from pathlib import Path

from loguru import logger

from ...config import RunConfig


class ToolExportMixin:
    """
    export / verify-file
    """

    def cmd_export(self, run: RunConfig) -> tuple[str, int]:
        """
        导出分解

        返回：
        - (JSON 文本, 0)：单个 id 为对象，多个 id 为列表
        """
        payloads = [self.pipeline.export(i) for i in run.ids]
        return self._json(payloads[0] if len(payloads) == 1 else payloads), 0

    def cmd_verify_file(self, run: RunConfig) -> tuple[str, int]:
        """
        读回 export 写出的文件并重新认证

        说明：
        - 文件可以是单个对象或对象列表
        - 文件中的 id 属于目录时，同时对照期望类型、群与表中分量
        """
        data = self._read_json(Path(run.path))
        payloads = data if isinstance(data, list) else [data]
        logger.info(f"{run.path}: {len(payloads)} 个分解")
        reports = [self.pipeline.verify_payload(p) for p in payloads]
        return self._reports_output(reports, run), 0 if all(r.passed for r in reports) else 1
