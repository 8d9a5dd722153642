"""
gradlab 命令行工具
"""

from .command import ToolCommandMixin
from .common import ToolCommonMixin
from .export import ToolExportMixin
from .render import ToolRenderMixin


class Tool(
    ToolCommandMixin,
    ToolExportMixin,
    ToolRenderMixin,
    ToolCommonMixin,
):
    """
    gradlab 命令行工具类

    作用：
    - 解析子命令（list / compute / verify / verify-all / compare / calibrate / export / verify-file / selftest）
    - 调用 GradingPipeline，并把结果渲染为文本或 JSON

    使用方式（典型）：
    - Tool().run(["verify", "q5"])  → 退出码
    - Tool().run(["export", "q10", "--out", "q10.json"])
    """


__all__ = ["Tool"]
