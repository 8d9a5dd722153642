"""
gradlab 配置

读取顺序（后者覆盖前者）：
- 内置默认值
- 当前目录 pyproject.toml 的 [tool.gradlab]
- 当前目录 gradlab.toml（或 --config 指定的文件）
- 命令行参数
"""
import sys
from pathlib import Path
from typing import Any, Literal, Optional

from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

# 尝试导入 TOML 读取库（兼容 Python 3.9+）
try:
    # Python 3.11+ 有内置 tomllib（只读）
    import tomllib as toml_reader
except ImportError:  # pragma: no cover
    # Python < 3.11 需要 tomli
    import tomli as toml_reader

LogLevel = Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]


class Config(BaseModel):
    """
    运行配置

    字段：
    - calibration_path: 根基校准缓存文件
    - jobs: 并行进程数
    - output_format: text | json
    - additive_labels: 文本报告是否附带加法记号的群元
    - log_level: loguru 日志级别
    - calibration_candidate_limit: 校准时最多尝试的简单根系个数
    """

    calibration_path: Path = Path("calibration.json")
    jobs: int = Field(default=1, ge=1)
    output_format: Literal["text", "json"] = "text"
    additive_labels: bool = False
    log_level: LogLevel = "WARNING"
    calibration_candidate_limit: int = Field(default=48, ge=1)


COMMANDS = ("list", "compute", "verify", "verify-all", "compare", "calibrate", "export", "verify-file", "selftest")
GRADING_IDS: tuple[str, ...] = tuple(f"q{k}" for k in range(1, 15))

# 每个命令接受的 id 个数 (最少, 最多)，None 表示不限
_ID_ARITY: dict[str, tuple[int, Optional[int]]] = {
    "list": (0, 0),
    "compute": (1, None),
    "verify": (1, None),
    "verify-all": (0, 0),
    "compare": (2, 2),
    "calibrate": (0, 0),
    "export": (1, None),
    "verify-file": (0, 0),
    "selftest": (0, 0),
}


class RunConfig(BaseModel):
    """
    一次命令行调用

    字段：
    - command: 子命令
    - ids: 分次 id（统一为小写）
    - path: verify-file 读取的文件
    - config: 运行配置（已合并 TOML 与命令行）
    - out: 输出文件，缺省写 stdout
    """

    command: Literal["list", "compute", "verify", "verify-all", "compare", "calibrate", "export", "verify-file", "selftest"]
    ids: list[str] = Field(default_factory=list)
    path: Optional[Path] = None
    out: Optional[Path] = None
    config: Config = Field(default_factory=Config)

    @field_validator("ids")
    @classmethod
    def _known_ids(cls, ids: list[str]) -> list[str]:
        normalized = [i.strip().lower() for i in ids]
        unknown = [i for i, n in zip(ids, normalized) if n not in GRADING_IDS]
        if unknown:
            raise ValueError(f"未知分次 {', '.join(unknown)}，可用: q1..q14")
        return normalized

    @model_validator(mode="after")
    def _check_arity(self) -> "RunConfig":
        low, high = _ID_ARITY[self.command]
        n = len(self.ids)
        if n < low or (high is not None and n > high):
            want = f"{low}" if low == high else f"至少 {low}"
            raise ValueError(f"{self.command} 需要 {want} 个分次 id，收到 {n}")
        if self.command == "verify-file" and self.path is None:
            raise ValueError("verify-file 需要文件路径")
        return self


def _read_toml(path: Path) -> dict:
    with open(path, "rb") as f:
        return toml_reader.load(f)


def load_config(
    explicit: Optional[Path] = None,
    overrides: Optional[dict[str, Any]] = None,
    cwd: Optional[Path] = None,
) -> Config:
    """
    按优先级合并配置

    参数：
    - explicit: Path | None
      --config 指定的 TOML 文件（顶层表或 [tool.gradlab] 均可），指定后不再读 gradlab.toml
    - overrides: dict | None
      命令行给出的值，None 值忽略
    - cwd: Path | None
      查找 pyproject.toml / gradlab.toml 的目录，默认当前目录

    返回：
    - Config

    异常：
    - FileNotFoundError：explicit 文件不存在
    - pydantic.ValidationError：字段值不合法
    """
    base = Path(cwd) if cwd is not None else Path.cwd()
    merged: dict[str, Any] = {}

    pyproject = base / "pyproject.toml"
    if pyproject.is_file():
        section = _read_toml(pyproject).get("tool", {}).get("gradlab", {})
        if section:
            logger.debug(f"读取 {pyproject} [tool.gradlab]")
        merged.update(section)

    if explicit is not None:
        explicit = Path(explicit)
        if not explicit.is_file():
            raise FileNotFoundError(f"配置文件不存在: {explicit}")
        source: Optional[Path] = explicit
    else:
        source = base / "gradlab.toml" if (base / "gradlab.toml").is_file() else None
    if source is not None:
        data = _read_toml(source)
        merged.update(data.get("tool", {}).get("gradlab", data))
        logger.debug(f"读取 {source}")

    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    return Config.model_validate(merged)


def configure_logging(level: str) -> None:
    """
    日志只写 stderr，stdout 留给报告
    """
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format="<level>{level: <8}</level> | {message}")


__all__ = ["Config", "RunConfig", "COMMANDS", "GRADING_IDS", "load_config", "configure_logging"]
