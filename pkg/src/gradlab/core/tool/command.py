"""
命令行入口处理
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from ...config import COMMANDS, GRADING_IDS, RunConfig, configure_logging, load_config
from ..autos import MissingCalibrationError
from ..calibrate import CalibrationError
from ..catalog import UnknownGradingError
from ..diag import CommutationError, SplitError
from ..gradecheck import GradingReport, MalformedLabelError
from ..pipeline import GradingPipeline
from ..selftest import SelfTest

# 捕获后转成退出码 1 的领域异常
DOMAIN_ERRORS = (
    CalibrationError,
    MissingCalibrationError,
    CommutationError,
    SplitError,
    MalformedLabelError,
    UnknownGradingError,
    FileNotFoundError,
    ValueError,
)


class ToolCommandMixin:
    """
    子命令解析与分发
    """

    def parser(self) -> argparse.ArgumentParser:
        """
        gradlab <command> [ids…] [--format text|json] [--out PATH] [--calibration PATH] [--jobs N]
        """
        p = argparse.ArgumentParser(
            prog="gradlab",
            description="o(8,C) 十四个精细分次的精确计算与认证",
        )
        p.add_argument("command", choices=COMMANDS, help="子命令")
        p.add_argument("ids", nargs="*", help=f"分次 id（{GRADING_IDS[0]}..{GRADING_IDS[-1]}）；verify-file 时为文件路径")
        p.add_argument("--format", dest="output_format", choices=("text", "json"), default=None, help="输出格式")
        p.add_argument("--out", type=Path, default=None, help="输出文件，缺省为 stdout")
        p.add_argument("--calibration", dest="calibration_path", type=Path, default=None, help="校准缓存文件")
        p.add_argument("--jobs", type=int, default=None, help="并行进程数")
        p.add_argument("--additive", dest="additive_labels", action="store_true", default=None, help="文本输出附带加法记号")
        p.add_argument("--log-level", dest="log_level", default=None, help="日志级别（DEBUG/INFO/WARNING/...）")
        p.add_argument("--config", type=Path, default=None, help="显式指定 TOML 配置文件")
        return p

    def build_run(self, argv: Optional[Sequence[str]] = None) -> RunConfig:
        """
        解析命令行并合并配置

        异常：
        - SystemExit：argparse 用法错误（退出码 2）
        - ValidationError：id 或参数不合法
        - FileNotFoundError：--config 文件不存在
        """
        args = self.parser().parse_args(argv)
        overrides = {
            "output_format": args.output_format,
            "calibration_path": args.calibration_path,
            "jobs": args.jobs,
            "additive_labels": args.additive_labels,
            "log_level": args.log_level.upper() if args.log_level else None,
        }
        config = load_config(args.config, overrides)
        ids, path = list(args.ids), None
        if args.command == "verify-file":
            if len(ids) != 1:
                raise ValueError("verify-file 需要且只需要一个文件路径")
            ids, path = [], Path(args.ids[0])
        return RunConfig(command=args.command, ids=ids, path=path, out=args.out, config=config)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        执行一次命令

        返回：
        - int：0 全部通过；1 认证失败或领域错误；2 用法错误
        """
        try:
            run = self.build_run(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        except ValidationError as exc:
            message = "; ".join(e["msg"] for e in exc.errors())
            print(f"gradlab: {message}", file=sys.stderr)
            return 2
        except (ValueError, FileNotFoundError) as exc:
            print(f"gradlab: {exc}", file=sys.stderr)
            return 2

        configure_logging(run.config.log_level)
        self.pipeline = GradingPipeline(run.config)
        handler = getattr(self, "cmd_" + run.command.replace("-", "_"))
        try:
            text, status = handler(run)
        except DOMAIN_ERRORS as exc:
            logger.error(f"{run.command} 失败: {exc}")
            detail = exc.report() if isinstance(exc, CalibrationError) else str(exc)
            print(f"gradlab: {detail}", file=sys.stderr)
            return 1
        self._emit(text, run.out)
        return status

    # ---------- 子命令 ----------

    def cmd_list(self, run: RunConfig) -> tuple[str, int]:
        specs = self.pipeline.catalog.specs()
        if run.config.output_format == "json":
            rows = [
                {
                    "id": s.id,
                    "title": s.title,
                    "group": s.expected_group.to_dict(),
                    "group_text": s.group_annotation,
                    "type": s.expected_type,
                    "mad_label": s.mad_label,
                    "generators": [g.label() for g in s.generators],
                }
                for s in specs
            ]
            return self._json(rows), 0
        return self.render_catalog(specs), 0

    def cmd_compute(self, run: RunConfig) -> tuple[str, int]:
        if run.config.output_format == "json":
            payloads = [self.pipeline.export(i) for i in run.ids]
            return self._json(payloads[0] if len(payloads) == 1 else payloads), 0
        text = "".join(
            self.render_decomposition(i, self.pipeline.decompose(i), run.config.additive_labels) for i in run.ids
        )
        return text, 0

    def _reports_output(self, reports: list[GradingReport], run: RunConfig) -> str:
        if run.config.output_format == "json":
            return self._json([r.to_dict() for r in reports])
        body = "".join(self.render_report(r) for r in reports)
        if len(reports) > 1:
            passed = sum(1 for r in reports if r.passed)
            body += f"{passed}/{len(reports)} gradings certified\n"
        return body

    def cmd_verify(self, run: RunConfig) -> tuple[str, int]:
        reports = self.pipeline.verify_many(run.ids, run.config.jobs)
        if run.config.additive_labels and run.config.output_format == "text":
            text = "".join(
                self.render_report(r) + self.render_decomposition(r.grading_id, self.pipeline.decompose(r.grading_id), True)
                for r in reports
            )
        else:
            text = self._reports_output(reports, run)
        return text, 0 if all(r.passed for r in reports) else 1

    def cmd_verify_all(self, run: RunConfig) -> tuple[str, int]:
        reports = self.pipeline.verify_many(list(GRADING_IDS), run.config.jobs)
        return self._reports_output(reports, run), 0 if all(r.passed for r in reports) else 1

    def cmd_compare(self, run: RunConfig) -> tuple[str, int]:
        result = self.pipeline.compare(run.ids[0], run.ids[1])
        if run.config.output_format == "json":
            return self._json(result.to_dict()), 0
        return self.render_compare(result), 0

    def cmd_calibrate(self, run: RunConfig) -> tuple[str, int]:
        basis = self.pipeline.calibration(refresh=True)
        if run.config.output_format == "json":
            return self._json(basis.to_record().model_dump()), 0
        lines = [f"calibration written to {run.config.calibration_path}"]
        lines.append(f"  candidate  {basis.provenance.get('candidate')}")
        lines.append(f"  simple     {basis.provenance.get('simple_roots')}")
        lines.append(f"  cartan     {basis.provenance.get('cartan')}")
        lines.extend(f"  B{k:<2} = {basis.describe(k)}" for k in range(1, len(basis.vectors) + 1))
        return "\n".join(lines) + "\n", 0

    def cmd_selftest(self, run: RunConfig) -> tuple[str, int]:
        results = SelfTest().run()
        if run.config.output_format == "json":
            text = self._json([r.to_dict() for r in results])
        else:
            text = self.render_selftest(results)
        return text, 0 if all(r.passed for r in results) else 1
