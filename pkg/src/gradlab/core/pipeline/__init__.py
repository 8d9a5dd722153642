"""
分次流水线
效果: 把目录、自同构、同时对角化、认证与校准串成一条流程，供命令行与测试使用

流程方法
    GradingPipeline.calibration: 取（必要时计算并缓存）校准根基
    GradingPipeline.generators: 目录生成元 → (算子, 候选特征值)
    GradingPipeline.decompose: 同时对角化
    GradingPipeline.verify / verify_many: 认证报告（verify_many 可多进程）
    GradingPipeline.compare: 双向细化判定
导出与导入
    GradingPipeline.export: 分解 → JSON 字典
    GradingPipeline.import_decomposition / verify_payload: JSON → 分解 → 重新认证

功能说明:
- 只在生成元或表中分量需要时才触发校准
- 多进程时父进程先完成校准，把记录字典传给子进程，子进程不再重新认证
"""
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Optional, Sequence

from loguru import logger
from pydantic import BaseModel, Field

from ...config import Config
from ...unit.field import FieldElement
from ..autos import Automorphisms, GeneratorKind, Operator
from ..calibrate import CalibratedBasis, Calibrator
from ..catalog import Catalog, GradingSpec
from ..diag import Diagonalizer, LabeledDecomposition
from ..gradecheck import GradingChecker, GradingReport, GroupStructure
from ..liealg import DIM


class ExportedComponent(BaseModel):
    label: list[list[str]]
    basis: list[list[list[str]]] = Field(min_length=1)


class ExportedGrading(BaseModel):
    """
    export 的 JSON 结构，域元素写作四个 "p/q" 字符串
    """

    id: str
    group: GroupStructure
    type: list[int]
    generators: list[GeneratorKind]
    components: list[ExportedComponent]


@dataclass(frozen=True)
class CompareResult:
    first: str
    second: str
    first_refines_second: bool
    second_refines_first: bool

    def verdict(self) -> str:
        if self.first_refines_second and self.second_refines_first:
            return f"{self.first} and {self.second} are the same grading"
        if self.first_refines_second:
            return f"{self.first} refines {self.second}"
        if self.second_refines_first:
            return f"{self.second} refines {self.first}"
        return "neither refines the other"

    def to_dict(self) -> dict:
        return {
            "first": self.first,
            "second": self.second,
            "first_refines_second": self.first_refines_second,
            "second_refines_first": self.second_refines_first,
            "verdict": self.verdict(),
        }


def _fe(x: FieldElement) -> list[str]:
    return x.to_strings()


class GradingPipeline:
    """
    分次流水线

    参数：
    - config: Config | None
    - basis: CalibratedBasis | None
      已有的校准根基（子进程或测试注入），给出后不再读缓存
    """

    def __init__(self, config: Optional[Config] = None, basis: Optional[CalibratedBasis] = None):
        self.config = config or Config()
        self.catalog = Catalog()
        self.autos = Automorphisms()
        self.diagonalizer = Diagonalizer()
        self.checker = GradingChecker()
        self._basis = basis
        self._decompositions: dict[str, LabeledDecomposition] = {}

    # ---------- 校准 ----------

    def calibration(self, refresh: bool = False) -> CalibratedBasis:
        """
        异常：
        - CalibrationError：搜索失败
        """
        if self._basis is None or refresh:
            calibrator = Calibrator(self.config.calibration_candidate_limit)
            self._basis = calibrator.load_or_calibrate(self.config.calibration_path, refresh=refresh)
            self._decompositions = {k: v for k, v in self._decompositions.items() if not self.catalog.get_spec(k).needs_calibration}
        return self._basis

    # ---------- 分解 ----------

    def generators(self, spec: GradingSpec) -> list[tuple[Operator, list[FieldElement]]]:
        basis = self.calibration() if spec.needs_calibration else None
        return [
            (self.autos.operator_for(desc, basis), self.autos.candidate_eigenvalues(desc))
            for desc in spec.generators
        ]

    def decompose(self, grading_id: str) -> LabeledDecomposition:
        """
        目录分次的同时对角化（按 id 缓存）

        异常：
        - UnknownGradingError / CommutationError / SplitError / CalibrationError
        """
        spec = self.catalog.get_spec(grading_id)
        if spec.id not in self._decompositions:
            logger.info(f"{spec.id}: 对角化 {', '.join(g.label() for g in spec.generators)}")
            self._decompositions[spec.id] = self.diagonalizer.simultaneous_diagonalize(self.generators(spec))
        return self._decompositions[spec.id]

    # ---------- 认证 ----------

    def _golden(self, spec: GradingSpec):
        basis = self.calibration() if spec.basis == "calibrated" else None
        return self.catalog.golden_components(spec.id, basis)

    def _report(self, spec: GradingSpec, d: LabeledDecomposition) -> GradingReport:
        report = self.checker.report(
            spec.id,
            d,
            expected_type=spec.expected_type_tuple(),
            expected_group=spec.expected_group,
            golden=self._golden(spec),
            conjugation=spec.basis == "calibrated",
        )
        if spec.mad_label:
            report.notes.append(f"MAD {spec.mad_label}")
        if spec.heading_group is not None:
            report.notes.append(f"标题群 {spec.heading_group} ≠ {spec.expected_group}: {spec.group_note}")
        report.notes.extend(f"{c.label}: {c.note}" for c in spec.golden_components if c.note)
        return report

    def verify(self, grading_id: str) -> GradingReport:
        spec = self.catalog.get_spec(grading_id)
        return self._report(spec, self.decompose(spec.id))

    def verify_many(self, ids: Sequence[str], jobs: Optional[int] = None) -> list[GradingReport]:
        """
        逐个或多进程认证，结果按 ids 顺序返回
        """
        jobs = jobs or self.config.jobs
        specs = [self.catalog.get_spec(i) for i in ids]
        if jobs <= 1 or len(specs) <= 1:
            return [self.verify(s.id) for s in specs]
        payload = None
        if any(s.needs_calibration for s in specs):
            payload = self.calibration().to_record().model_dump()
        config = self.config.model_dump()
        results: dict[str, GradingReport] = {}
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            future_to_id = {executor.submit(_verify_worker, s.id, config, payload): s.id for s in specs}
            for future in as_completed(future_to_id):
                results[future_to_id[future]] = future.result()
        return [results[s.id] for s in specs]

    def compare(self, first: str, second: str) -> CompareResult:
        a, b = self.decompose(first), self.decompose(second)
        return CompareResult(
            self.catalog.get_spec(first).id,
            self.catalog.get_spec(second).id,
            self.checker.refines(a, b),
            self.checker.refines(b, a),
        )

    # ---------- 导出 / 导入 ----------

    def export(self, grading_id: str) -> dict:
        spec = self.catalog.get_spec(grading_id)
        d = self.decompose(spec.id)
        payload = ExportedGrading(
            id=spec.id,
            group=self.checker.universal_group(d),
            type=list(self.checker.grading_type(d)),
            generators=d.kinds,
            components=[
                ExportedComponent(
                    label=[_fe(x) for x in part.label],
                    basis=[[_fe(x) for x in v] for v in part.subspace.basis],
                )
                for part in d.parts
            ],
        )
        return payload.model_dump(mode="json")

    def import_decomposition(self, payload: dict) -> LabeledDecomposition:
        """
        异常：
        - pydantic.ValidationError：结构不合法
        - ValueError：向量不是 28 维或标签重复
        """
        data = ExportedGrading.model_validate(payload)
        parts = []
        for comp in data.components:
            label = tuple(FieldElement.from_strings(x) for x in comp.label)
            vectors = [[FieldElement.from_strings(x) for x in v] for v in comp.basis]
            if any(len(v) != DIM for v in vectors):
                raise ValueError(f"分量向量必须是 {DIM} 维")
            parts.append((label, vectors))
        return LabeledDecomposition.from_parts(parts, kinds=data.generators)

    def verify_payload(self, payload: dict) -> GradingReport:
        """
        重新认证导出的分解；id 在目录中时同时对照期望值与表中分量
        """
        d = self.import_decomposition(payload)
        grading_id = str(payload.get("id", ""))
        if grading_id.lower() in self.catalog.ids():
            return self._report(self.catalog.get_spec(grading_id), d)
        return self.checker.report(grading_id or "imported", d)


def _verify_worker(grading_id: str, config: dict, payload: Optional[dict]) -> GradingReport:
    basis = Calibrator().from_payload(payload) if payload else None
    return GradingPipeline(Config.model_validate(config), basis).verify(grading_id)


__all__ = ["GradingPipeline", "CompareResult", "ExportedGrading", "ExportedComponent"]
