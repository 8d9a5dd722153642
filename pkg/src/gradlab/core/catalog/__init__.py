"""
分次目录
效果: 读取 data/ 下十四个分次的 JSON 描述，给出生成元、期望类型/群与表中分量

目录方法
    Catalog.ids: 全部分次 id（q1..q14）
    Catalog.get_spec: 按 id 取 GradingSpec
    Catalog.golden_components: 把表中分量的张成解析为子空间

功能说明:
- 数据随包发布，通过 importlib.resources 读取
- 张成写成人读记号：b35 表示 b_{3,5}，B13 表示校准基第 13 个向量
- basis 为 calibrated 的分次需要传入 CalibratedBasis
"""
import json
from functools import lru_cache
from importlib import resources
from typing import Literal, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, Field, model_validator

from ...config import GRADING_IDS
from ...unit.linalg import Subspace, Vector, zero_vector
from ...unit.notation import parse_combination, parse_scalar
from ..autos import GeneratorDescriptor, MissingCalibrationError
from ..calibrate.basis import CalibratedBasis
from ..diag import Label
from ..gradecheck import GroupStructure
from ..liealg import DIM, INDEX


class UnknownGradingError(KeyError):
    """目录中没有该 id"""

    def __init__(self, grading_id: str):
        super().__init__(grading_id)
        self.grading_id = grading_id

    def __str__(self) -> str:
        return f"未知分次 {self.grading_id!r}，可用: {', '.join(GRADING_IDS)}"


class GoldenComponent(BaseModel):
    """
    表中的一个分量

    字段：
    - label: 特征值标签（记号字符串）
    - span: 张成向量（线性组合记号）
    - note: 录入说明
    """

    label: list[str]
    span: list[str] = Field(min_length=1)
    note: Optional[str] = None

    def label_value(self) -> Label:
        return tuple(parse_scalar(v) for v in self.label)


class GradingSpec(BaseModel):
    """
    一个分次的完整描述

    说明：
    - expected_group 是生成元与分量表实际决定的群
    - 标题里写的群与之不符时记在 heading_group，原因写在 group_note
    """

    id: str
    title: str = ""
    mad_label: Optional[str] = None
    group_annotation: str = ""
    generators: list[GeneratorDescriptor] = Field(min_length=1)
    expected_type: list[int]
    expected_group: GroupStructure
    heading_group: Optional[GroupStructure] = None
    group_note: Optional[str] = None
    basis: Literal["standard", "calibrated"] = "standard"
    golden_components: list[GoldenComponent] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_consistency(self) -> "GradingSpec":
        total = sum((k + 1) * n for k, n in enumerate(self.expected_type))
        if total != DIM:
            raise ValueError(f"{self.id}: 期望类型 {self.expected_type} 的总维数 {total} ≠ {DIM}")
        arity = len(self.generators)
        for comp in self.golden_components:
            if len(comp.label) != arity:
                raise ValueError(f"{self.id}: 标签 {comp.label} 的长度与生成元个数 {arity} 不符")
        if self.heading_group is not None and not self.group_note:
            raise ValueError(f"{self.id}: heading_group 与 expected_group 不同时必须写明 group_note")
        return self

    @property
    def needs_calibration(self) -> bool:
        return self.basis == "calibrated" or any(g.family in ("H1", "H2", "t") for g in self.generators)

    def expected_type_tuple(self) -> tuple[int, ...]:
        return tuple(self.expected_type)


def _span_vector(text: str, basis: Optional[CalibratedBasis]) -> Vector:
    """
    把一条线性组合记号转成 b_ij 坐标
    """
    coords = list(zero_vector(DIM))
    for kind, index, coef in parse_combination(text):
        if kind == "b":
            pair = divmod(index, 10)
            if pair not in INDEX:
                raise ValueError(f"b{index} 不是有效的 b_ij")
            coords[INDEX[pair]] = coords[INDEX[pair]] + coef
        else:
            if basis is None:
                raise MissingCalibrationError(f"{text!r} 引用了校准基向量 B{index}")
            if not 1 <= index <= DIM:
                raise ValueError(f"B{index} 超出 1..{DIM}")
            for k, x in enumerate(basis.vector(index)):
                if x:
                    coords[k] = coords[k] + coef * x
    return tuple(coords)


@lru_cache(maxsize=None)
def _load_spec(grading_id: str) -> GradingSpec:
    source = resources.files(__package__).joinpath("data", f"{grading_id}.json")
    data = json.loads(source.read_text(encoding="utf-8"))
    spec = GradingSpec.model_validate(data)
    logger.debug(f"载入分次 {grading_id}: {len(spec.generators)} 个生成元, {len(spec.golden_components)} 个表中分量")
    return spec


class Catalog:
    """
    分次目录

    使用方式（典型）：
    - Catalog().get_spec("q5").generators
    - Catalog().golden_components("q12", basis)
    """

    def ids(self) -> list[str]:
        return list(GRADING_IDS)

    def get_spec(self, grading_id: str) -> GradingSpec:
        """
        异常：
        - UnknownGradingError：id 不在 q1..q14 中
        """
        key = grading_id.strip().lower()
        if key not in GRADING_IDS:
            raise UnknownGradingError(grading_id)
        return _load_spec(key)

    def specs(self, ids: Optional[Sequence[str]] = None) -> list[GradingSpec]:
        return [self.get_spec(i) for i in (ids or GRADING_IDS)]

    def golden_components(
        self,
        grading_id: str,
        basis: Optional[CalibratedBasis] = None,
    ) -> list[tuple[Label, Subspace]]:
        """
        表中分量

        参数：
        - grading_id: str
        - basis: CalibratedBasis | None
          basis 为 calibrated 的分次必须提供

        返回：
        - list[tuple[Label, Subspace]]

        异常：
        - MissingCalibrationError：需要校准基但未提供
        """
        spec = self.get_spec(grading_id)
        if spec.basis == "calibrated" and basis is None:
            raise MissingCalibrationError(f"{spec.id} 的表中分量以校准基给出")
        out = []
        for comp in spec.golden_components:
            vectors = [_span_vector(text, basis) for text in comp.span]
            out.append((comp.label_value(), Subspace.span(vectors, DIM)))
        return out


__all__ = [
    "Catalog",
    "GradingSpec",
    "GoldenComponent",
    "UnknownGradingError",
    "GRADING_IDS",
]
