"""
校准根基与缓存记录
"""
import json
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel, Field

from ...unit.field import FieldElement
from ...unit.linalg import Matrix, Vector
from ..liealg import DIM, combination_text, pair_name


class CalibrationError(RuntimeError):
    """
    根基校准失败

    属性：
    - candidate: 失败候选的描述
    - defects: 不成立的括号方程（只有走到认证阶段的候选才有）
    """

    report_limit = 10

    def __init__(self, message: str, candidate: str = "", defects: Sequence[str] = ()):
        super().__init__(message)
        self.candidate = candidate
        self.defects = list(defects)

    def report(self) -> str:
        lines = [str(self)]
        if self.candidate:
            lines.append(f"candidate: {self.candidate}")
        lines.extend(f"  {d}" for d in self.defects[: self.report_limit])
        if len(self.defects) > self.report_limit:
            lines.append(f"  ... {len(self.defects)} in total")
        return "\n".join(lines)


class CalibrationRecord(BaseModel):
    """
    calibration.json 的结构

    字段：
    - vectors: 28 个 B 向量，每个为 28 个域元素（四个 "p/q" 字符串）
    - root_exponents: 位置 5..28 的单项式指数
    - provenance: 简单根（ε 坐标）、缩放因子、候选序号、Cartan 块的取法
    """

    format: int = 1
    vectors: list[list[list[str]]] = Field(min_length=DIM, max_length=DIM)
    root_exponents: dict[int, list[int]] = Field(default_factory=dict)
    provenance: dict = Field(default_factory=dict)


class CalibratedBasis:
    """
    有序、规范化的根基 B

    说明：
    - 位置 1..4 张成 Cartan 子代数，5..28 为根向量
    - matrix 的第 k 列为 B_{k+1} 的 b_ij 坐标
    """

    def __init__(
        self,
        vectors: Sequence[Vector],
        root_exponents: Optional[dict[int, tuple[int, ...]]] = None,
        provenance: Optional[dict] = None,
    ):
        if len(vectors) != DIM or any(len(v) != DIM for v in vectors):
            raise ValueError(f"根基需要 {DIM} 个 {DIM} 维向量")
        self.vectors: tuple[Vector, ...] = tuple(tuple(v) for v in vectors)
        self.root_exponents = dict(root_exponents or {})
        self.provenance = dict(provenance or {})
        self._matrix: Optional[Matrix] = None
        self._inverse: Optional[Matrix] = None

    @property
    def matrix(self) -> Matrix:
        if self._matrix is None:
            self._matrix = Matrix.from_columns(self.vectors, rows=DIM)
        return self._matrix

    @property
    def inverse(self) -> Matrix:
        if self._inverse is None:
            self._inverse = self.matrix.inverse()
        return self._inverse

    def vector(self, k: int) -> Vector:
        """
        B_k（1 起始）
        """
        return self.vectors[k - 1]

    def describe(self, k: int) -> str:
        return combination_text(self.vector(k), pair_name)

    def to_record(self) -> CalibrationRecord:
        return CalibrationRecord(
            vectors=[[x.to_strings() for x in v] for v in self.vectors],
            root_exponents={k: list(e) for k, e in self.root_exponents.items()},
            provenance=self.provenance,
        )

    @classmethod
    def from_record(cls, record: CalibrationRecord) -> "CalibratedBasis":
        vectors = [[FieldElement.from_strings(x) for x in v] for v in record.vectors]
        exps = {int(k): tuple(e) for k, e in record.root_exponents.items()}
        return cls(vectors, exps, record.provenance)

    def to_json(self) -> str:
        return json.dumps(self.to_record().model_dump(), ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CalibratedBasis":
        return cls.from_record(CalibrationRecord.model_validate_json(text))

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CalibratedBasis):
            return NotImplemented
        return self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)
