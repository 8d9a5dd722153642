"""
同时对角化
效果: 在一组两两交换的半单算子下，把 o(8,C) 分解为带特征值标签的分量

分解方法
    Diagonalizer.split_part: 单个不变子空间在一个算子下按候选特征值拆分
    Diagonalizer.split_by_operator: 对一组分量逐个拆分
    Diagonalizer.simultaneous_diagonalize: 依次用全部生成元拆分，标签为特征值元组

数据类型
    GradingPart: (标签, 子空间)
    LabeledDecomposition: 分量列表 + 生成元信息（part / dims / merge / from_parts）

功能说明:
- 特征值来自候选集枚举，拆分后各子维数之和必须等于原维数，否则报 SplitError
- 子空间始终为 RREF 基，输出顺序按标签排序，与拆分顺序无关
"""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from loguru import logger

from ...unit.field import FieldElement
from ...unit.linalg import Matrix, Subspace, kernel_basis
from ..autos import GeneratorKind, Operator
from ..liealg import DIM

Label = tuple[FieldElement, ...]


class SplitError(ValueError):
    """
    维数和检查失败：算子在该分量上不半单，或候选集漏掉了特征值
    """

    def __init__(self, message: str, part: Optional[Subspace] = None, found: Sequence[int] = ()):
        super().__init__(message)
        self.part = part
        self.found = list(found)


class CommutationError(ValueError):
    """
    生成元不交换
    """

    def __init__(self, message: str, pair: tuple[int, int] = (-1, -1)):
        super().__init__(message)
        self.pair = pair


def label_key(label: Label) -> tuple:
    return tuple(v.sort_key() for v in label)


def label_text(label: Label) -> str:
    return "(" + ", ".join(v.to_label() for v in label) + ")"


@dataclass(frozen=True)
class GradingPart:
    label: Label
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


class LabeledDecomposition:
    """
    带标签的分解

    参数：
    - parts: Iterable[GradingPart]
    - generators: Sequence[Operator]
      可为空（例如从 JSON 重新导入时）
    - kinds: Sequence[GeneratorKind] | None
      缺省时从生成元的 descriptor 读取

    异常：
    - ValueError：标签重复、标签长度不一致或环境维数不是 28
    """

    def __init__(
        self,
        parts: Iterable[GradingPart],
        generators: Sequence[Operator] = (),
        kinds: Optional[Sequence[GeneratorKind]] = None,
    ):
        ordered = sorted(parts, key=lambda p: label_key(p.label))
        labels = [p.label for p in ordered]
        if len(set(labels)) != len(labels):
            raise ValueError("分解中存在重复标签")
        if len({len(l) for l in labels}) > 1:
            raise ValueError("标签长度不一致")
        for p in ordered:
            if p.subspace.ambient_dim != DIM:
                raise ValueError(f"分量环境维数 {p.subspace.ambient_dim} ≠ {DIM}")
        self.parts: list[GradingPart] = ordered
        self.generators: list[Operator] = list(generators)
        if kinds is None:
            kinds = [g.descriptor.generator_kind() for g in self.generators if g.descriptor is not None]
            if len(kinds) != len(self.generators):
                kinds = []
        self.kinds: list[GeneratorKind] = list(kinds)

    @classmethod
    def from_parts(
        cls,
        parts: Iterable[tuple[Label, Iterable[Sequence]]],
        kinds: Optional[Sequence[GeneratorKind]] = None,
    ) -> "LabeledDecomposition":
        """
        由 (标签, 向量组) 重建分解（向量组会被规范为 RREF）
        """
        built = [GradingPart(tuple(label), Subspace.span(vectors, DIM)) for label, vectors in parts]
        return cls(built, kinds=kinds)

    @property
    def arity(self) -> int:
        return len(self.parts[0].label) if self.parts else 0

    def labels(self) -> list[Label]:
        return [p.label for p in self.parts]

    def part(self, label: Sequence) -> Optional[Subspace]:
        """
        按标签取分量，不存在返回 None
        """
        label = tuple(FieldElement.coerce(v) for v in label)
        for p in self.parts:
            if p.label == label:
                return p.subspace
        return None

    def dims(self) -> list[int]:
        return [p.dim for p in self.parts]

    def total_dim(self) -> int:
        return sum(self.dims())

    def merge(self, labels: Sequence[Label]) -> "LabeledDecomposition":
        """
        把若干分量合并为一个（保留第一个标签），得到一个粗化

        异常：
        - KeyError：某个标签不存在
        """
        wanted = [tuple(FieldElement.coerce(v) for v in l) for l in labels]
        chosen = []
        for label in wanted:
            space = self.part(label)
            if space is None:
                raise KeyError(label_text(label))
            chosen.append(space)
        merged = chosen[0]
        for space in chosen[1:]:
            merged = merged.sum(space)
        rest = [p for p in self.parts if p.label not in wanted]
        return LabeledDecomposition(rest + [GradingPart(wanted[0], merged)], self.generators, self.kinds)

    def conjugate(self) -> "LabeledDecomposition":
        """
        标签与基向量逐元复共轭
        """
        parts = [
            GradingPart(tuple(v.conjugate() for v in p.label), p.subspace.map(lambda x: x.conjugate()))
            for p in self.parts
        ]
        return LabeledDecomposition(parts, [g.conjugate() for g in self.generators], self.kinds)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"LabeledDecomposition(parts={len(self.parts)}, dims={sorted(self.dims())})"


class Diagonalizer:
    """
    同时对角化引擎
    """

    def split_part(
        self,
        part: Subspace,
        A: Operator,
        candidates: Sequence[FieldElement],
    ) -> list[tuple[FieldElement, Subspace]]:
        """
        在分量 V 上按 ker(A − λ)|_V 拆分

        参数：
        - part: Subspace
          必须 A-不变
        - A: Operator
        - candidates: Sequence[FieldElement]

        返回：
        - list[tuple[FieldElement, Subspace]]：非零特征子空间，按候选顺序

        异常：
        - SplitError：part 不是 A-不变，或子维数之和不等于 dim V
        """
        d = part.dim
        images = [A.apply(v) for v in part.basis]
        for img in images:
            if not part.contains(img):
                raise SplitError("分量不是算子不变子空间", part, [])
        # RREF 基下的坐标即主元位置的分量
        restricted = Matrix(
            [[images[i][part.pivots[j]] for i in range(d)] for j in range(d)],
            cols=d,
        )
        out: list[tuple[FieldElement, Subspace]] = []
        found = 0
        for lam in candidates:
            shifted = restricted - Matrix.identity(d).scale(lam)
            kernel = kernel_basis(shifted)
            if kernel.dim:
                vectors = [part.combine(coords) for coords in kernel.basis]
                out.append((lam, Subspace.span(vectors, part.ambient_dim)))
                found += kernel.dim
                if found == d:
                    break
        if found != d:
            dims = [s.dim for _, s in out]
            logger.error(f"拆分失败: dim {d}，找到 {dims}")
            raise SplitError(f"维数和 {found} ≠ {d}：算子不半单或候选特征值不全", part, dims)
        return out

    def split_by_operator(
        self,
        parts: Sequence[Subspace],
        A: Operator,
        candidates: Sequence[FieldElement],
    ) -> list[tuple[FieldElement, Subspace]]:
        """
        逐个分量拆分，结果按分量顺序拼接
        """
        out = []
        for part in parts:
            out.extend(self.split_part(part, A, candidates))
        return out

    def check_commuting(self, operators: Sequence[Operator]) -> None:
        """
        异常：
        - CommutationError：第一对不交换的生成元
        """
        for i in range(len(operators)):
            for j in range(i + 1, len(operators)):
                if not operators[i].commutes_with(operators[j]):
                    raise CommutationError(f"生成元 {i + 1} 与 {j + 1} 不交换", (i, j))

    def simultaneous_diagonalize(
        self,
        gens: Sequence[tuple[Operator, Sequence[FieldElement]]],
    ) -> LabeledDecomposition:
        """
        依次按每个生成元拆分

        参数：
        - gens: Sequence[tuple[Operator, Sequence[FieldElement]]]
          (算子, 候选特征值)

        返回：
        - LabeledDecomposition：标签为按生成元顺序的特征值元组

        异常：
        - CommutationError / SplitError
        """
        operators = [op for op, _ in gens]
        self.check_commuting(operators)
        current: list[tuple[Label, Subspace]] = [((), Subspace.full(DIM))]
        for k, (op, candidates) in enumerate(gens):
            refined = []
            for label, space in current:
                for lam, sub in self.split_part(space, op, candidates):
                    refined.append((label + (lam,), sub))
            current = refined
            name = op.descriptor.label() if op.descriptor is not None else str(k + 1)
            logger.debug(f"生成元 {name} 拆分后共 {len(current)} 个分量")
        return LabeledDecomposition([GradingPart(l, s) for l, s in current], operators)


__all__ = [
    "Diagonalizer",
    "LabeledDecomposition",
    "GradingPart",
    "SplitError",
    "CommutationError",
    "Label",
    "label_key",
    "label_text",
]
