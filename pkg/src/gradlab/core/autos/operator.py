"""
算子类型
"""
from typing import Optional, Sequence

from ...unit.field import FieldElement
from ...unit.linalg import Matrix, Vector
from ..liealg import DIM


class Operator:
    """
    作用在 o(8,C) 坐标上的 28×28 线性算子

    说明：
    - 第 k 列为基元 b_k 的像
    - 复合约定 (A∘B)(x) = A(B(x))，即 A @ B
    """

    __slots__ = ("matrix", "descriptor")

    MAX_ORDER = 12

    def __init__(self, matrix: Matrix, descriptor=None):
        if (matrix.rows, matrix.cols) != (DIM, DIM):
            raise ValueError(f"算子需要 {DIM}×{DIM} 矩阵，收到 {matrix.rows}x{matrix.cols}")
        self.matrix = matrix
        self.descriptor = descriptor

    @classmethod
    def identity(cls, descriptor=None) -> "Operator":
        return cls(Matrix.identity(DIM), descriptor)

    @classmethod
    def zero(cls) -> "Operator":
        return cls(Matrix.zeros(DIM, DIM))

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        return self.matrix.apply(v)

    __call__ = apply

    def image(self, k: int) -> Vector:
        return self.matrix.column(k)

    def compose(self, other: "Operator") -> "Operator":
        return Operator(self.matrix @ other.matrix)

    __matmul__ = compose

    def power(self, n: int) -> "Operator":
        """
        非负整数次幂（平方求幂）
        """
        if n < 0:
            raise ValueError(f"只支持非负次幂: {n}")
        result = Matrix.identity(DIM)
        base = self.matrix
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return Operator(result)

    def commutes_with(self, other: "Operator") -> bool:
        return self.matrix @ other.matrix == other.matrix @ self.matrix

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def order(self) -> Optional[int]:
        """
        最小的 n ≤ 12 使 Aⁿ = id，不存在返回 None
        """
        current = self.matrix
        for n in range(1, self.MAX_ORDER + 1):
            if current.is_identity():
                return n
            current = current @ self.matrix
        return None

    def conjugate(self) -> "Operator":
        """
        逐元复共轭（ω ↔ ω²）
        """
        return Operator(self.matrix.map(lambda x: x.conjugate()), self.descriptor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        name = self.descriptor.label() if self.descriptor is not None else "?"
        return f"Operator({name})"


class OrthoMatrix:
    """
    8×8 正交矩阵（P·Pᵗ = id 精确成立）

    异常：
    - ValueError：形状不对或不正交
    """

    __slots__ = ("matrix", "name")

    def __init__(self, matrix: Matrix, name: str = ""):
        if (matrix.rows, matrix.cols) != (8, 8):
            raise ValueError(f"需要 8×8 矩阵，收到 {matrix.rows}x{matrix.cols}")
        if not (matrix @ matrix.transpose()).is_identity():
            raise ValueError(f"矩阵 {name or '?'} 不正交")
        self.matrix = matrix
        self.name = name

    def __matmul__(self, other: "OrthoMatrix") -> "OrthoMatrix":
        return OrthoMatrix(self.matrix @ other.matrix, f"{self.name}{other.name}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthoMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __getitem__(self, index: tuple[int, int]) -> FieldElement:
        return self.matrix[index]

    def __repr__(self) -> str:
        return f"OrthoMatrix({self.name})"
