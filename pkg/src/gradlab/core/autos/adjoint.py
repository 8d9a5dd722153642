"""
伴随作用 Ad P(x) = P⁻¹xP = PᵗxP
"""
from ...unit.field import ZERO
from ...unit.linalg import Matrix
from ..liealg import DIM, PAIRS
from .operator import Operator, OrthoMatrix


class AutosAdjointMixin:
    """
    Ad 算子构造
    """

    def ad_operator(self, P: OrthoMatrix, descriptor=None) -> Operator:
        """
        正交矩阵的伴随算子

        参数：
        - P: OrthoMatrix

        返回：
        - Operator：第 (m,n) 列为 Pᵗ b_mn P 的坐标

        说明：
        - Pᵗ b_mn P 在 b_ab 上的坐标为 P[m][a]P[n][b] − P[m][b]P[n][a]（2×2 子式）
        - Ad(P)∘Ad(Q) = Ad(QP)
        """
        if not isinstance(P, OrthoMatrix):
            raise ValueError("Ad 只接受正交矩阵")
        rows = [r for r in P.matrix.data]
        columns = []
        for m, n in PAIRS:
            pm, pn = rows[m - 1], rows[n - 1]
            col = []
            for a, b in PAIRS:
                x, y = pm[a - 1], pn[b - 1]
                u, v = pm[b - 1], pn[a - 1]
                value = ZERO
                if x and y:
                    value = x * y
                if u and v:
                    value = value - u * v
                col.append(value)
            columns.append(col)
        return Operator(Matrix.from_columns(columns, rows=DIM), descriptor)
