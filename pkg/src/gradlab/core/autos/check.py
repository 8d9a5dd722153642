"""
自同构判定与生成元装配
"""
from typing import Optional

from loguru import logger

from ...unit.field import FieldElement, ONE, ZERO, roots_of_unity
from ..liealg import DIM, LieAlgebra, pair_name
from .descriptor import PARAMETRIC, GeneratorDescriptor
from .operator import Operator
from .tables import TABLES

_TORUS_SPREAD = 2


class AutosCheckMixin:
    """
    自同构判定、候选特征值、按描述构造算子
    """

    _algebra = LieAlgebra()

    def _defects(self, A: Operator, limit: Optional[int]) -> list[tuple[int, int]]:
        algebra = self._algebra
        table = algebra.build_structure_constants().table
        columns = A.matrix.columns()
        defects = []
        for p in range(DIM):
            for q in range(p + 1, DIM):
                lhs = [ZERO] * DIM
                for r, sign in table[p][q]:
                    col = columns[r]
                    for k in range(DIM):
                        if col[k]:
                            lhs[k] = lhs[k] + col[k] if sign > 0 else lhs[k] - col[k]
                rhs = algebra.bracket_coords(columns[p], columns[q])
                if tuple(lhs) != rhs:
                    defects.append((p, q))
                    if limit is not None and len(defects) >= limit:
                        return defects
        return defects

    def is_automorphism(self, A: Operator) -> bool:
        """
        A 可逆且对全部 378 个基元对保持括号

        返回：
        - bool
        """
        if A.matrix.rank() != DIM:
            return False
        return not self._defects(A, limit=1)

    def automorphism_defects(self, A: Operator, limit: Optional[int] = 10) -> list[str]:
        """
        列出不成立的括号方程 A[b_p,b_q] = [Ab_p, Ab_q]

        参数：
        - limit: int | None
          最多列出多少条，None 为全部

        返回：
        - list[str]：如 "A[b12,b13] ≠ [A b12, A b13]"，不可逆时首条为 "not invertible"
        """
        out = []
        if A.matrix.rank() != DIM:
            out.append("not invertible")
        for p, q in self._defects(A, limit):
            a, b = pair_name(p), pair_name(q)
            out.append(f"A[{a},{b}] ≠ [A {a}, A {b}]")
        return out

    def candidate_eigenvalues(self, descriptor: GeneratorDescriptor) -> list[FieldElement]:
        """
        谱的有限超集

        说明：
        - 参数族 Ad X(a)：{aᵏ : |k| ≤ 2}
        - F_i：{±1}
        - G_i、H₁、H₂ 及单位根参数的 t：全部 12 次单位根
        - 带有理底数 p 的 t：{pᵏ : |k| ≤ 2}
        - 是否完备由下游维数和检查认定

        异常：
        - ValueError：无法识别的描述
        """
        if not isinstance(descriptor, GeneratorDescriptor):
            raise ValueError(f"未知生成元描述: {descriptor!r}")
        family = descriptor.family
        if family in PARAMETRIC:
            base = descriptor.param_value()
            return self._powers(base ** descriptor.power)
        if family == "F":
            return [-ONE, ONE]
        if family in ("G", "H1", "H2"):
            return roots_of_unity(12)
        if family == "t":
            if descriptor.base is not None:
                return self._powers(FieldElement.from_rational(descriptor.base))
            if all(v.root_of_unity_order() is not None for v in descriptor.torus_values()):
                return roots_of_unity(12)
            raise ValueError(f"t 的参数既无有理底数也不是单位根: {descriptor.label()}")
        raise ValueError(f"未知生成元族: {family!r}")

    @staticmethod
    def _powers(base: FieldElement) -> list[FieldElement]:
        values = []
        for k in range(-_TORUS_SPREAD, _TORUS_SPREAD + 1):
            v = base ** k
            if v not in values:
                values.append(v)
        return sorted(values, key=lambda v: v.sort_key())

    def operator_for(self, descriptor: GeneratorDescriptor, basis=None) -> Operator:
        """
        由描述构造生成元算子

        参数：
        - descriptor: GeneratorDescriptor
        - basis: CalibratedBasis | None
          H₁/H₂/t 需要

        返回：
        - Operator：带 descriptor
        """
        family = descriptor.family
        if family in PARAMETRIC:
            op = self.ad_operator(self.build_matrix(family, descriptor.param_value()))
        elif family == "F":
            op = self.ad_operator(self.build_matrix("fi", descriptor.index))
        elif family == "G":
            op = self.ad_operator(self.build_matrix("gi", descriptor.index))
        elif family in TABLES:
            op = self.operator_from_table(TABLES[family], basis)
        elif family == "t":
            op = self.torus_operator(*descriptor.torus_values(), basis)
        else:
            raise ValueError(f"未知生成元族: {family!r}")
        if descriptor.power != 1:
            op = op.power(descriptor.power)
        logger.debug(f"生成元 {descriptor.label()} 已构造")
        return Operator(op.matrix, descriptor)
