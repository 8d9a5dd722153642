"""
o(8,C) 的自同构
效果: 构造全部具名自同构，并判定线性算子是否为李代数自同构

具名矩阵（matrices.py）
    build_matrix: g/f/h/p/q/r/s 参数族与 f_i、g_i
伴随作用（adjoint.py）
    ad_operator: Ad P(x) = PᵗxP
表算子（tables.py）
    operator_from_table: H₁、H₂ 经根基 B 换到 b_ij 坐标
    torus_operator: t_{x,y,z,u}
判定（check.py）
    is_automorphism / automorphism_defects / candidate_eigenvalues / operator_for
"""
from .adjoint import AutosAdjointMixin
from .check import AutosCheckMixin
from .descriptor import GeneratorDescriptor, GeneratorKind
from .matrices import G_RELATIONS, G_SIGNS, AutosMatrixMixin
from .operator import Operator, OrthoMatrix
from .tables import (
    H1_TABLE,
    H2_TABLE,
    MONOMIAL_EXPONENTS,
    POSITION_OF_EXPONENT,
    TABLES,
    AutosTableMixin,
    BasisOperatorTable,
    MissingCalibrationError,
    cartan_block,
    table_position_map,
)


class Automorphisms(
    AutosMatrixMixin,
    AutosAdjointMixin,
    AutosTableMixin,
    AutosCheckMixin,
):
    """
    自同构工具类

    使用方式（典型）：
    - Automorphisms().ad_operator(Automorphisms().build_matrix("p", 2))
    - Automorphisms().operator_for(descriptor, basis)
    """


__all__ = [
    "Automorphisms",
    "Operator",
    "OrthoMatrix",
    "GeneratorDescriptor",
    "GeneratorKind",
    "BasisOperatorTable",
    "MissingCalibrationError",
    "H1_TABLE",
    "H2_TABLE",
    "TABLES",
    "MONOMIAL_EXPONENTS",
    "POSITION_OF_EXPONENT",
    "G_SIGNS",
    "G_RELATIONS",
    "cartan_block",
    "table_position_map",
]
