"""
根基 B 上的表算子与环面算子

表算子
    H1_TERMS / H2_TERMS: H₁、H₂ 的 φ 项 (i, j, 系数)
    BasisOperatorTable: 三元组 (目标, 来源, 系数)，A(B_来源) = Σ 系数·B_目标

环面算子
    MONOMIAL_EXPONENTS: 位置 5..28 的单项式指数（x, y, z, u）
    t_{x,y,z,u}: 在 B 上对角，Cartan 位置 1..4 不动

功能说明:
- 项 (i, j, c) 的作用取 B_i ↦ c·B_j（与目录中 q12–q14 的分量表一致，见 DESIGN.md）
- 算子在标准坐标下为 B·T·B⁻¹
"""
from typing import Iterable, Optional, Sequence

from ...unit.field import FieldElement, ONE, ZERO
from ...unit.linalg import Matrix
from ..liealg import DIM
from .operator import Operator

# H₁ = Σ c·φ_{i,j}
H1_TERMS: tuple[tuple[int, int, int], ...] = (
    (1, 1, -1), (1, 2, -1), (1, 3, -1), (1, 4, -1),
    (2, 4, 1), (3, 1, 1), (3, 2, 1), (4, 2, -1), (4, 4, -1),
    (5, 27, 1), (6, 8, 1), (7, 9, 1), (8, 25, 1), (9, 22, -1), (10, 19, -1),
    (11, 12, 1), (12, 26, 1), (13, 18, 1), (14, 23, 1), (15, 28, -1), (16, 5, -1),
    (17, 15, 1), (18, 20, 1), (19, 21, 1), (20, 13, 1), (21, 10, -1), (22, 7, -1),
    (23, 24, 1), (24, 14, 1), (25, 6, 1), (26, 11, 1), (27, 16, -1), (28, 17, -1),
)

H2_TERMS: tuple[tuple[int, int, int], ...] = (
    (1, 1, -1), (1, 2, -2), (1, 3, -1), (1, 4, -1),
    (2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 3, -1), (4, 1, 1),
    (5, 26, 1), (6, 16, 1), (7, 19, 1), (8, 5, 1), (9, 21, -1), (10, 22, 1),
    (11, 13, 1), (12, 18, 1), (13, 15, -1), (14, 8, 1), (15, 23, 1), (16, 12, 1),
    (17, 14, 1), (18, 28, 1), (19, 7, 1), (20, 17, 1), (21, 9, -1), (22, 10, 1),
    (23, 25, 1), (24, 6, 1), (25, 27, -1), (26, 20, 1), (27, 11, 1), (28, 24, 1),
)

# 位置 5..16 的指数，17..28 为其相反数
_POSITIVE_EXPONENTS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 0),  # x
    (0, 1, 0, 0),  # y
    (0, 0, 1, 0),  # z
    (0, 0, 0, 1),  # u
    (1, 1, 0, 0),  # xy
    (1, 1, 1, 0),  # xyz
    (0, 1, 1, 0),  # yz
    (1, 1, 0, 1),  # uxy
    (0, 1, 0, 1),  # uy
    (1, 2, 1, 1),  # uxy²z
    (1, 1, 1, 1),  # uxyz
    (0, 1, 1, 1),  # uyz
)

CARTAN_POSITIONS = 4

MONOMIAL_EXPONENTS: dict[int, tuple[int, int, int, int]] = {
    **{k + 5: e for k, e in enumerate(_POSITIVE_EXPONENTS)},
    **{k + 17: tuple(-x for x in e) for k, e in enumerate(_POSITIVE_EXPONENTS)},
}

POSITION_OF_EXPONENT: dict[tuple[int, int, int, int], int] = {e: p for p, e in MONOMIAL_EXPONENTS.items()}


class MissingCalibrationError(RuntimeError):
    """没有可用的根基校准"""


class BasisOperatorTable:
    """
    28 元抽象基上的稀疏算子表

    参数：
    - triples: Iterable[tuple[int, int, FieldElement]]
      (目标, 来源, 系数)，下标 1..28

    异常：
    - ValueError：下标越界或同一 (目标, 来源) 出现两次
    """

    __slots__ = ("name", "triples")

    def __init__(self, triples: Iterable[tuple[int, int, object]], name: str = ""):
        seen = set()
        cleaned = []
        for target, source, coeff in triples:
            if not (1 <= target <= DIM and 1 <= source <= DIM):
                raise ValueError(f"表项下标越界: ({target},{source})")
            if (target, source) in seen:
                raise ValueError(f"表项重复: ({target},{source})")
            seen.add((target, source))
            cleaned.append((target, source, FieldElement.coerce(coeff)))
        self.name = name
        self.triples: tuple[tuple[int, int, FieldElement], ...] = tuple(sorted(cleaned, key=lambda t: (t[1], t[0])))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, int]], name: str = "") -> "BasisOperatorTable":
        """
        由 φ 项构造：项 (i, j, c) 记为 B_i ↦ c·B_j
        """
        return cls(((j, i, c) for i, j, c in terms), name)

    @classmethod
    def identity(cls) -> "BasisOperatorTable":
        return cls(((k, k, 1) for k in range(1, DIM + 1)), "id")

    def to_matrix(self) -> Matrix:
        rows = [[ZERO] * DIM for _ in range(DIM)]
        for target, source, coeff in self.triples:
            rows[target - 1][source - 1] = coeff
        return Matrix(rows, cols=DIM)

    def images(self) -> dict[int, list[tuple[int, FieldElement]]]:
        """
        来源 → [(目标, 系数)]
        """
        out: dict[int, list[tuple[int, FieldElement]]] = {}
        for target, source, coeff in self.triples:
            out.setdefault(source, []).append((target, coeff))
        return out

    def __len__(self) -> int:
        return len(self.triples)


H1_TABLE = BasisOperatorTable.from_terms(H1_TERMS, "H1")
H2_TABLE = BasisOperatorTable.from_terms(H2_TERMS, "H2")
TABLES = {"H1": H1_TABLE, "H2": H2_TABLE}


def monomial(exponent: Sequence[int], values: Sequence[FieldElement]) -> FieldElement:
    out = ONE
    for e, v in zip(exponent, values):
        if e:
            out = out * v ** e
    return out


def torus_diagonal(values: Sequence[FieldElement]) -> list[FieldElement]:
    """
    t_{x,y,z,u} 在 B 上的 28 个对角元
    """
    return [ONE] * CARTAN_POSITIONS + [monomial(MONOMIAL_EXPONENTS[p], values) for p in range(5, DIM + 1)]


class AutosTableMixin:
    """
    表算子与环面算子
    """

    def _basis_matrices(self, basis) -> tuple[Matrix, Matrix]:
        if basis is None:
            raise MissingCalibrationError("缺少根基校准，无法构造表算子")
        return basis.matrix, basis.inverse

    def operator_from_table(self, table: BasisOperatorTable, basis, descriptor=None) -> Operator:
        """
        把 B 上的表算子换到 b_ij 坐标

        参数：
        - table: BasisOperatorTable
        - basis: CalibratedBasis | None

        返回：
        - Operator：B·T·B⁻¹

        异常：
        - MissingCalibrationError：basis 为 None
        """
        bmat, binv = self._basis_matrices(basis)
        return Operator(bmat @ table.to_matrix() @ binv, descriptor)

    def torus_operator(self, x, y, z, u, basis, descriptor=None) -> Operator:
        """
        环面算子 t_{x,y,z,u}

        异常：
        - ValueError：参数为零
        - MissingCalibrationError：basis 为 None
        """
        values = [FieldElement.coerce(v) for v in (x, y, z, u)]
        if any(v.is_zero() for v in values):
            raise ValueError("t_{x,y,z,u} 的参数不能为 0")
        bmat, binv = self._basis_matrices(basis)
        diagonal = torus_diagonal(values)
        scaled = Matrix([[a * d if a else a for a, d in zip(row, diagonal)] for row in bmat.data], cols=DIM)
        return Operator(scaled @ binv, descriptor)


def table_position_map(table: BasisOperatorTable) -> Optional[dict[int, tuple[int, FieldElement]]]:
    """
    根位置上的带号置换：来源 → (目标, 系数)；某根位置不是单项像时返回 None
    """
    images = table.images()
    out = {}
    for source in range(CARTAN_POSITIONS + 1, DIM + 1):
        terms = images.get(source, [])
        if len(terms) != 1 or terms[0][0] <= CARTAN_POSITIONS:
            return None
        out[source] = terms[0]
    return out


def cartan_block(table: BasisOperatorTable) -> Matrix:
    """
    表在位置 1..4 上的 4×4 块（列为像）

    异常：
    - ValueError：Cartan 位置的像落到根位置
    """
    rows = [[ZERO] * CARTAN_POSITIONS for _ in range(CARTAN_POSITIONS)]
    for target, source, coeff in table.triples:
        if source <= CARTAN_POSITIONS:
            if target > CARTAN_POSITIONS:
                raise ValueError(f"{table.name}: Cartan 位置 {source} 的像含根位置 {target}")
            rows[target - 1][source - 1] = coeff
    return Matrix(rows, cols=CARTAN_POSITIONS)
