"""
李代数 o(8,C)
效果: b_ij 基、坐标、括号与结构常数

基与坐标
    PAIRS / DIM: 28 个基元 b_ij（i<j，按字典序）
    LieElement: 28 维坐标向量，可与 8×8 反对称矩阵互转
    LieAlgebra.basis_b: 取基元 b_ij

括号
    LieAlgebra.build_structure_constants: 结构常数表（由 8×8 交换子一次算出）
    LieAlgebra.bracket: 坐标上的李括号

功能说明:
- b_ij = e_ji − e_ij，作为矩阵 (j,i) 位置为 1、(i,j) 位置为 −1
- 结构常数全局只计算一次，之后只读
"""
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from loguru import logger

from ...unit.field import FieldElement, ONE, ZERO, Scalar
from ...unit.linalg import Matrix, Vector, vec_add, vec_scale, vec_sub, zero_vector

PAIRS: tuple[tuple[int, int], ...] = tuple((i, j) for i in range(1, 9) for j in range(i + 1, 9))
INDEX: dict[tuple[int, int], int] = {pair: k for k, pair in enumerate(PAIRS)}
DIM = len(PAIRS)
SIZE = 8


def pair_name(k: int) -> str:
    i, j = PAIRS[k]
    return f"b{i}{j}"


class LieElement:
    """
    o(8,C) 中的元素，坐标对应 PAIRS 顺序
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Scalar]):
        if len(coords) != DIM:
            raise ValueError(f"李代数元素需要 {DIM} 个坐标，收到 {len(coords)} 个")
        self.coords: Vector = tuple(FieldElement.coerce(c) for c in coords)

    @classmethod
    def zero(cls) -> "LieElement":
        return cls(zero_vector(DIM))

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(vec_add(self.coords, other.coords))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement(vec_sub(self.coords, other.coords))

    def __neg__(self) -> "LieElement":
        return LieElement(vec_scale(-ONE, self.coords))

    def __rmul__(self, c: Scalar) -> "LieElement":
        return LieElement(vec_scale(FieldElement.coerce(c), self.coords))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coords) if c]

    def to_matrix(self) -> Matrix:
        """
        还原为 8×8 反对称矩阵
        """
        rows = [[ZERO] * SIZE for _ in range(SIZE)]
        for k, c in enumerate(self.coords):
            if c:
                i, j = PAIRS[k]
                rows[j - 1][i - 1] = c
                rows[i - 1][j - 1] = -c
        return Matrix(rows, cols=SIZE)

    def to_text(self) -> str:
        return combination_text(self.coords, pair_name)

    def __repr__(self) -> str:
        return f"LieElement({self.to_text()})"


def combination_text(coords: Sequence[FieldElement], name) -> str:
    """
    渲染线性组合，如 "i·b35 - b37"
    """
    terms = []
    for k, c in enumerate(coords):
        if not c:
            continue
        label = c.to_label()
        if label == "1":
            body = name(k)
        elif label == "-1":
            body = "-" + name(k)
        elif c.is_rational() or c.polar() is not None:
            body = f"{label}·{name(k)}"
        else:
            body = f"({label})·{name(k)}"
        terms.append(body)
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


class StructureConstants:
    """
    结构常数：table[p][q] 为 [b_p, b_q] 的稀疏表示 ((r, ±1), ...)
    """

    __slots__ = ("table",)

    def __init__(self, table: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]):
        self.table = table

    def entry(self, p: int, q: int) -> tuple[tuple[int, int], ...]:
        return self.table[p][q]

    def vector(self, p: int, q: int) -> Vector:
        out = [ZERO] * DIM
        for r, sign in self.table[p][q]:
            out[r] = ONE if sign > 0 else -ONE
        return tuple(out)


def _commutator_coords(p: int, q: int) -> tuple[tuple[int, int], ...]:
    """
    在整数上计算 [b_p, b_q] 的坐标
    """

    def basis_matrix(k: int) -> list[list[int]]:
        i, j = PAIRS[k]
        m = [[0] * SIZE for _ in range(SIZE)]
        m[j - 1][i - 1] = 1
        m[i - 1][j - 1] = -1
        return m

    def mul(a, b):
        return [[sum(a[r][t] * b[t][c] for t in range(SIZE)) for c in range(SIZE)] for r in range(SIZE)]

    x, y = basis_matrix(p), basis_matrix(q)
    xy, yx = mul(x, y), mul(y, x)
    out = []
    for r, (i, j) in enumerate(PAIRS):
        c = xy[j - 1][i - 1] - yx[j - 1][i - 1]
        if c:
            out.append((r, c))
    return tuple(out)


@lru_cache(maxsize=1)
def _structure_constants() -> StructureConstants:
    logger.debug("计算 o(8,C) 结构常数")
    table = tuple(tuple(_commutator_coords(p, q) for q in range(DIM)) for p in range(DIM))
    return StructureConstants(table)


class LieAlgebra:
    """
    o(8,C) 的坐标模型

    说明：
    - 多个实例共享同一张结构常数表
    """

    dim = DIM

    def basis_b(self, i: int, j: int) -> LieElement:
        """
        基元 b_ij

        参数：
        - i, j: int
          1 ≤ i < j ≤ 8

        异常：
        - ValueError：下标越界或 i ≥ j
        """
        if not (1 <= i <= SIZE and 1 <= j <= SIZE):
            raise ValueError(f"下标越界: ({i},{j})")
        if i >= j:
            raise ValueError(f"要求 i < j: ({i},{j})")
        coords = [ZERO] * DIM
        coords[INDEX[(i, j)]] = ONE
        return LieElement(coords)

    def basis(self) -> list[LieElement]:
        return [self.basis_b(i, j) for i, j in PAIRS]

    def build_structure_constants(self) -> StructureConstants:
        return _structure_constants()

    def bracket_coords(self, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> Vector:
        """
        坐标上的李括号（跳过零坐标）
        """
        table = _structure_constants().table
        xs = [(p, a) for p, a in enumerate(x) if a]
        ys = [(q, b) for q, b in enumerate(y) if b]
        acc = [ZERO] * DIM
        for p, a in xs:
            row = table[p]
            for q, b in ys:
                entry = row[q]
                if entry:
                    ab = a * b
                    for r, sign in entry:
                        acc[r] = acc[r] + ab if sign > 0 else acc[r] - ab
        return tuple(acc)

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        return LieElement(self.bracket_coords(x.coords, y.coords))

    def from_matrix(self, m: Matrix) -> LieElement:
        """
        8×8 反对称矩阵 → 坐标

        异常：
        - ValueError：形状不对或不反对称
        """
        if (m.rows, m.cols) != (SIZE, SIZE):
            raise ValueError(f"需要 8×8 矩阵，收到 {m.rows}x{m.cols}")
        if not (m + m.transpose()).is_zero():
            raise ValueError("矩阵不是反对称的")
        return LieElement([m[j - 1, i - 1] for i, j in PAIRS])

    def combination(self, terms: Iterable[tuple[int, int, FieldElement]]) -> LieElement:
        """
        由 (i, j, 系数) 组装元素
        """
        coords = [ZERO] * DIM
        for i, j, c in terms:
            k = INDEX.get((i, j))
            if k is None:
                raise ValueError(f"无效下标: b{i}{j}")
            coords[k] = coords[k] + c
        return LieElement(coords)

    def find_pair(self, name: str) -> Optional[int]:
        """
        "b35" → 坐标位置；不是合法名字返回 None
        """
        if len(name) != 3 or name[0] != "b" or not name[1:].isdigit():
            return None
        return INDEX.get((int(name[1]), int(name[2])))


__all__ = [
    "PAIRS",
    "INDEX",
    "DIM",
    "LieElement",
    "LieAlgebra",
    "StructureConstants",
    "pair_name",
    "combination_text",
]
