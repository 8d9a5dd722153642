"""
O(8,C) 中的具名矩阵

参数族
    g(a) f(a) h(a) p(a) q(a) r(a) s(a)
    对角部分 ½(a+1/a)，非对角部分 ±(i/2)(a−1/a)，作用在固定的坐标对上

常量矩阵
    f_1 … f_8: 单个 −1 的对角阵
    g_1 … g_14: 九个由 f 的乘积给出，其余五个为置换/带号置换阵

功能说明:
- 非对角项取反对称（k<l 时 (k,l) 为 σ·s，(l,k) 为 −σ·s），保证 P·Pᵗ = id
- σ 的取值见 DESIGN.md（与目录表中的特征值标签一致）
"""
from ...unit.field import FieldElement, I, ONE, ZERO, Scalar
from ...unit.linalg import Matrix
from .operator import OrthoMatrix

# 参数族作用的坐标对与方向 σ
FAMILY_BLOCKS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "g": (-1, ((5, 7), (6, 8))),
    "f": (-1, ((1, 3), (2, 4))),
    "h": (-1, ((1, 5), (2, 6), (3, 7), (4, 8))),
    "p": (1, ((7, 8),)),
    "q": (1, ((5, 6),)),
    "r": (1, ((3, 4),)),
    "s": (1, ((1, 2),)),
}

# g_i 中由 f 乘积给出者：−1 所在位置
G_SIGNS: dict[int, tuple[int, ...]] = {
    1: (1, 2),
    2: (3, 4),
    4: (2, 4, 5, 7),
    5: (1, 3, 5, 7),
    6: (7, 8),
    7: (2, 4, 6, 8),
    9: (1, 2, 5, 6),
    10: (3, 4, 7, 8),
    13: (5, 6, 7, 8),
}

# g_i = f_a f_b ... 的关系表
G_RELATIONS: dict[int, tuple[int, ...]] = {
    1: (8, 7),
    2: (6, 5),
    4: (7, 5, 4, 2),
    5: (8, 6, 4, 2),
    6: (2, 1),
    7: (7, 5, 3, 1),
    9: (8, 7, 4, 3),
    10: (6, 5, 2, 1),
    13: (4, 3, 2, 1),
}

# 其余 g_i：((行, 列, 值), ...)，1 起始
G_ENTRIES: dict[int, tuple[tuple[int, int, int], ...]] = {
    3: ((1, 2, 1), (2, 1, 1), (3, 4, 1), (4, 3, 1), (5, 6, 1), (6, 5, 1), (7, 8, 1), (8, 7, 1)),
    8: ((1, 3, 1), (3, 1, 1), (2, 4, 1), (4, 2, 1), (5, 7, 1), (7, 5, 1), (6, 8, 1), (8, 6, 1)),
    11: ((1, 2, 1), (2, 1, 1), (3, 4, 1), (4, 3, 1), (5, 5, -1), (6, 6, 1), (7, 7, -1), (8, 8, 1)),
    12: ((1, 1, 1), (2, 2, -1), (3, 3, 1), (4, 4, -1), (5, 6, -1), (6, 5, 1), (7, 8, -1), (8, 7, 1)),
    14: ((1, 5, 1), (2, 6, 1), (3, 7, 1), (4, 8, 1), (5, 1, 1), (6, 2, 1), (7, 3, 1), (8, 4, 1)),
}

PARAMETRIC_FAMILIES = tuple(FAMILY_BLOCKS)
CONSTANT_FAMILIES = ("fi", "gi")


def _diagonal(signs: dict[int, int]) -> Matrix:
    rows = [[ZERO] * 8 for _ in range(8)]
    for k in range(8):
        rows[k][k] = FieldElement.from_rational(signs.get(k + 1, 1))
    return Matrix(rows, cols=8)


def _parametric(family: str, a: FieldElement) -> Matrix:
    sigma, blocks = FAMILY_BLOCKS[family]
    inv = a.inverse()
    half = FieldElement.from_rational(1) / 2
    c = half * (a + inv)
    s = half * I * (a - inv)
    rows = [[ONE if r == col else ZERO for col in range(8)] for r in range(8)]
    for k, l in blocks:
        k0, l0 = k - 1, l - 1
        rows[k0][k0] = c
        rows[l0][l0] = c
        rows[k0][l0] = s if sigma > 0 else -s
        rows[l0][k0] = -s if sigma > 0 else s
    return Matrix(rows, cols=8)


def f_matrix(i: int) -> Matrix:
    """
    f_i = diag，−1 位于第 9−i 个位置
    """
    if not 1 <= i <= 8:
        raise ValueError(f"f_i 的下标必须在 1..8: {i}")
    return _diagonal({9 - i: -1})


def g_matrix(i: int) -> Matrix:
    if i in G_SIGNS:
        return _diagonal({pos: -1 for pos in G_SIGNS[i]})
    if i in G_ENTRIES:
        rows = [[ZERO] * 8 for _ in range(8)]
        for r, col, v in G_ENTRIES[i]:
            rows[r - 1][col - 1] = FieldElement.from_rational(v)
        return Matrix(rows, cols=8)
    raise ValueError(f"g_i 的下标必须在 1..14: {i}")


class AutosMatrixMixin:
    """
    具名矩阵构造
    """

    def build_matrix(self, family: str, param) -> OrthoMatrix:
        """
        构造具名正交矩阵

        参数：
        - family: str
          g/f/h/p/q/r/s 为参数族；"fi" / "gi" 为常量矩阵
        - param: FieldElement | int | Fraction
          参数族的参数（非零），或常量矩阵的下标

        返回：
        - OrthoMatrix：构造时已验证正交

        异常：
        - ValueError：参数为零、族名未知或下标越界
        """
        if family in FAMILY_BLOCKS:
            a = FieldElement.coerce(param)
            if a.is_zero():
                raise ValueError(f"参数族 {family} 的参数不能为 0")
            return OrthoMatrix(_parametric(family, a), f"{family}({a})")
        if family == "fi":
            return OrthoMatrix(f_matrix(int(param)), f"f{int(param)}")
        if family == "gi":
            return OrthoMatrix(g_matrix(int(param)), f"g{int(param)}")
        raise ValueError(f"未知矩阵族: {family!r}")

    def product_of_f(self, indices: tuple[int, ...]) -> OrthoMatrix:
        """
        f_a f_b ... 的乘积（用于核对 g_i 的关系表）
        """
        result = OrthoMatrix(Matrix.identity(8), "")
        for k in indices:
            result = result @ self.build_matrix("fi", k)
        return result


__all__ = [
    "AutosMatrixMixin",
    "FAMILY_BLOCKS",
    "G_SIGNS",
    "G_RELATIONS",
    "PARAMETRIC_FAMILIES",
    "CONSTANT_FAMILIES",
    "f_matrix",
    "g_matrix",
]
