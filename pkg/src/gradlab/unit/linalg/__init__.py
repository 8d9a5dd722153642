"""
精确线性代数工具
效果: Q(ζ₁₂) 上的稠密矩阵、行最简形、核、子空间格运算，以及整数 Smith 标准形

矩阵方法
    Matrix: 行主序矩阵（identity / zeros / from_columns 构造）
    @ / + / - / scale / transpose / inverse / rank / apply

消元方法
    rref: 行最简形（零行置底，幂等）
    kernel_basis: 零空间（返回 Subspace）

子空间方法
    Subspace.span: 由若干向量张成（基为 RREF，唯一）
    subspace_contains / subspace_equal: 包含与相等判定
    Subspace.coordinates / sum / is_subspace_of

整数方法
    IntMatrix: 整数矩阵
    smith_decomposition: 带变换的 Smith 标准形 P·M·Q = D
    smith_normal_form: 不变因子
    abelian_group: 由关系矩阵给出有限生成阿贝尔群（自由秩, 不变因子）

功能说明:
- 消元时跳过零元，28×28 规模下无需稀疏结构
- Smith 标准形每步选取绝对值最小的非零元为主元
"""
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..field import FieldElement, ONE, ZERO, Scalar

Vector = tuple[FieldElement, ...]


def _vec(values: Iterable[Scalar]) -> Vector:
    return tuple(FieldElement.coerce(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(n))


def vec_add(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> Vector:
    return tuple(x + y if y else x for x, y in zip(a, b))


def vec_sub(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> Vector:
    return tuple(x - y if y else x for x, y in zip(a, b))


def vec_scale(c: FieldElement, a: Sequence[FieldElement]) -> Vector:
    if not c:
        return zero_vector(len(a))
    return tuple(c * x if x else x for x in a)


def vec_is_zero(a: Sequence[FieldElement]) -> bool:
    return not any(a)


class Matrix:
    """
    Q(ζ₁₂) 上的稠密矩阵（行主序，不可变约定：运算均返回新矩阵）
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[Scalar]], cols: Optional[int] = None):
        self.data: list[Vector] = [_vec(row) for row in data]
        self.rows = len(self.data)
        self.cols = cols if cols is not None else (len(self.data[0]) if self.data else 0)
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError(f"行长度 {len(row)} 与列数 {self.cols} 不一致")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, k) for k in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([zero_vector(cols) for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: Optional[int] = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)], cols=len(columns))

    @property
    def entries(self) -> list[FieldElement]:
        return [x for row in self.data for x in row]

    def __getitem__(self, index: tuple[int, int]) -> FieldElement:
        i, j = index
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        """
        矩阵乘列向量
        """
        if len(v) != self.cols:
            raise ValueError(f"向量维数 {len(v)} 与列数 {self.cols} 不一致")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for row in self.data:
            acc = ZERO
            for j, x in nz:
                a = row[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"矩阵形状不匹配: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for row in self.data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.data[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(out, cols=other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([vec_add(a, b) for a, b in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([vec_sub(a, b) for a, b in zip(self.data, other.data)], cols=self.cols)

    def scale(self, c: Scalar) -> "Matrix":
        c = FieldElement.coerce(c)
        return Matrix([vec_scale(c, row) for row in self.data], cols=self.cols)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in row] for row in self.data], cols=self.cols)

    def _check_same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"矩阵形状不匹配: {self.rows}x{self.cols} 与 {other.rows}x{other.cols}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.data)))

    def is_zero(self) -> bool:
        return all(vec_is_zero(row) for row in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def rank(self) -> int:
        rows, _ = _rref_rows(self.data, self.cols)
        return len(rows)

    def inverse(self) -> "Matrix":
        """
        Gauss–Jordan 求逆

        异常：
        - ValueError：非方阵或奇异
        """
        if self.rows != self.cols:
            raise ValueError("只有方阵可以求逆")
        n = self.rows
        augmented = [tuple(row) + unit_vector(n, i) for i, row in enumerate(self.data)]
        reduced, pivots = _rref_rows(augmented, 2 * n)
        if len(reduced) < n or pivots[n - 1] != n - 1:
            raise ValueError("矩阵奇异，不可逆")
        return Matrix([row[n:] for row in reduced], cols=n)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


def _rref_rows(rows: Sequence[Sequence[FieldElement]], ncols: int) -> tuple[list[Vector], list[int]]:
    """
    行最简形核心：返回 (非零行, 主元列)
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if work[k][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if lead != ONE:
            inv = lead.inverse()
            work[r] = [x * inv if x else x for x in work[r]]
        pivot_row = work[r]
        support = [j for j in range(c, ncols) if pivot_row[j]]
        for k in range(nrows):
            if k != r:
                f = work[k][c]
                if f:
                    row_k = work[k]
                    for j in support:
                        row_k[j] = row_k[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], pivots


def rref(m: Matrix) -> Matrix:
    """
    行最简形（保持形状，零行置底）

    参数：
    - m: Matrix

    返回：
    - Matrix：rref(rref(m)) = rref(m)
    """
    rows, _ = _rref_rows(m.data, m.cols)
    rows += [zero_vector(m.cols)] * (m.rows - len(rows))
    return Matrix(rows, cols=m.cols)


class Subspace:
    """
    子空间：基为 RREF 行，表示唯一，因此相等判定是逐项比较
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Sequence[Vector] = (), pivots: Sequence[int] = ()):
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(basis)
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        """
        由向量组张成子空间（自动化为 RREF）
        """
        rows = [_vec(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError(f"向量维数 {len(row)} 与环境维数 {ambient_dim} 不一致")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, reduced, pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vector(n, k) for k in range(n)], range(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_dim(self, n: int) -> None:
        if n != self.ambient_dim:
            raise ValueError(f"维数不匹配: {n} 与 {self.ambient_dim}")

    def reduce(self, v: Sequence[FieldElement]) -> Vector:
        """
        用基约化向量，返回余项
        """
        self._check_dim(len(v))
        residue = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = residue[p]
            if f:
                for j in range(p, self.ambient_dim):
                    b = row[j]
                    if b:
                        residue[j] = residue[j] - f * b
        return tuple(residue)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return vec_is_zero(self.reduce(_vec(v)))

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """
        v 在 RREF 基下的坐标（即主元位置上的分量）

        异常：
        - ValueError：v 不在子空间内
        """
        v = _vec(v)
        if not self.contains(v):
            raise ValueError("向量不在子空间内")
        return tuple(v[p] for p in self.pivots)

    def combine(self, coords: Sequence[FieldElement]) -> Vector:
        """
        由坐标还原向量
        """
        acc = zero_vector(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c:
                acc = vec_add(acc, vec_scale(c, row))
        return acc

    def is_subspace_of(self, other: "Subspace") -> bool:
        other._check_dim(self.ambient_dim)
        return all(other.contains(row) for row in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_dim(other.ambient_dim)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def map(self, fn) -> "Subspace":
        return Subspace.span([[fn(x) for x in row] for row in self.basis], self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    """
    零空间：对每个自由列构造一个核向量

    返回：
    - Subspace：dim = cols − rank(m)
    """
    rows, pivots = _rref_rows(m.data, m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for row, p in zip(rows, pivots):
            if row[free]:
                v[p] = -row[free]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def subspace_contains(s: Subspace, v: Sequence[Scalar]) -> bool:
    return s.contains(v)


def subspace_equal(s1: Subspace, s2: Subspace) -> bool:
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError(f"维数不匹配: {s1.ambient_dim} 与 {s2.ambient_dim}")
    return s1 == s2


# ---------- 整数部分 ----------


@dataclass
class IntMatrix:
    """
    整数矩阵（关系矩阵、指数格）
    """

    rows: int
    cols: int
    entries: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"IntMatrix 形状与数据不一致: {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int) -> "IntMatrix":
        return cls(len(rows), cols, [list(map(int, r)) for r in rows])


def _identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_decomposition(m: IntMatrix, transforms: bool = True) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """
    带变换的 Smith 标准形

    参数：
    - m: IntMatrix
    - transforms: bool
      为 False 时不累积 P、Q（返回空列表），只要不变因子时用

    返回：
    - (diag, P, Q)：P·M·Q = D，D 的对角线为 diag（长度 min(rows, cols)，
      d₁ | d₂ | …，非负，零在最后），P、Q 为幺模矩阵
    """
    R, C = m.rows, m.cols
    A = [row[:] for row in m.entries]
    P = _identity_int(R) if transforms else []
    Q = _identity_int(C) if transforms else []

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if transforms:
                P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in Q:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        if transforms:
            P[dst] = [a + k * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in Q:
            row[dst] += k * row[src]

    t = 0
    while t < min(R, C):
        best = None
        for i in range(t, R):
            for j in range(t, C):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, R):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    changed = changed or bool(A[i][t])
            for j in range(t + 1, C):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    changed = changed or bool(A[t][j])
            if changed:
                pick = (t, t)
                for i in range(t + 1, R):
                    if A[i][t] and abs(A[i][t]) < abs(A[pick[0]][pick[1]]):
                        pick = (i, t)
                for j in range(t + 1, C):
                    if A[t][j] and abs(A[t][j]) < abs(A[pick[0]][pick[1]]):
                        pick = (t, j)
                swap_rows(t, pick[0])
                swap_cols(t, pick[1])
                continue
            bad = next(
                (i for i in range(t + 1, R) for j in range(t + 1, C) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if transforms:
                P[t] = [-a for a in P[t]]
        t += 1
    diag = [A[i][i] for i in range(min(R, C))]
    return diag, P, Q


def smith_normal_form(m: IntMatrix) -> list[int]:
    """
    不变因子（含末尾的 0）
    """
    diag, _, _ = smith_decomposition(m, transforms=False)
    return diag


def abelian_group(relations: IntMatrix) -> tuple[int, list[int]]:
    """
    Z^cols / 行空间 的结构

    返回：
    - (自由秩, 大于 1 的不变因子)
    """
    diag = smith_normal_form(relations)
    nonzero = [d for d in diag if d]
    return relations.cols - len(nonzero), [d for d in nonzero if d > 1]


__all__ = [
    "Vector",
    "Matrix",
    "Subspace",
    "IntMatrix",
    "rref",
    "kernel_basis",
    "subspace_contains",
    "subspace_equal",
    "smith_decomposition",
    "smith_normal_form",
    "abelian_group",
    "zero_vector",
    "unit_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_is_zero",
]
