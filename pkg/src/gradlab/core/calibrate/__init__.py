"""
根基校准
效果: 由 Cartan 分次（q10）的根空间构造有序、规范化的根基 B，使 H₁、H₂、t_{x,y,z,u} 成为自同构

校准步骤
    _root_spaces: 读出 q10 的 Cartan 分量与 24 个根空间（ε 坐标为标签的对数）
    _simple_systems: 枚举中心节点为 β₂ 的 D₄ 简单根系，按确定顺序截取
    _chevalley: 简单根出发按高度递推的 Chevalley 规范化
    _cartan_block: 求 Cartan 位置 1..4，使两张表在 Cartan 上的块与根置换相容
    _scalings: 乘法方程组（Smith 标准形）求根向量缩放因子
    certify: H₁、H₂ 通过 is_automorphism，阶分别为 3、6

缓存
    load / save / load_or_calibrate: calibration.json 读写，读入后重新认证

功能说明:
- 结果是「搜索 + 证书」：任意通过全部认证的候选都被接受
- 失败时 CalibrationError 列出最佳候选不成立的括号方程
"""
from itertools import permutations
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger

from ...unit.field import FieldElement, ONE, ZERO
from ...unit.linalg import IntMatrix, Matrix, Vector, kernel_basis, smith_decomposition, vec_scale
from ..autos import (
    H1_TABLE,
    H2_TABLE,
    MONOMIAL_EXPONENTS,
    POSITION_OF_EXPONENT,
    Automorphisms,
    BasisOperatorTable,
    GeneratorDescriptor,
    cartan_block,
    table_position_map,
)
from ..diag import Diagonalizer, LabeledDecomposition
from ..liealg import DIM, LieAlgebra
from .basis import CalibratedBasis, CalibrationError, CalibrationRecord

Root = tuple[int, int, int, int]

CARTAN_GENERATORS = (
    GeneratorDescriptor(family="p", param="2"),
    GeneratorDescriptor(family="s", param="7"),
    GeneratorDescriptor(family="r", param="5"),
    GeneratorDescriptor(family="q", param="3"),
)

EXPECTED_ORDERS = {"H1": 3, "H2": 6}

SIMPLE_POSITIONS = (5, 6, 7, 8)
POSITIVE_POSITIONS = tuple(range(5, 17))
ROOT_POSITIONS = tuple(range(5, DIM + 1))


def _negative(pos: int) -> int:
    return POSITION_OF_EXPONENT[tuple(-x for x in MONOMIAL_EXPONENTS[pos])]


def _sum_position(a: int, b: int) -> Optional[int]:
    total = tuple(x + y for x, y in zip(MONOMIAL_EXPONENTS[a], MONOMIAL_EXPONENTS[b]))
    return POSITION_OF_EXPONENT.get(total)


def _inner(a: Root, b: Root) -> int:
    return sum(x * y for x, y in zip(a, b))


class _TableData:
    """
    一张表在根位置上的带号置换、线性化矩阵 N 与 Cartan 块
    """

    def __init__(self, table: BasisOperatorTable):
        self.name = table.name
        pmap = table_position_map(table)
        if pmap is None:
            raise CalibrationError(f"{table.name}: 根位置上不是带号置换")
        self.perm = {src: tgt for src, (tgt, _) in pmap.items()}
        self.sign = {src: c for src, (_, c) in pmap.items()}
        columns = [MONOMIAL_EXPONENTS[self.perm[p]] for p in SIMPLE_POSITIONS]
        self.n = [[columns[c][r] for c in range(4)] for r in range(4)]
        for pos in ROOT_POSITIONS:
            exp = MONOMIAL_EXPONENTS[pos]
            image = tuple(sum(self.n[r][c] * exp[c] for c in range(4)) for r in range(4))
            if image != MONOMIAL_EXPONENTS[self.perm[pos]]:
                raise CalibrationError(f"{table.name}: 根置换在指数格上不是线性的（位置 {pos}）")
        self.cartan = cartan_block(table)
        n_matrix = Matrix([[FieldElement.from_rational(x) for x in row] for row in self.n], cols=4)
        # 对偶作用 N^{-T}
        self.dual = n_matrix.inverse().transpose()


class Calibrator:
    """
    根基校准器

    参数：
    - candidate_limit: int
      最多尝试的简单根系个数
    """

    def __init__(self, candidate_limit: int = 48):
        self.candidate_limit = candidate_limit
        self.algebra = LieAlgebra()
        self.autos = Automorphisms()
        self.diagonalizer = Diagonalizer()

    # ---------- 入口 ----------

    def cartan_decomposition(self) -> LabeledDecomposition:
        gens = [(self.autos.operator_for(d), self.autos.candidate_eigenvalues(d)) for d in CARTAN_GENERATORS]
        return self.diagonalizer.simultaneous_diagonalize(gens)

    def calibrate_root_basis(self, cartan: Optional[LabeledDecomposition] = None) -> CalibratedBasis:
        """
        搜索并认证根基

        参数：
        - cartan: LabeledDecomposition | None
          q10 的分解；缺省时现算

        返回：
        - CalibratedBasis

        异常：
        - CalibrationError：所有候选都失败（附最佳候选的诊断，见 best_failure）
        """
        if cartan is None:
            cartan = self.cartan_decomposition()
        cartan_space, roots = self._root_spaces(cartan)
        tables = [_TableData(H1_TABLE), _TableData(H2_TABLE)]
        candidates = self._simple_systems(roots)
        logger.info(f"校准：共 {len(candidates)} 个简单根系候选，尝试前 {self.candidate_limit} 个")
        failures: list[CalibrationError] = []
        for index, simple in enumerate(candidates[: self.candidate_limit]):
            try:
                basis = self._try_candidate(index, simple, roots, cartan_space, tables)
            except CalibrationError as exc:
                logger.warning(f"候选 {index} 被丢弃: {exc}")
                failures.append(exc)
                continue
            logger.info(f"校准成功：候选 {index}")
            return basis
        if not failures:
            raise CalibrationError("没有可用的简单根系候选")
        best = self.best_failure(failures)
        logger.error(f"校准失败: {best} ({best.candidate})")
        raise best

    @staticmethod
    def best_failure(failures: Sequence[CalibrationError]) -> CalibrationError:
        """
        走到括号方程且反例最少的候选；都没走到时取第一个
        """
        return min(failures, key=lambda exc: (not exc.defects, len(exc.defects)))

    # ---------- 根空间 ----------

    def _root_spaces(self, cartan: LabeledDecomposition) -> tuple[list[Vector], dict[Root, Vector]]:
        bases = [k.base for k in cartan.kinds]
        if len(bases) != 4 or any(b is None for b in bases):
            raise CalibrationError("Cartan 分解的四个生成元必须都是有理底数的环面")
        cartan_space: list[Vector] = []
        roots: dict[Root, Vector] = {}
        for part in cartan.parts:
            exps = []
            for value, base in zip(part.label, bases):
                k = value.log_base(base)
                if k is None:
                    raise CalibrationError(f"标签坐标 {value} 不是 {base} 的幂")
                exps.append(k)
            exps = tuple(exps)
            if not any(exps):
                cartan_space = list(part.subspace.basis)
            else:
                if part.dim != 1:
                    raise CalibrationError(f"根空间 {exps} 的维数为 {part.dim}")
                roots[exps] = part.subspace.basis[0]
        if len(cartan_space) != 4 or len(roots) != 24:
            raise CalibrationError(f"Cartan 分解形状不对: Cartan {len(cartan_space)} 维，根 {len(roots)} 个")
        return cartan_space, roots

    def _simple_systems(self, roots: dict[Root, Vector]) -> list[tuple[Root, Root, Root, Root]]:
        """
        (β₁, β₂, β₃, β₄)：β₂ 为中心节点，其余三者两两正交且与 β₂ 内积为 −1
        """
        ordered = sorted(roots)
        out = []
        for center in ordered:
            neighbours = [g for g in ordered if _inner(center, g) == -1]
            for b1, b3, b4 in permutations(neighbours, 3):
                if _inner(b1, b3) == 0 and _inner(b1, b4) == 0 and _inner(b3, b4) == 0:
                    out.append((b1, center, b3, b4))
        return out

    def _assign_positions(self, simple, roots: dict[Root, Vector]) -> dict[int, Root]:
        assigned = {}
        for pos in ROOT_POSITIONS:
            exp = MONOMIAL_EXPONENTS[pos]
            root = tuple(sum(exp[k] * simple[k][i] for k in range(4)) for i in range(4))
            if root not in roots:
                raise CalibrationError(f"位置 {pos} 的指数不对应根")
            assigned[pos] = root
        if len(set(assigned.values())) != len(assigned):
            raise CalibrationError("位置到根的映射不是双射")
        return assigned

    # ---------- 规范化 ----------

    def _ratio(self, target: Vector, v: Vector, what: str) -> FieldElement:
        """
        target = λ·v 时返回 λ
        """
        k = next((i for i, x in enumerate(v) if x), None)
        if k is None:
            raise CalibrationError(f"{what}: 零向量")
        lam = target[k] / v[k]
        if tuple(target) != vec_scale(lam, v):
            raise CalibrationError(f"{what}: 不成比例")
        return lam

    def _chevalley(self, assigned: dict[int, Root], roots: dict[Root, Vector]) -> dict[int, Vector]:
        bracket = self.algebra.bracket_coords
        E: dict[int, Vector] = {}
        for pos in SIMPLE_POSITIONS:
            neg = _negative(pos)
            v, w = roots[assigned[pos]], roots[assigned[neg]]
            lam = self._ratio(bracket(bracket(v, w), v), v, f"简单根 {pos}")
            E[pos] = v
            E[neg] = vec_scale(FieldElement.from_rational(2) / lam, w)
        higher = sorted(
            (p for p in POSITIVE_POSITIONS if p not in SIMPLE_POSITIONS),
            key=lambda p: (sum(MONOMIAL_EXPONENTS[p]), p),
        )
        for pos in higher:
            for simple in SIMPLE_POSITIONS:
                rest = _sum_position(pos, _negative(simple))
                if rest is not None and rest in POSITIVE_POSITIONS:
                    E[pos] = bracket(E[simple], E[rest])
                    E[_negative(pos)] = vec_scale(-ONE, bracket(E[_negative(simple)], E[_negative(rest)]))
                    break
            else:
                raise CalibrationError(f"位置 {pos} 无法由简单根递推")
        return E

    def _root_value(self, h: Vector, E: dict[int, Vector], pos: int) -> FieldElement:
        return self._ratio(self.algebra.bracket_coords(h, E[pos]), E[pos], f"根 {pos} 取值")

    def _simple_values(self, h: Vector, E: dict[int, Vector]) -> list[FieldElement]:
        return [self._root_value(h, E, p) for p in SIMPLE_POSITIONS]

    # ---------- Cartan 块 ----------

    def _cartan_block(
        self,
        E: dict[int, Vector],
        cartan_space: list[Vector],
        tables: Sequence[_TableData],
    ) -> tuple[list[Vector], str]:
        """
        求 b₁..b₄ ∈ h，使 A·T_k = N_k^{-T}·A（A 的第 m 列为 b_m 上的简单根取值）
        """
        coroots = [self.algebra.bracket_coords(E[p], E[_negative(p)]) for p in SIMPLE_POSITIONS]
        a_coroots = Matrix.from_columns([self._simple_values(h, E) for h in coroots], rows=4)
        if a_coroots.rank() == 4 and all(a_coroots @ t.cartan == t.dual @ a_coroots for t in tables):
            return coroots, "coroots"

        # 一般情形：解 16 元线性方程组
        equations = []
        for t in tables:
            for r in range(4):
                for c in range(4):
                    row = [ZERO] * 16
                    for s in range(4):
                        row[r * 4 + s] = row[r * 4 + s] + t.cartan[s, c]
                        row[s * 4 + c] = row[s * 4 + c] - t.dual[r, s]
                    equations.append(row)
        kernel = kernel_basis(Matrix(equations, cols=16))
        trials = list(kernel.basis)
        if kernel.dim > 1:
            total = kernel.basis[0]
            for k, v in enumerate(kernel.basis[1:], start=2):
                total = tuple(x + FieldElement.from_rational(k) * y for x, y in zip(total, v))
            trials.append(total)
        values = Matrix.from_columns([self._simple_values(h, E) for h in cartan_space], rows=4)
        for flat in trials:
            a = Matrix([flat[r * 4 : r * 4 + 4] for r in range(4)], cols=4)
            if a.rank() == 4:
                x = values.inverse() @ a
                out = []
                for k in range(4):
                    acc = [ZERO] * DIM
                    for m in range(4):
                        if x[m, k]:
                            acc = [u + x[m, k] * w for u, w in zip(acc, cartan_space[m])]
                    out.append(tuple(acc))
                return out, "kernel"
        raise CalibrationError("Cartan 块：两张表的 Cartan 作用与根置换不相容")

    # ---------- 缩放因子 ----------

    def _structure(self, E: dict[int, Vector], a: int, b: int, c: int) -> FieldElement:
        return self._ratio(self.algebra.bracket_coords(E[a], E[b]), E[c], f"[E{a},E{b}]")

    def _scaling_equations(self, E: dict[int, Vector], tables: Sequence[_TableData]) -> list[tuple[list[int], FieldElement]]:
        """
        B_α = d_α E_α 的乘法方程：(指数行, 常数)
        """
        equations = []
        index = {pos: k for k, pos in enumerate(ROOT_POSITIONS)}
        for t in tables:
            for a in ROOT_POSITIONS:
                for b in ROOT_POSITIONS:
                    if b <= a:
                        continue
                    c = _sum_position(a, b)
                    row = [0] * len(ROOT_POSITIONS)
                    pa, pb = t.perm[a], t.perm[b]
                    if c is not None:
                        pc = t.perm[c]
                        for pos, e in ((a, 1), (b, 1), (pc, 1), (c, -1), (pa, -1), (pb, -1)):
                            row[index[pos]] += e
                        const = (
                            t.sign[a] * t.sign[b] * self._structure(E, pa, pb, pc)
                            / (self._structure(E, a, b, c) * t.sign[c])
                        )
                        equations.append((row, const))
                    elif b == _negative(a):
                        h = self.algebra.bracket_coords(E[a], E[b])
                        h_image = self.algebra.bracket_coords(E[pa], E[pb])
                        mapped = t.dual.apply(self._simple_values(h, E))
                        rho = self._ratio(mapped, self._simple_values(h_image, E), f"H(h_{a})")
                        for pos, e in ((a, 1), (b, 1), (pa, -1), (pb, -1)):
                            row[index[pos]] += e
                        equations.append((row, t.sign[a] * t.sign[b] / rho))
        return equations

    def _scalings(self, E: dict[int, Vector], tables: Sequence[_TableData]) -> dict[int, FieldElement]:
        """
        解 Π d_j^{row_j} = const（Smith 标准形 P·M·Q = D）
        """
        unique: dict[tuple[int, ...], FieldElement] = {}
        for row, const in self._scaling_equations(E, tables):
            key = tuple(row)
            if not any(key):
                if const != ONE:
                    raise CalibrationError(f"平凡方程的常数为 {const}")
                continue
            if key in unique and unique[key] != const:
                raise CalibrationError(f"同一方程出现两个常数: {unique[key]} 与 {const}")
            unique[key] = const
        rows = list(unique)
        consts = [unique[r] for r in rows]
        ncols = len(ROOT_POSITIONS)
        diag, P, Q = smith_decomposition(IntMatrix.from_rows(rows, ncols))
        rank = sum(1 for d in diag if d)
        y = [ONE] * ncols
        for i in range(len(rows)):
            value = ONE
            for j, e in enumerate(P[i]):
                if e:
                    value = value * consts[j] ** e
            if i < rank:
                root = value.nth_root(diag[i])
                if root is None:
                    raise CalibrationError(f"无法在域内开 {diag[i]} 次方: {value}")
                y[i] = root
            elif value != ONE:
                raise CalibrationError(f"方程组不相容（第 {i} 行常数 {value}）")
        out = {}
        for j, pos in enumerate(ROOT_POSITIONS):
            d = ONE
            for l, e in enumerate(Q[j]):
                if e:
                    d = d * y[l] ** e
            out[pos] = d
        logger.debug(f"缩放方程 {len(rows)} 条，秩 {rank}")
        return out

    # ---------- 认证 ----------

    def certify(self, basis: CalibratedBasis, candidate: str = "") -> None:
        """
        H₁、H₂ 为自同构且阶分别为 3、6

        异常：
        - CalibrationError：附不成立的括号方程
        """
        for name, table in (("H1", H1_TABLE), ("H2", H2_TABLE)):
            try:
                op = self.autos.operator_from_table(table, basis)
            except ValueError as exc:
                raise CalibrationError(f"{name}: 根基矩阵不可逆 ({exc})", candidate) from exc
            defects = self.autos.automorphism_defects(op, limit=None)
            if defects:
                raise CalibrationError(f"{name} 不是自同构", candidate, defects)
            order = op.order()
            if order != EXPECTED_ORDERS[name]:
                raise CalibrationError(f"{name} 的阶为 {order}，应为 {EXPECTED_ORDERS[name]}", candidate)

    def _try_candidate(self, index, simple, roots, cartan_space, tables) -> CalibratedBasis:
        label = f"#{index} simple={list(map(list, simple))}"
        try:
            assigned = self._assign_positions(simple, roots)
            E = self._chevalley(assigned, roots)
            cartan, mode = self._cartan_block(E, cartan_space, tables)
            d = self._scalings(E, tables)
        except CalibrationError as exc:
            raise CalibrationError(str(exc), label, exc.defects) from exc
        vectors = list(cartan) + [vec_scale(d[pos], E[pos]) for pos in ROOT_POSITIONS]
        basis = CalibratedBasis(
            vectors,
            {pos: MONOMIAL_EXPONENTS[pos] for pos in ROOT_POSITIONS},
            {
                "candidate": index,
                "simple_roots": [list(r) for r in simple],
                "cartan": mode,
                "scalings": {str(pos): d[pos].to_strings() for pos in ROOT_POSITIONS},
                "lattice_map": {str(pos): list(assigned[pos]) for pos in ROOT_POSITIONS},
            },
        )
        self.certify(basis, label)
        return basis

    # ---------- 缓存 ----------

    def save(self, basis: CalibratedBasis, path: Path) -> None:
        basis.save(Path(path))
        logger.info(f"校准已写入 {path}")

    def load(self, path: Path) -> CalibratedBasis:
        """
        读入缓存并重新认证

        异常：
        - FileNotFoundError / pydantic.ValidationError / CalibrationError
        """
        basis = CalibratedBasis.from_json(Path(path).read_text(encoding="utf-8"))
        self.certify(basis, f"cache {path}")
        return basis

    def from_payload(self, payload: dict) -> CalibratedBasis:
        """
        由记录字典还原（子进程使用，不重新认证）
        """
        return CalibratedBasis.from_record(CalibrationRecord.model_validate(payload))

    def load_or_calibrate(self, path: Optional[Path], refresh: bool = False) -> CalibratedBasis:
        """
        优先读缓存；缓存缺失、损坏或认证失败时重新校准并写回
        """
        if path is not None and not refresh and Path(path).exists():
            try:
                return self.load(path)
            except (ValueError, CalibrationError) as exc:
                logger.warning(f"校准缓存 {path} 无效，重新计算: {exc}")
        basis = self.calibrate_root_basis()
        if path is not None:
            self.save(basis, path)
        return basis


__all__ = [
    "Calibrator",
    "CalibratedBasis",
    "CalibrationError",
    "CalibrationRecord",
    "CARTAN_GENERATORS",
]
