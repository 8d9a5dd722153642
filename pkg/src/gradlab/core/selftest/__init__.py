"""
自检套件
效果: 命令行 selftest 运行的精确性质检查，零容差

套件
    field_axioms: 随机三元组上的域公理（默认 10⁴ 组）
    jacobi: 全部基三元组上的 Jacobi 恒等式与反对称性
    linalg: RREF 幂等、核正确、秩 + 零度 = 列数
    smith: Smith 标准形整除链与 P·M·Q = D
    orthogonality: 22 个常量矩阵与参数族在 {2,3,5,7,ω,−1} 处正交
    relations: g_i = f_a f_b ... 关系表
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from loguru import logger

from ...unit.field import FieldElement, OMEGA, ONE, ZERO
from ...unit.linalg import IntMatrix, Matrix, kernel_basis, rref, smith_decomposition, vec_is_zero
from ..autos import G_RELATIONS, Automorphisms
from ..autos.matrices import PARAMETRIC_FAMILIES
from ..liealg import DIM, LieAlgebra, pair_name

SELFTEST_PARAMETERS = (2, 3, 5, 7, OMEGA, -1)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str, limit: int = 10) -> None:
        if len(self.failures) < limit:
            self.failures.append(message)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases, "failures": self.failures}


def _random_element(rng: random.Random, bound: int = 5) -> FieldElement:
    return FieldElement(*(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(4)))


class SelfTest:
    """
    自检工具类

    参数：
    - seed: int
      随机用例的种子，固定种子保证输出可复现
    - field_cases: int
      域公理的随机三元组个数
    """

    def __init__(self, seed: int = 0, field_cases: int = 10_000):
        self.seed = seed
        self.field_cases = field_cases
        self.algebra = LieAlgebra()
        self.autos = Automorphisms()

    def suites(self) -> dict[str, Callable[[], SuiteResult]]:
        return {
            "field_axioms": self.field_axioms,
            "jacobi": self.jacobi,
            "linalg": self.linalg,
            "smith": self.smith,
            "orthogonality": self.orthogonality,
            "relations": self.relations,
        }

    def run(self, names: Optional[list[str]] = None) -> list[SuiteResult]:
        """
        异常：
        - KeyError：未知套件名
        """
        table = self.suites()
        out = []
        for name in names or list(table):
            result = table[name]()
            logger.info(f"selftest {name}: {'PASS' if result.passed else 'FAIL'} ({result.cases} cases)")
            out.append(result)
        return out

    def field_axioms(self) -> SuiteResult:
        result = SuiteResult("field_axioms")
        rng = random.Random(self.seed)
        for _ in range(self.field_cases):
            a, b, c = (_random_element(rng) for _ in range(3))
            result.cases += 1
            if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
                result.fail(f"结合律: {a}, {b}, {c}")
            if a + b != b + a or a * b != b * a:
                result.fail(f"交换律: {a}, {b}")
            if a * (b + c) != a * b + a * c:
                result.fail(f"分配律: {a}, {b}, {c}")
            if a + ZERO != a or a * ONE != a or a - a != ZERO:
                result.fail(f"单位元: {a}")
            if a and a * a.inverse() != ONE:
                result.fail(f"逆元: {a}")
        return result

    def jacobi(self) -> SuiteResult:
        result = SuiteResult("jacobi")
        basis = [e.coords for e in self.algebra.basis()]
        br = self.algebra.bracket_coords
        for p, q in combinations(range(DIM), 2):
            result.cases += 1
            s = br(basis[p], basis[q])
            t = br(basis[q], basis[p])
            if not vec_is_zero([x + y for x, y in zip(s, t)]):
                result.fail(f"反对称: [{pair_name(p)}, {pair_name(q)}]")
        for p, q, r in combinations(range(DIM), 3):
            result.cases += 1
            x, y, z = basis[p], basis[q], basis[r]
            total = [
                u + v + w
                for u, v, w in zip(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y)))
            ]
            if not vec_is_zero(total):
                result.fail(f"Jacobi: {pair_name(p)}, {pair_name(q)}, {pair_name(r)}")
        return result

    def linalg(self, cases: int = 200) -> SuiteResult:
        result = SuiteResult("linalg")
        rng = random.Random(self.seed + 1)
        for _ in range(cases):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            data = [[_random_element(rng, 2) if rng.random() < 0.6 else ZERO for _ in range(cols)] for _ in range(rows)]
            m = Matrix(data, cols=cols)
            result.cases += 1
            r = rref(m)
            if rref(r) != r:
                result.fail(f"rref 不幂等: {m!r}")
            kernel = kernel_basis(m)
            if m.rank() + kernel.dim != cols:
                result.fail(f"秩 + 零度 ≠ 列数: {m!r}")
            if any(not vec_is_zero(m.apply(v)) for v in kernel.basis):
                result.fail(f"核向量不在核中: {m!r}")
        return result

    def smith(self, cases: int = 200) -> SuiteResult:
        result = SuiteResult("smith")
        rng = random.Random(self.seed + 2)
        for _ in range(cases):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            entries = [[rng.randint(-12, 12) for _ in range(cols)] for _ in range(rows)]
            result.cases += 1
            diag, P, Q = smith_decomposition(IntMatrix.from_rows(entries, cols))
            nonzero = [d for d in diag if d]
            if any(d < 0 for d in diag) or diag[: len(nonzero)] != nonzero:
                result.fail(f"对角线符号或零位置错误: {entries}")
            if any(b % a for a, b in zip(nonzero, nonzero[1:])):
                result.fail(f"整除链不成立: {diag}")
            pm = [[sum(P[i][k] * entries[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
            pmq = [[sum(pm[i][k] * Q[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
            expected = [[diag[i] if i == j else 0 for j in range(cols)] for i in range(rows)]
            if pmq != expected:
                result.fail(f"P·M·Q ≠ D: {entries}")
        return result

    def orthogonality(self) -> SuiteResult:
        result = SuiteResult("orthogonality")
        jobs = [("fi", i) for i in range(1, 9)] + [("gi", i) for i in range(1, 15)]
        jobs += [(family, a) for family in PARAMETRIC_FAMILIES for a in SELFTEST_PARAMETERS]
        for family, param in jobs:
            result.cases += 1
            try:
                self.autos.build_matrix(family, param)
            except ValueError as exc:
                result.fail(f"{family}({param}): {exc}")
        return result

    def relations(self) -> SuiteResult:
        result = SuiteResult("relations")
        for i, indices in sorted(G_RELATIONS.items()):
            result.cases += 1
            if self.autos.build_matrix("gi", i) != self.autos.product_of_f(indices):
                result.fail(f"g{i} ≠ {'·'.join(f'f{k}' for k in indices)}")
        return result


__all__ = ["SelfTest", "SuiteResult", "SELFTEST_PARAMETERS"]
