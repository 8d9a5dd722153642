"""
分次认证
效果: 把带标签的分解认证为分次：封闭性、类型、分次群、加细关系

认证方法
    verify_closure: 逐对分量检查 [L_g, L_h] ⊆ L_{gh}
    grading_type: 类型 (h₁, …, h_s)
    universal_group: 支撑标签生成的群（Smith 标准形给出不变因子）
    bracket_group: 只用括号关系算出的泛群，核对 universal_group
    refines: 加细关系（必要条件检查）

辅助方法
    additive_label: 特征值标签的加法读法（环面取指数，有限阶取 ζ 指数模生成元阶）
    identity_dimension: 单位标签分量的维数
    check_golden: 与目录中的分量表逐一比较
    check_conjugation: 复共轭后的分解仍是同型同群的分次

数据类型
    GroupStructure / ClosureReport / GradingReport
"""
from dataclasses import dataclass, field
from math import lcm
from typing import Optional, Sequence

from loguru import logger

from ...unit.field import ONE, FieldElement
from ...unit.linalg import IntMatrix, Subspace, abelian_group, smith_decomposition, subspace_equal
from ..autos import GeneratorKind
from ..diag import Label, LabeledDecomposition, label_text
from ..liealg import DIM, LieAlgebra, combination_text, pair_name

ZETA_ORDER = 12


class MalformedLabelError(ValueError):
    """标签坐标既不是底数的有界幂，也不是单位根"""


@dataclass(frozen=True)
class GroupStructure:
    """
    有限生成阿贝尔群：自由秩 + 不变因子（d₁ | d₂ | …，无 1）
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"自由秩不能为负: {self.free_rank}")
        factors = tuple(self.invariant_factors)
        if any(d <= 1 for d in factors):
            raise ValueError(f"不变因子必须大于 1: {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"不变因子不满足整除链: {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_dict(cls, data: dict) -> "GroupStructure":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data.get("invariant_factors", ())))

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def render(self) -> str:
        """
        如 "Z×Z_2^4"、"Z_2^3×Z_4"、"Z^4"
        """
        pieces = []
        if self.free_rank == 1:
            pieces.append("Z")
        elif self.free_rank > 1:
            pieces.append(f"Z^{self.free_rank}")
        counts: dict[int, int] = {}
        for d in self.invariant_factors:
            counts[d] = counts.get(d, 0) + 1
        for d in sorted(counts):
            pieces.append(f"Z_{d}" if counts[d] == 1 else f"Z_{d}^{counts[d]}")
        return "×".join(pieces) or "1"

    def __str__(self) -> str:
        return self.render()


@dataclass
class ClosureViolation:
    left: Label
    right: Label
    witness: tuple

    def render(self) -> str:
        return f"[L{label_text(self.left)}, L{label_text(self.right)}] ∌ {combination_text(self.witness, pair_name)}"


@dataclass
class ClosureReport:
    passed: bool
    pairs_checked: int
    violations: list[ClosureViolation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "violations": [v.render() for v in self.violations],
        }


@dataclass
class GradingReport:
    """
    单个分次的认证报告
    """

    grading_id: str
    closure: ClosureReport
    type: tuple[int, ...]
    group: GroupStructure
    expected_type: Optional[tuple[int, ...]] = None
    expected_group: Optional[GroupStructure] = None
    golden_matched: int = 0
    golden_total: int = 0
    golden_failures: list[str] = field(default_factory=list)
    identity_dim: int = 0
    conjugation: Optional[bool] = None
    bracket_group: Optional[GroupStructure] = None
    notes: list[str] = field(default_factory=list)

    @property
    def type_matches(self) -> bool:
        return self.expected_type is None or self.type == self.expected_type

    @property
    def group_matches(self) -> bool:
        return self.expected_group is None or self.group == self.expected_group

    @property
    def passed(self) -> bool:
        return (
            self.closure.passed
            and sum(i * h for i, h in enumerate(self.type, start=1)) == DIM
            and self.type_matches
            and self.group_matches
            and self.golden_matched == self.golden_total
            and self.conjugation is not False
        )

    def to_dict(self) -> dict:
        return {
            "id": self.grading_id,
            "passed": self.passed,
            "closure": self.closure.to_dict(),
            "type": list(self.type),
            "expected_type": list(self.expected_type) if self.expected_type is not None else None,
            "group": self.group.to_dict(),
            "group_text": self.group.render(),
            "bracket_group": self.bracket_group.to_dict() if self.bracket_group is not None else None,
            "expected_group": self.expected_group.to_dict() if self.expected_group is not None else None,
            "matches_expected": {
                "type": self.type_matches,
                "group": self.group_matches,
                "golden": self.golden_matched == self.golden_total,
                "conjugation": self.conjugation,
            },
            "golden": {"matched": self.golden_matched, "total": self.golden_total, "failures": self.golden_failures},
            "identity_dim": self.identity_dim,
            "notes": self.notes,
        }


class GradingChecker:
    """
    分次认证工具类
    """

    def __init__(self):
        self.algebra = LieAlgebra()

    def verify_closure(self, d: LabeledDecomposition, max_violations: int = 20) -> ClosureReport:
        """
        封闭性：对每对分量 (g, h)，非零括号必须落在标签为 g·h 的分量中

        参数：
        - d: LabeledDecomposition
        - max_violations: int
          最多记录的反例个数

        返回：
        - ClosureReport：通过与否 + 反例 (g, h, 括号向量)

        说明：
        - 括号与标签乘积都对称，只需检查无序对（含 g = h）
        - g·h 不在支撑中时，要求括号全为零
        """
        by_label = {p.label: p.subspace for p in d.parts}
        parts = d.parts
        violations = []
        pairs = 0
        for i, left in enumerate(parts):
            for right in parts[i:]:
                pairs += 1
                product = tuple(a * b for a, b in zip(left.label, right.label))
                target = by_label.get(product)
                for x in left.subspace.basis:
                    for y in right.subspace.basis:
                        z = self.algebra.bracket_coords(x, y)
                        if not any(z):
                            continue
                        if target is None or not target.contains(z):
                            violations.append(ClosureViolation(left.label, right.label, z))
                            break
                    if len(violations) >= max_violations:
                        break
                if len(violations) >= max_violations:
                    break
            if len(violations) >= max_violations:
                break
        if violations:
            logger.warning(f"封闭性检查失败: {len(violations)} 个反例")
        return ClosureReport(not violations, pairs, violations)

    def grading_type(self, d: LabeledDecomposition) -> tuple[int, ...]:
        dims = d.dims()
        if not dims:
            return ()
        counts = [0] * max(dims)
        for k in dims:
            counts[k - 1] += 1
        return tuple(counts)

    def identity_dimension(self, d: LabeledDecomposition) -> int:
        space = d.part((ONE,) * d.arity)
        return space.dim if space is not None else 0

    # ---------- 群结构 ----------

    def _kinds(self, d: LabeledDecomposition, kinds: Optional[Sequence[GeneratorKind]]) -> list[GeneratorKind]:
        kinds = list(kinds if kinds is not None else d.kinds)
        if len(kinds) != d.arity:
            raise MalformedLabelError(f"生成元类型数 {len(kinds)} 与标签长度 {d.arity} 不一致")
        return kinds

    def _encode(self, label: Label, kinds: Sequence[GeneratorKind]) -> list[int]:
        out = []
        for value, kind in zip(label, kinds):
            if kind.kind == "torus":
                k = value.log_base(kind.base)
                if k is None:
                    raise MalformedLabelError(f"{value} 不是 {kind.base} 的有界幂")
            else:
                k = value.zeta_exponent()
                if k is None:
                    raise MalformedLabelError(f"{value} 不是单位根")
            out.append(k)
        return out

    def universal_group(self, d: LabeledDecomposition, kinds: Optional[Sequence[GeneratorKind]] = None) -> GroupStructure:
        """
        支撑标签在 Zᵗ × Z₁₂ᶠ 中生成的子群

        参数：
        - d: LabeledDecomposition
        - kinds: Sequence[GeneratorKind] | None
          缺省读 d.kinds

        返回：
        - GroupStructure

        异常：
        - MalformedLabelError

        说明：
        - 关系矩阵 W 的行为支撑向量与 12·e_j（有限阶坐标）
        - W 的左核限制到支撑坐标上给出 Zˢ 的关系子格 K，群为 Zˢ/K
        """
        kinds = self._kinds(d, kinds)
        support = [self._encode(p.label, kinds) for p in d.parts]
        n = len(kinds)
        s = len(support)
        finite = [j for j, k in enumerate(kinds) if k.kind == "finite"]
        relations = [[ZETA_ORDER if c == j else 0 for c in range(n)] for j in finite]
        w = IntMatrix.from_rows(support + relations, n)
        diag, P, _ = smith_decomposition(w)
        rank = sum(1 for x in diag if x)
        kernel = [row[:s] for row in P[rank:]]
        kernel = [row for row in kernel if any(row)]
        free, factors = abelian_group(IntMatrix.from_rows(kernel, s) if kernel else IntMatrix(0, s, []))
        return GroupStructure(free, tuple(factors))

    def bracket_group(self, d: LabeledDecomposition) -> GroupStructure:
        """
        只由分量与括号给出的泛群：支撑上的自由阿贝尔群，模去 e_s + e_t − e_r（0 ≠ [L_s, L_t] ⊆ L_r）

        异常：
        - ValueError：某个 [L_s, L_t] 不落在单个分量中

        说明：
        - 不读标签的数值，可以独立核对 universal_group
        - 标签群是它的商；两者相等说明生成元取满了分次的对角群
        """
        parts = d.parts
        s = len(parts)
        relations = set()
        for i, left in enumerate(parts):
            for j in range(i, s):
                right = parts[j]
                values = [
                    z
                    for x in left.subspace.basis
                    for y in right.subspace.basis
                    for z in (self.algebra.bracket_coords(x, y),)
                    if any(z)
                ]
                if not values:
                    continue
                target = next((k for k, p in enumerate(parts) if p.subspace.contains(values[0])), None)
                if target is None or not all(parts[target].subspace.contains(z) for z in values[1:]):
                    raise ValueError(f"[L{label_text(left.label)}, L{label_text(right.label)}] 不落在单个分量中")
                row = [0] * s
                row[i] += 1
                row[j] += 1
                row[target] -= 1
                relations.add(tuple(row))
        rows = sorted(relations)
        free, factors = abelian_group(IntMatrix.from_rows(rows, s) if rows else IntMatrix(0, s, []))
        return GroupStructure(free, tuple(factors))

    def generator_orders(self, d: LabeledDecomposition, kinds: Optional[Sequence[GeneratorKind]] = None) -> list[int]:
        """
        每个有限阶生成元在支撑上的阶（标签单位根阶的最小公倍数），环面记 0
        """
        kinds = self._kinds(d, kinds)
        orders = []
        for j, kind in enumerate(kinds):
            if kind.kind == "torus":
                orders.append(0)
                continue
            order = 1
            for p in d.parts:
                o = p.label[j].root_of_unity_order()
                if o is None:
                    raise MalformedLabelError(f"{p.label[j]} 不是单位根")
                order = lcm(order, o)
            orders.append(order)
        return orders

    def additive_label(
        self,
        label: Sequence[FieldElement],
        kinds: Sequence[GeneratorKind],
        orders: Sequence[int],
    ) -> tuple[int, ...]:
        """
        加法读法：环面坐标取对数，有限坐标取 ζ 指数换算到 Z_n

        示例：
        - (1/2, 1, −1, −1, −1)，第一个生成元底数 2、其余阶 2 → (−1, 0, 1, 1, 1)
        """
        codes = self._encode(tuple(label), kinds)
        out = []
        for k, kind, order in zip(codes, kinds, orders):
            if kind.kind == "torus":
                out.append(k)
            else:
                out.append((k * order // ZETA_ORDER) % order)
        return tuple(out)

    def render_additive(self, element: Sequence[int], kinds: Sequence[GeneratorKind]) -> str:
        body = []
        for k, kind in zip(element, kinds):
            body.append(str(k) if kind.kind == "torus" else f"{k}̄")
        return "(" + ", ".join(body) + ")"

    # ---------- 比较 ----------

    def refines(self, fine: LabeledDecomposition, coarse: LabeledDecomposition) -> bool:
        """
        fine 是否加细 coarse

        说明：
        - 每个细分量恰含于一个粗分量，且每个粗分量的维数等于其所含细分量维数之和
        """
        filled = [0] * len(coarse.parts)
        for part in fine.parts:
            owners = [k for k, c in enumerate(coarse.parts) if part.subspace.is_subspace_of(c.subspace)]
            if len(owners) != 1:
                return False
            filled[owners[0]] += part.dim
        return all(f == c.dim for f, c in zip(filled, coarse.parts))

    def check_golden(
        self,
        d: LabeledDecomposition,
        golden: Sequence[tuple[Label, Subspace]],
    ) -> tuple[int, list[str]]:
        """
        返回：
        - (匹配个数, 失败描述)
        """
        matched, failures = 0, []
        for label, expected in golden:
            computed = d.part(label)
            if computed is None:
                failures.append(f"{label_text(label)}: 没有该标签的分量")
            elif not subspace_equal(computed, expected):
                failures.append(f"{label_text(label)}: 计算得 dim {computed.dim}，表中 dim {expected.dim}")
            else:
                matched += 1
        return matched, failures

    def check_conjugation(self, d: LabeledDecomposition, group: GroupStructure) -> bool:
        """
        ω ↔ ω²：共轭分解通过封闭性，类型与群不变
        """
        conj = d.conjugate()
        return (
            self.verify_closure(conj).passed
            and self.grading_type(conj) == self.grading_type(d)
            and self.universal_group(conj) == group
        )

    def report(
        self,
        grading_id: str,
        d: LabeledDecomposition,
        expected_type: Optional[Sequence[int]] = None,
        expected_group: Optional[GroupStructure] = None,
        golden: Sequence[tuple[Label, Subspace]] = (),
        conjugation: bool = False,
    ) -> GradingReport:
        """
        汇总全部检查
        """
        closure = self.verify_closure(d)
        group = self.universal_group(d)
        matched, failures = self.check_golden(d, golden)
        report = GradingReport(
            grading_id=grading_id,
            closure=closure,
            type=self.grading_type(d),
            group=group,
            expected_type=tuple(expected_type) if expected_type is not None else None,
            expected_group=expected_group,
            golden_matched=matched,
            golden_total=len(golden),
            golden_failures=failures,
            identity_dim=self.identity_dimension(d),
            conjugation=self.check_conjugation(d, group) if conjugation else None,
            bracket_group=self.bracket_group(d) if closure.passed else None,
        )
        if report.bracket_group is not None and report.bracket_group != group:
            report.notes.append(f"标签群 {group} 是括号关系泛群 {report.bracket_group} 的真商")
        logger.info(f"{grading_id}: {'PASS' if report.passed else 'FAIL'}")
        return report


__all__ = [
    "GradingChecker",
    "GradingReport",
    "GroupStructure",
    "ClosureReport",
    "ClosureViolation",
    "MalformedLabelError",
]
