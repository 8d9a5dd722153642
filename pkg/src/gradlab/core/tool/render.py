"""
文本渲染
"""

from ...unit.linalg import Subspace
from ..catalog import GradingSpec
from ..diag import LabeledDecomposition, label_text
from ..gradecheck import GradingReport, GroupStructure
from ..liealg import combination_text, pair_name
from ..pipeline import CompareResult
from ..selftest import SuiteResult


def _type_text(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


class ToolRenderMixin:
    """
    报告与分解的人读格式

    说明：
    - 标签使用特征值记号，如 (½, 1, −1, −1, −1)
    - 输出只依赖规范形（RREF 基、按标签排序），同一缓存下逐字节稳定
    """

    def render_catalog(self, specs: list[GradingSpec]) -> str:
        rows = [("id", "group", "type", "MAD")]
        for spec in specs:
            rows.append((spec.id, spec.group_annotation or spec.expected_group.render(), _type_text(spec.expected_type), spec.mad_label or "-"))
        widths = [max(len(r[k]) for r in rows) for k in range(3)]
        lines = [
            "  ".join(cell.ljust(widths[k]) for k, cell in enumerate(r[:3])) + "  " + r[3]
            for r in rows
        ]
        return "\n".join(lines) + "\n"

    def _space_text(self, space: Subspace) -> str:
        return "⟨" + ", ".join(combination_text(v, pair_name) for v in space.basis) + "⟩"

    def render_decomposition(self, grading_id: str, d: LabeledDecomposition, additive: bool = False) -> str:
        """
        每个分量一行：标签、维数、张成（b_ij 坐标）

        参数：
        - additive: bool
          同时给出群元的加法读法（有限坐标上加横线）
        """
        lines = [f"{grading_id}: {len(d)} components, type {_type_text(self.pipeline.checker.grading_type(d))}"]
        if additive and d.kinds:
            orders = self.pipeline.checker.generator_orders(d)
        for part in d.parts:
            head = f"  L{label_text(part.label)}"
            if additive and d.kinds:
                element = self.pipeline.checker.additive_label(part.label, d.kinds, orders)
                head += f" = {self.pipeline.checker.render_additive(element, d.kinds)}"
            lines.append(f"{head}  dim {part.dim}  {self._space_text(part.subspace)}")
        return "\n".join(lines) + "\n"

    def render_report(self, report: GradingReport) -> str:
        def expected(want):
            return "" if want is None else f"  (expected {want})"

        lines = [f"{report.grading_id}  {'PASS' if report.passed else 'FAIL'}"]
        want_type = _type_text(report.expected_type) if report.expected_type is not None else None
        want_group = report.expected_group.render() if isinstance(report.expected_group, GroupStructure) else None
        lines.append(f"  type       {_type_text(report.type)}{expected(want_type)}")
        lines.append(f"  group      {report.group.render()}{expected(want_group)}")
        if report.bracket_group is not None:
            lines.append(f"  brackets   {report.bracket_group.render()}")
        closure = "pass" if report.closure.passed else "FAIL"
        lines.append(f"  closure    {closure} ({report.closure.pairs_checked} pairs)")
        lines.extend(f"    {v.render()}" for v in report.closure.violations)
        lines.append(f"  golden     {report.golden_matched}/{report.golden_total}")
        lines.extend(f"    {f}" for f in report.golden_failures)
        lines.append(f"  identity   dim {report.identity_dim}")
        if report.conjugation is not None:
            lines.append(f"  conjugate  {'pass' if report.conjugation else 'FAIL'}")
        lines.extend(f"  note       {n}" for n in report.notes)
        return "\n".join(lines) + "\n"

    def render_compare(self, result: CompareResult) -> str:
        return (
            f"{result.first} refines {result.second}: {'yes' if result.first_refines_second else 'no'}\n"
            f"{result.second} refines {result.first}: {'yes' if result.second_refines_first else 'no'}\n"
            f"{result.verdict()}\n"
        )

    def render_selftest(self, results: list[SuiteResult]) -> str:
        lines = []
        for r in results:
            lines.append(f"{r.name:<14} {'PASS' if r.passed else 'FAIL'}  {r.cases} cases")
            lines.extend(f"    {f}" for f in r.failures)
        return "\n".join(lines) + "\n"
