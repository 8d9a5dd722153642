"""
生成元描述

功能说明:
- 目录 JSON 中的每个生成元都解析为 GeneratorDescriptor
- 描述本身不含矩阵，算子在需要时由 Automorphisms.operator_for 构造
"""
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ...unit.field import FieldElement
from ...unit.notation import parse_scalar

PARAMETRIC = ("g", "f", "h", "p", "q", "r", "s")
FAMILIES = PARAMETRIC + ("F", "G", "H1", "H2", "t")


class GeneratorKind(BaseModel):
    """
    生成元在群结构计算中的读法：环面（有理底数）或有限阶
    """

    kind: Literal["torus", "finite"]
    base: Optional[int] = None

    def render(self) -> dict:
        return {"kind": self.kind, "base": self.base} if self.base is not None else {"kind": self.kind}


class GeneratorDescriptor(BaseModel):
    """
    生成元描述

    字段：
    - family: g/f/h/p/q/r/s（Ad 参数族）、F/G（Ad f_i / Ad g_i）、H1/H2（表算子）、t（环面算子）
    - param: 参数族的参数（记号字符串，如 "2"）
    - index: F/G 的下标
    - power: 幂次（H₂² 写作 family=H2, power=2）
    - values: t 的四个参数（记号字符串）
    - base: t 的有理底数（若四个参数都是该底数的幂）
    """

    family: Literal["g", "f", "h", "p", "q", "r", "s", "F", "G", "H1", "H2", "t"]
    param: Optional[str] = None
    index: Optional[int] = None
    power: int = Field(default=1, ge=1)
    values: Optional[list[str]] = None
    base: Optional[int] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "GeneratorDescriptor":
        if self.family in PARAMETRIC and self.param is None:
            raise ValueError(f"参数族 {self.family} 缺少 param")
        if self.family == "F" and not (self.index and 1 <= self.index <= 8):
            raise ValueError(f"F 的下标必须在 1..8: {self.index}")
        if self.family == "G" and not (self.index and 1 <= self.index <= 14):
            raise ValueError(f"G 的下标必须在 1..14: {self.index}")
        if self.family == "t" and (self.values is None or len(self.values) != 4):
            raise ValueError("t 需要四个参数")
        return self

    def param_value(self) -> FieldElement:
        return parse_scalar(self.param)

    def torus_values(self) -> list[FieldElement]:
        return [parse_scalar(v) for v in self.values]

    def label(self) -> str:
        """
        人读名字，如 "Ad g(2)"、"F8"、"H2^2"、"t(1,w^2,w^2,w^2)"
        """
        if self.family in PARAMETRIC:
            name = f"Ad {self.family}({self.param})"
        elif self.family in ("F", "G"):
            name = f"{self.family}{self.index}"
        elif self.family == "t":
            name = f"t({','.join(self.values)})"
        else:
            name = self.family
        return name if self.power == 1 else f"{name}^{self.power}"

    def generator_kind(self) -> GeneratorKind:
        """
        参数族按参数作为底数读成环面；t 给出 base 时同样；其余为有限阶
        """
        if self.family in PARAMETRIC:
            value = self.param_value()
            if value.is_rational():
                r = value.to_rational()
                if r.denominator == 1 and r > 1:
                    return GeneratorKind(kind="torus", base=int(r))
            return GeneratorKind(kind="finite")
        if self.family == "t" and self.base is not None:
            return GeneratorKind(kind="torus", base=self.base)
        return GeneratorKind(kind="finite")

    def base_fraction(self) -> Optional[Fraction]:
        kind = self.generator_kind()
        return Fraction(kind.base) if kind.base is not None else None
