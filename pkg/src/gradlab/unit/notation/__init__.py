"""
目录数据记号解析
效果: 把人工录入的系数与线性组合字符串解析为精确域元素

解析方法
    parse_scalar: 解析系数表达式，如 "1/2"、"-w^2"、"(1+w^2)/(1-w)"
    parse_combination: 解析线性组合，如 "i b35 - b37 - i b46 + b48"、"w B13 + B20"
    parse_scalar_or_strings: 兼容两种录入方式（表达式字符串 或 四个 "p/q" 字符串）

记号约定:
- 数字为整数，分数写作 a/b
- i 为虚数单位，w 为 ω（ζ⁴），z 为 ζ
- 支持 + - * / ^ 与括号，相邻因子可省略乘号（如 "2w"）
- 线性组合中 b<i><j> 表示 b_ij（i<j 均为一位数），B<k> 表示校准基的第 k 个向量
"""
import re
from typing import Union

from ..field import FieldElement, I, OMEGA, ONE, ZETA

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")
_SYMBOLS = {"i": I, "w": OMEGA, "z": ZETA}
_BASIS_TAIL = re.compile(r"([bB])(\d+)\s*$")


class NotationError(ValueError):
    """记号无法解析"""


class _ScalarParser:
    """
    递归下降解析器

    文法：
    - expr   := term (('+'|'-') term)*
    - term   := unary (('*'|'/') unary | unary)*
    - unary  := ('+'|'-') unary | power
    - power  := atom ('^' ['-'] integer)?
    - atom   := integer | 'i' | 'w' | 'z' | '(' expr ')'
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        for number, name, other in _TOKEN.findall(text):
            if number:
                self.tokens.append(("num", number))
            elif name:
                for ch in name:
                    if ch not in _SYMBOLS:
                        raise NotationError(f"未知符号 {ch!r}: {text}")
                    self.tokens.append(("sym", ch))
            elif other.strip():
                self.tokens.append(("op", other))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> FieldElement:
        if not self.tokens:
            raise NotationError("空表达式")
        value = self._expr()
        if self.pos != len(self.tokens):
            raise NotationError(f"多余内容: {self.text}")
        return value

    def _expr(self) -> FieldElement:
        value = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            _, op = self._take()
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self) -> bool:
        kind, text = self._peek()
        return kind in ("num", "sym") or (kind == "op" and text == "(")

    def _term(self) -> FieldElement:
        value = self._unary()
        while True:
            kind, text = self._peek()
            if kind == "op" and text in ("*", "/"):
                self._take()
                rhs = self._unary()
                value = value * rhs if text == "*" else value / rhs
            elif self._starts_atom():
                value = value * self._power()
            else:
                return value

    def _unary(self) -> FieldElement:
        kind, text = self._peek()
        if kind == "op" and text in ("+", "-"):
            self._take()
            inner = self._unary()
            return inner if text == "+" else -inner
        return self._power()

    def _power(self) -> FieldElement:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            sign = 1
            if self._peek() == ("op", "-"):
                self._take()
                sign = -1
            kind, text = self._take()
            if kind != "num":
                raise NotationError(f"指数必须为整数: {self.text}")
            return base ** (sign * int(text))
        return base

    def _atom(self) -> FieldElement:
        kind, text = self._take()
        if kind == "num":
            return FieldElement.from_rational(int(text))
        if kind == "sym":
            return _SYMBOLS[text]
        if (kind, text) == ("op", "("):
            value = self._expr()
            if self._take() != ("op", ")"):
                raise NotationError(f"括号不匹配: {self.text}")
            return value
        raise NotationError(f"无法解析: {self.text}")


def parse_scalar(text: str) -> FieldElement:
    """
    解析系数表达式

    参数：
    - text: str
      如 "1/2"、"-i"、"w^2"、"2/(1-w)"

    返回：
    - FieldElement
    """
    return _ScalarParser(text).parse()


def parse_scalar_or_strings(value: Union[str, list]) -> FieldElement:
    """
    兼容两种录入：记号字符串，或 [c0, c1, c2, c3] 四个 "p/q" 字符串
    """
    if isinstance(value, list):
        return FieldElement.from_strings(value)
    return parse_scalar(str(value))


def _split_terms(text: str) -> list[str]:
    """
    在括号外的 + / - 处切分（符号保留在下一项开头）
    """
    terms, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > 0:
            prev = text[:pos].rstrip()
            # 指数中的负号以及紧跟运算符的符号不切分
            if prev and prev[-1] not in "^*/(":
                terms.append(text[start:pos])
                start = pos
    terms.append(text[start:])
    return [t.strip() for t in terms if t.strip()]


def parse_combination(text: str) -> list[tuple[str, int, FieldElement]]:
    """
    解析线性组合

    参数：
    - text: str
      如 "i b35 - b37"、"(1+w) B2 + B4"

    返回：
    - list[tuple[str, int, FieldElement]]：(基类型 "b"/"B", 下标, 系数)
      基类型 "b" 时下标为两位数 ij（如 35），"B" 时为 1..28
    """
    out = []
    for term in _split_terms(text):
        match = _BASIS_TAIL.search(term)
        if not match:
            raise NotationError(f"缺少基向量: {term!r}")
        kind, index = match.group(1), int(match.group(2))
        coef_text = term[: match.start()].strip()
        if coef_text in ("", "+"):
            coef = ONE
        elif coef_text == "-":
            coef = -ONE
        else:
            coef = parse_scalar(coef_text)
        out.append((kind, index, coef))
    if not out:
        raise NotationError(f"空组合: {text!r}")
    return out


__all__ = ["NotationError", "parse_scalar", "parse_scalar_or_strings", "parse_combination"]
