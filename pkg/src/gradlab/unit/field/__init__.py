"""
分圆域 Q(ζ₁₂) 精确运算类
效果: 为全部计算提供精确标量（有理数、i、ω 以及全部 12 次单位根）

构造方法
    FieldElement: 由四个有理系数构造 c0 + c1ζ + c2ζ² + c3ζ³
    from_rational: 有理数嵌入
    zeta_power: ζ 的整数次幂
    from_strings: 由四个 "p/q" 字符串还原

运算方法
    + - * / ** 与取负: 精确运算，乘法按 ζ⁴ = ζ² − 1 约化
    inverse: 扩展欧几里得求逆
    galois / conjugate: 伽罗瓦作用 ζ ↦ ζᵏ（k=11 为复共轭）

判定方法
    root_of_unity_order: 单位根阶数（≤ 12）
    log_base: 有理底数的整数对数（|k| ≤ 8）
    zeta_exponent: 若为 ζᵏ 返回 k
    nth_root: 有理数乘单位根范围内的 d 次方根

输出方法
    to_strings: 四个 "p/q" 字符串（JSON 导出约定）
    to_label: 论文记号（1/2、i、ω、ω² ...）

功能说明:
- 内部以整数分子元组加公分母表示，所有运算后约分，表示唯一
- 对象不可变，可作为字典键使用
- 只依赖标准库 fractions / math，分子分母为任意精度整数
"""
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Optional, Union

Scalar = Union["FieldElement", int, Fraction]

# 极小多项式 x⁴ − x² + 1 （低次在前）
_MINIMAL_POLY = (Fraction(1), Fraction(0), Fraction(-1), Fraction(0), Fraction(1))

# ζ⁰ … ζ¹¹ 在基 1, ζ, ζ², ζ³ 下的整数坐标
_ZETA_POWERS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, 0, 1, 0),
    (0, -1, 0, 1),
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
    (0, 0, -1, 0),
    (0, 0, 0, -1),
    (1, 0, -1, 0),
    (0, 1, 0, -1),
)

# 论文记号中单位根的名字
_ROOT_NAMES = {
    0: "1",
    1: "ζ",
    2: "-ω²",
    3: "i",
    4: "ω",
    5: "-iω²",
    6: "-1",
    7: "-ζ",
    8: "ω²",
    9: "-i",
    10: "-ω",
    11: "iω²",
}


def _iroot(n: int, d: int) -> Optional[int]:
    """
    非负整数的精确 d 次方根，不存在时返回 None
    """
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    return x if x ** d == n else None


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [
        (a[k] if k < len(a) else Fraction(0)) - (b[k] if k < len(b) else Fraction(0))
        for k in range(n)
    ]
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """
    多项式带余除法（b 非零）
    """
    rem = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(rem) >= len(b):
        coef = rem[-1] / b[-1]
        shift = len(rem) - len(b)
        quo[shift] = coef
        for k, bk in enumerate(b):
            rem[shift + k] -= coef * bk
        _poly_trim(rem)
    return _poly_trim(quo), rem


class FieldElement:
    """
    Q(ζ₁₂) 中的元素，ζ 满足 ζ⁴ − ζ² + 1 = 0

    约定：
    - i = ζ³，ω = ζ⁴ = ζ² − 1（虚部为正的三次单位根）
    - 表示 (num, den)：值为 (num[0] + num[1]ζ + num[2]ζ² + num[3]ζ³) / den，
      den > 0 且 gcd(den, num...) = 1，零元为 (0,0,0,0)/1
    """

    __slots__ = ("_num", "_den")

    ORDER = 12

    def __init__(self, c0: Union[int, Fraction, str] = 0, c1=0, c2=0, c3=0):
        coeffs = [Fraction(c) for c in (c0, c1, c2, c3)]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = tuple(int(c * den) for c in coeffs)
        self._assign(num, den)

    def _assign(self, num: tuple[int, ...], den: int) -> None:
        if den < 0:
            num = tuple(-n for n in num)
            den = -den
        g = gcd(den, *num)
        if g > 1:
            num = tuple(n // g for n in num)
            den //= g
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int) -> "FieldElement":
        obj = object.__new__(cls)
        obj._assign(num, den)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement 不可变")

    def __reduce__(self):
        return (FieldElement._raw, (self._num, self._den))

    # ---------- 构造 ----------

    @classmethod
    def from_rational(cls, r: Union[int, Fraction, str]) -> "FieldElement":
        """
        有理数嵌入：c0 = r，其余系数为 0
        """
        r = Fraction(r)
        return cls._raw((r.numerator, 0, 0, 0), r.denominator)

    @classmethod
    def zeta_power(cls, n: int) -> "FieldElement":
        """
        返回 ζⁿ（n 可为负，按模 12 取）
        """
        return cls._raw(_ZETA_POWERS[n % 12], 1)

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "FieldElement":
        """
        由四个 "p/q" 字符串构造，与 to_strings 对应

        参数：
        - items: Iterable[str]
          依次为 c0, c1, c2, c3

        返回：
        - FieldElement
        """
        values = list(items)
        if len(values) != 4:
            raise ValueError(f"域元素需要 4 个系数，收到 {len(values)} 个")
        return cls(*values)

    @classmethod
    def coerce(cls, value: Scalar) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Rational)):
            return cls.from_rational(Fraction(value))
        raise TypeError(f"无法转换为域元素: {value!r}")

    # ---------- 系数访问 ----------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._den) for n in self._num)

    @property
    def c0(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._num[1], self._den)

    @property
    def c2(self) -> Fraction:
        return Fraction(self._num[2], self._den)

    @property
    def c3(self) -> Fraction:
        return Fraction(self._num[3], self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not (self._num[1] or self._num[2] or self._num[3])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"不是有理数: {self.to_label()}")
        return Fraction(self._num[0], self._den)

    # ---------- 运算 ----------

    def __add__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        if other._den == self._den:
            return FieldElement._raw(tuple(a + b for a, b in zip(self._num, other._num)), self._den)
        d1, d2 = self._den, other._den
        return FieldElement._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self._num, other._num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement._raw(tuple(-a for a in self._num), self._den)

    def __sub__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return FieldElement.coerce(other) - self

    def __mul__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._num, other._num
        if not any(a) or not any(b):
            return ZERO
        p = [0] * 7
        for i in range(4):
            x = a[i]
            if x:
                for j in range(4):
                    y = b[j]
                    if y:
                        p[i + j] += x * y
        # ζ⁴ = ζ² − 1，ζ⁵ = ζ³ − ζ，ζ⁶ = −1
        num = (p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5])
        return FieldElement._raw(num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """
        乘法逆元：在 Q[x]/(x⁴ − x² + 1) 中做扩展欧几里得

        返回：
        - FieldElement：满足 a · a⁻¹ = 1

        异常：
        - ZeroDivisionError：a = 0
        """
        if self.is_zero():
            raise ZeroDivisionError("域元素 0 不可逆")
        if self.is_rational():
            return FieldElement._raw((self._den, 0, 0, 0), self._num[0])
        r0 = list(_MINIMAL_POLY)
        r1 = _poly_trim(list(self.coefficients))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # 极小多项式不可约，最大公因式为非零常数
        lead = r0[0]
        _, inv = _poly_divmod([c / lead for c in s0], list(_MINIMAL_POLY))
        inv = inv + [Fraction(0)] * (4 - len(inv))
        return FieldElement(*inv)

    def __truediv__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return FieldElement.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = ONE
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, k: int) -> "FieldElement":
        """
        伽罗瓦自同构 ζ ↦ ζᵏ（k 与 12 互素）
        """
        if gcd(k, 12) != 1:
            raise ValueError(f"k={k} 与 12 不互素")
        acc = [0, 0, 0, 0]
        for j, c in enumerate(self._num):
            if c:
                image = _ZETA_POWERS[(j * k) % 12]
                for t in range(4):
                    acc[t] += c * image[t]
        return FieldElement._raw(tuple(acc), self._den)

    def conjugate(self) -> "FieldElement":
        return self.galois(11)

    # ---------- 比较 ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sort_key(self) -> tuple:
        """
        确定性排序键（仅用于输出稳定，不具备代数意义）
        """
        return tuple(Fraction(n, self._den) for n in self._num)

    # ---------- 判定 ----------

    def root_of_unity_order(self) -> Optional[int]:
        """
        最小的 n ≤ 12 使 aⁿ = 1，不存在返回 None
        """
        power = ONE
        for n in range(1, self.ORDER + 1):
            power = power * self
            if power == ONE:
                return n
        return None

    def log_base(self, base: Union[int, Fraction], bound: int = 8) -> Optional[int]:
        """
        若 a = baseᵏ（|k| ≤ bound）返回 k，否则返回 None

        参数：
        - base: int | Fraction
          大于 1 的有理底数
        - bound: int
          搜索范围
        """
        base = Fraction(base)
        if base <= 1:
            raise ValueError(f"底数必须大于 1: {base}")
        if not self.is_rational():
            return None
        value = Fraction(self._num[0], self._den)
        for k in range(-bound, bound + 1):
            if base ** k == value:
                return k
        return None

    def zeta_exponent(self) -> Optional[int]:
        """
        若 a = ζᵏ（0 ≤ k < 12）返回 k
        """
        if self._den != 1:
            return None
        try:
            return _ZETA_POWERS.index(self._num)
        except ValueError:
            return None

    def polar(self) -> Optional[tuple[Fraction, int]]:
        """
        写成 r·ζᵏ（r > 0 有理）时返回 (r, k)，否则 None
        """
        if self.is_zero():
            return None
        for k in range(12):
            rotated = self * FieldElement.zeta_power(-k)
            if rotated.is_rational():
                r = rotated.to_rational()
                if r > 0:
                    return r, k
        return None

    def nth_root(self, d: int) -> Optional["FieldElement"]:
        """
        在「正有理数 × 单位根」范围内求 yᵈ = a

        参数：
        - d: int
          正整数次数

        返回：
        - FieldElement | None：找不到时返回 None（不做一般代数数开方）
        """
        if d < 1:
            raise ValueError(f"次数必须为正: {d}")
        if d == 1 or self.is_zero():
            return self
        polar = self.polar()
        if polar is None:
            return None
        r, k = polar
        num = _iroot(r.numerator, d)
        den = _iroot(r.denominator, d)
        if num is None or den is None:
            return None
        for j in range(12):
            if (j * d - k) % 12 == 0:
                return FieldElement.from_rational(Fraction(num, den)) * FieldElement.zeta_power(j)
        return None

    # ---------- 输出 ----------

    def to_strings(self) -> list[str]:
        """
        四个 "p/q" 字符串，顺序为 (c0, c1, c2, c3)
        """
        out = []
        for n in self._num:
            f = Fraction(n, self._den)
            out.append(f"{f.numerator}/{f.denominator}")
        return out

    def to_label(self) -> str:
        """
        论文记号：有理数、r·单位根（i、ω、ω² 等），其余按 ζ 多项式输出
        """
        if self.is_rational():
            return str(Fraction(self._num[0], self._den))
        polar = self.polar()
        if polar is not None:
            r, k = polar
            name = _ROOT_NAMES[k]
            sign = ""
            if name.startswith("-"):
                sign, name = "-", name[1:]
            return f"{sign}{name}" if r == 1 else f"{sign}{r}·{name}"
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            unit = ("", "ζ", "ζ²", "ζ³")[power]
            body = str(c) if not unit else (unit if c == 1 else ("-" + unit if c == -1 else f"{c}{unit}"))
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_label()

    def __repr__(self) -> str:
        return f"FieldElement({self.to_label()})"


ZERO = FieldElement._raw((0, 0, 0, 0), 1)
ONE = FieldElement._raw((1, 0, 0, 0), 1)
ZETA = FieldElement.zeta_power(1)
I = FieldElement.zeta_power(3)
OMEGA = FieldElement.zeta_power(4)


def roots_of_unity(order: int = 12) -> list[FieldElement]:
    """
    全部 order 次单位根（order 整除 12），按 ζ 指数递增
    """
    if 12 % order:
        raise ValueError(f"Q(ζ₁₂) 中没有 {order} 次本原单位根")
    step = 12 // order
    return [FieldElement.zeta_power(step * k) for k in range(order)]


__all__ = ["FieldElement", "ZERO", "ONE", "ZETA", "I", "OMEGA", "roots_of_unity", "Scalar"]
