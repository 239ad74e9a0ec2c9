"""
多元整系数多项式模块，负责支撑集、平移、对角多项式、Taylor系数与极值指标
"""

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from src.errors import UnsupportedPolynomialError
from src.utils.helpers import integer_content

logger = logging.getLogger()

Number = Union[int, Fraction]

# 单变量多项式使用的符号
W = sympy.Symbol("w")


@dataclass(frozen=True)
class MultiIndex:
    """多重指标 α，即固定长度的非负整数元组"""

    exponents: Tuple[int, ...]

    def __post_init__(self):
        exponents = tuple(int(e) for e in self.exponents)
        if not exponents:
            raise ValueError("多重指标的长度必须为正")
        if any(e < 0 for e in exponents):
            raise ValueError(f"多重指标的分量必须非负: {exponents}")
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def zero(cls, arity: int) -> "MultiIndex":
        return cls((0,) * arity)

    @classmethod
    def unit(cls, index: int, arity: int) -> "MultiIndex":
        exponents = [0] * arity
        exponents[index] = 1
        return cls(tuple(exponents))

    @property
    def arity(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        """|α|，各分量之和"""
        return sum(self.exponents)

    @property
    def length(self) -> int:
        """ℓ(α)，正分量的个数（Hamming长度）"""
        return sum(1 for e in self.exponents if e > 0)

    def is_below(self, other: "MultiIndex") -> bool:
        """逐分量偏序 α ≤ β"""
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def difference(self, other: "MultiIndex") -> Tuple[int, ...]:
        """α − β，结果可能含负分量，因此返回普通元组"""
        return tuple(a - b for a, b in zip(self.exponents, other.exponents))

    def sort_key(self) -> Tuple:
        """分级字典序（降序）的排序键"""
        return (-self.degree, tuple(-e for e in self.exponents))

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)

    def __repr__(self) -> str:
        return f"MultiIndex{self.exponents}"


def degree_length(alpha: MultiIndex) -> Tuple[int, int]:
    """返回 (|α|, ℓ(α))

    Args:
        alpha: 多重指标

    Returns:
        次数与Hamming长度
    """
    return alpha.degree, alpha.length


def _as_index(key: Union[MultiIndex, Sequence[int]]) -> MultiIndex:
    return key if isinstance(key, MultiIndex) else MultiIndex(tuple(key))


def _multi_binomial(alpha: MultiIndex, beta: MultiIndex) -> int:
    """C(α, β) = Π C(α_i, β_i)"""
    result = 1
    for a, b in zip(alpha.exponents, beta.exponents):
        result *= math.comb(a, b)
    return result


def _indices_below(alpha: MultiIndex) -> Iterator[MultiIndex]:
    for exponents in itertools.product(*(range(a + 1) for a in alpha.exponents)):
        yield MultiIndex(exponents)


def _monomial_text(alpha: MultiIndex) -> str:
    factors = []
    for i, e in enumerate(alpha.exponents, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    return "*".join(factors)


class IntPolynomial:
    """以多重指标为键的多元整系数多项式，构造后不可变

    系数为任意精度整数，不存储零系数。
    """

    __slots__ = ("_arity", "_terms", "_hash")

    def __init__(self, arity: int,
                 terms: Optional[Mapping[Union[MultiIndex, Sequence[int]], int]] = None):
        """初始化多项式

        Args:
            arity: 变量个数 n
            terms: 指标到系数的映射，重复指标的系数会累加，零系数会被丢弃
        """
        if int(arity) < 1:
            raise ValueError(f"变量个数必须为正: {arity}")
        self._arity = int(arity)
        accumulated: Dict[MultiIndex, int] = defaultdict(int)
        for key, coefficient in (terms or {}).items():
            index = _as_index(key)
            if index.arity != self._arity:
                raise ValueError(f"指标 {index.exponents} 与变量个数 {self._arity} 不符")
            if isinstance(coefficient, Fraction):
                if coefficient.denominator != 1:
                    raise ValueError(f"系数必须为整数: {coefficient}")
                coefficient = coefficient.numerator
            accumulated[index] += int(coefficient)
        self._terms = {index: c for index, c in accumulated.items() if c != 0}
        self._hash = None

    # ---- 构造 ----

    @classmethod
    def zero(cls, arity: int) -> "IntPolynomial":
        return cls(arity)

    @classmethod
    def constant(cls, value: int, arity: int) -> "IntPolynomial":
        return cls(arity, {MultiIndex.zero(arity): value})

    @classmethod
    def variable(cls, index: int, arity: int) -> "IntPolynomial":
        """第 index 个变量（从0开始）"""
        return cls(arity, {MultiIndex.unit(index, arity): 1})

    # ---- 访问 ----

    @property
    def arity(self) -> int:
        return self._arity

    def coefficient(self, alpha: Union[MultiIndex, Sequence[int]]) -> int:
        return self._terms.get(_as_index(alpha), 0)

    def items(self) -> List[Tuple[MultiIndex, int]]:
        """按分级字典序排列的 (指标, 系数) 列表"""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def support(self) -> FrozenSet[MultiIndex]:
        return frozenset(self._terms)

    def sorted_support(self) -> Tuple[MultiIndex, ...]:
        return tuple(alpha for alpha, _ in self.items())

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """总次数，零多项式返回 -1"""
        return max((alpha.degree for alpha in self._terms), default=-1)

    def constant_term(self) -> int:
        return self.coefficient(MultiIndex.zero(self._arity))

    def is_homogeneous(self) -> bool:
        return len({alpha.degree for alpha in self._terms}) <= 1

    def used_variables(self) -> Tuple[int, ...]:
        """实际出现的变量下标（从0开始）"""
        return tuple(i for i in range(self._arity)
                     if any(alpha.exponents[i] for alpha in self._terms))

    def content(self) -> int:
        return integer_content(self._terms.values())

    def primitive(self) -> "IntPolynomial":
        """去掉内容，并使分级字典序首项系数为正"""
        if self.is_zero():
            return self
        g = self.content()
        sign = -1 if self.items()[0][1] < 0 else 1
        return IntPolynomial(self._arity, {a: sign * (c // g) for a, c in self._terms.items()})

    def evaluate(self, point: Sequence[Number]) -> Number:
        """在给定点处精确求值

        Args:
            point: 长度为 n 的整数或有理数序列

        Returns:
            多项式的值
        """
        if len(point) != self._arity:
            raise ValueError(f"求值点的维数 {len(point)} 与变量个数 {self._arity} 不符")
        total = 0
        for alpha, c in self._terms.items():
            term = c
            for x, e in zip(point, alpha.exponents):
                if e:
                    term *= x ** e
            total += term
        return total

    def with_arity(self, arity: int) -> "IntPolynomial":
        """补零扩展到更多变量"""
        if arity < self._arity:
            if any(any(alpha.exponents[arity:]) for alpha in self._terms):
                raise ValueError(f"无法把多项式缩减到 {arity} 个变量")
            return IntPolynomial(arity, {alpha.exponents[:arity]: c for alpha, c in self._terms.items()})
        pad = (0,) * (arity - self._arity)
        return IntPolynomial(arity, {alpha.exponents + pad: c for alpha, c in self._terms.items()})

    def rename(self, order: Sequence[int]) -> "IntPolynomial":
        """变量重命名：新多项式的第 i 个变量是原来的第 order[i] 个变量"""
        if sorted(order) != list(range(self._arity)):
            raise ValueError(f"不是变量的排列: {order}")
        terms = {}
        for alpha, c in self._terms.items():
            exponents = [0] * self._arity
            for new_position, old_position in enumerate(order):
                exponents[new_position] = alpha.exponents[old_position]
            terms[tuple(exponents)] = c
        return IntPolynomial(self._arity, terms)

    # ---- 算术 ----

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            if other.arity != self._arity:
                raise ValueError("变量个数不同的多项式不能直接运算")
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other, self._arity)
        return NotImplemented

    def __add__(self, other) -> "IntPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for alpha, c in other._terms.items():
            terms[alpha] = terms.get(alpha, 0) + c
        return IntPolynomial(self._arity, terms)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self._arity, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other) -> "IntPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "IntPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "IntPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[MultiIndex, int] = defaultdict(int)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                terms[a + b] += ca * cb
        return IntPolynomial(self._arity, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("指数必须非负")
        result = IntPolynomial.constant(1, self._arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._arity == other._arity and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    # ---- 文本与序列化 ----

    def to_text(self) -> str:
        """规范文本形式：分级字典序、变量名 x1..xn、显式 * 与 ^"""
        if self.is_zero():
            return "0"
        pieces = []
        for position, (alpha, c) in enumerate(self.items()):
            monomial = _monomial_text(alpha)
            magnitude = abs(c)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if position == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def to_dict(self) -> Dict:
        return {
            "arity": self._arity,
            "terms": [[list(alpha.exponents), c] for alpha, c in self.items()],
        }

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"IntPolynomial({self._arity}, '{self.to_text()}')"


@dataclass(frozen=True)
class MonovariatePoly:
    """单变量整系数多项式，coefficients[k] 为 w^k 的系数"""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coefficients = [int(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def monomial(cls, coefficient: int, power: int) -> "MonovariatePoly":
        return cls((0,) * power + (coefficient,))

    @classmethod
    def from_roots(cls, roots: Iterable[int], leading: int = 1) -> "MonovariatePoly":
        result = cls((leading,))
        for r in roots:
            result = result * cls((-r, 1))
        return result

    @property
    def degree(self) -> int:
        """次数，零多项式为 -1"""
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self, w: Number) -> Number:
        """Horner法精确求值"""
        result = 0
        for c in reversed(self.coefficients):
            result = result * w + c
        return result

    def derivative(self) -> "MonovariatePoly":
        return MonovariatePoly(tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def content(self) -> int:
        return integer_content(self.coefficients)

    def primitive(self) -> "MonovariatePoly":
        if self.is_zero():
            return self
        g = self.content()
        return MonovariatePoly(tuple(c // g for c in self.coefficients))

    def shift(self, r: int) -> "MonovariatePoly":
        """Q(w + r)"""
        result = MonovariatePoly()
        power = MonovariatePoly((1,))
        step = MonovariatePoly((r, 1))
        for c in self.coefficients:
            result = result + power * c
            power = power * step
        return result

    def __add__(self, other: "MonovariatePoly") -> "MonovariatePoly":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (size - len(self.coefficients))
        b = other.coefficients + (0,) * (size - len(other.coefficients))
        return MonovariatePoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "MonovariatePoly":
        return MonovariatePoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "MonovariatePoly") -> "MonovariatePoly":
        return self + (-other)

    def __mul__(self, other) -> "MonovariatePoly":
        if isinstance(other, int):
            return MonovariatePoly(tuple(other * c for c in self.coefficients))
        if not self.coefficients or not other.coefficients:
            return MonovariatePoly()
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return MonovariatePoly(tuple(product))

    __rmul__ = __mul__

    def to_sympy(self) -> sympy.Poly:
        """转换为有理数域上的sympy多项式"""
        return sympy.Poly(list(reversed(self.coefficients)) or [0], W, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "MonovariatePoly":
        """从整系数sympy多项式转换"""
        coefficients = [int(c) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coefficients))

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            if power == 0:
                body = str(abs(c))
            else:
                monomial = "w" if power == 1 else f"w^{power}"
                body = monomial if abs(c) == 1 else f"{abs(c)}*{monomial}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class TransformResult:
    """transform 的结果：整系数多项式与清分母时乘上的因子"""

    polynomial: IntPolynomial
    kind: str
    r: int
    multiplier: int = 1


TRANSFORM_KINDS = ("shift", "scale", "scale-inverse")


def support(P: IntPolynomial) -> FrozenSet[MultiIndex]:
    """Supp(P)，系数非零的指标集合"""
    return P.support()


def shift(P: IntPolynomial, r: int) -> IntPolynomial:
    """P^(r)(x) = P(x_1 + r, …, x_n + r)

    按展开式 P^(r) = Σ_β (Σ_{α≥β} c_α C(α,β) r^{|α|−|β|}) x^β 计算。

    Args:
        P: 多项式
        r: 平移量

    Returns:
        平移后的多项式
    """
    if r == 0:
        return P
    terms: Dict[MultiIndex, int] = defaultdict(int)
    for alpha, c in P.items():
        for beta in _indices_below(alpha):
            terms[beta] += c * _multi_binomial(alpha, beta) * r ** (alpha.degree - beta.degree)
    return IntPolynomial(P.arity, terms)


def taylor_coefficient(P: IntPolynomial, beta: Union[MultiIndex, Sequence[int]], r: int) -> int:
    """(1/β!)·∂^β P 在 (r,…,r) 处的值，即 P^(r) 中 x^β 的系数

    Args:
        P: 多项式
        beta: 多重指标，长度须与 P 的变量个数一致
        r: 展开点

    Returns:
        整数系数
    """
    beta = _as_index(beta)
    if beta.arity != P.arity:
        raise ValueError(f"指标 {beta.exponents} 与变量个数 {P.arity} 不符")
    total = 0
    for alpha, c in P.items():
        if beta.is_below(alpha):
            total += c * _multi_binomial(alpha, beta) * r ** (alpha.degree - beta.degree)
    return total


def diagonal(P: IntPolynomial) -> MonovariatePoly:
    """对角多项式 P~(w) = P(w, …, w)"""
    degree = max(P.total_degree(), 0)
    coefficients = [0] * (degree + 1)
    for alpha, c in P.items():
        coefficients[alpha.degree] += c
    return MonovariatePoly(tuple(coefficients))


def extremal_indices(P: IntPolynomial) -> Tuple[FrozenSet[MultiIndex], FrozenSet[MultiIndex]]:
    """支撑集在逐分量偏序下的极小指标与极大指标

    Args:
        P: 非零多项式

    Returns:
        (极小指标集合, 极大指标集合)
    """
    if P.is_zero():
        raise UnsupportedPolynomialError("零多项式没有极值指标")
    indices = P.sorted_support()
    minimal = frozenset(
        alpha for alpha in indices
        if not any(beta != alpha and beta.is_below(alpha) for beta in indices)
    )
    maximal = frozenset(
        alpha for alpha in indices
        if not any(beta != alpha and alpha.is_below(beta) for beta in indices)
    )
    return minimal, maximal


def transform(P: IntPolynomial, kind: str, r: int) -> TransformResult:
    """平移或伸缩变换

    scale-inverse 得到的 P(x/r) 一般是有理系数，乘以使系数全为整数的最小 r 的幂，
    并把这个因子记在结果里。

    Args:
        P: 多项式
        kind: "shift"、"scale" 或 "scale-inverse"
        r: 变换参数，伸缩类变换要求非零

    Returns:
        变换结果
    """
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"未知的变换类型: {kind}")
    if kind == "shift":
        return TransformResult(shift(P, r), kind, r)
    if r == 0:
        raise ValueError("伸缩变换的参数不能为0")
    if kind == "scale":
        return TransformResult(
            IntPolynomial(P.arity, {alpha: c * r ** alpha.degree for alpha, c in P.items()}),
            kind, r,
        )

    # 找最小的 k，使 c_α · r^{k−|α|} 全为整数
    top = max(P.total_degree(), 0)
    for k in range(top + 1):
        if all(alpha.degree <= k or c % r ** (alpha.degree - k) == 0 for alpha, c in P.items()):
            break
    terms = {}
    for alpha, c in P.items():
        if alpha.degree <= k:
            terms[alpha] = c * r ** (k - alpha.degree)
        else:
            terms[alpha] = c // r ** (alpha.degree - k)
    logger.debug(f"scale-inverse 清分母因子 r^{k} = {r ** k}")
    return TransformResult(IntPolynomial(P.arity, terms), kind, r, r ** k)
