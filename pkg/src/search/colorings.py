"""
着色模块

规则着色：显式数组、模 m 剩余、q进制最后非零数字、q进制位数，以及经由 n², n³、
素因子个数 Ω(n) 或位数的拉回着色。颜色总是取 1..k。
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import sympy

logger = logging.getLogger()

KIND_EXPLICIT = "explicit"
KIND_RESIDUE = "residue"
KIND_LNZD = "lnzd"
KIND_DIGITS = "digits"
KIND_PULLBACK = "pullback"
KINDS = (KIND_EXPLICIT, KIND_RESIDUE, KIND_LNZD, KIND_DIGITS, KIND_PULLBACK)

INNER_SQUARE = "square"
INNER_CUBE = "cube"
INNER_OMEGA = "omega"
INNER_DIGIT_COUNT = "digit_count"
INNER_FUNCTIONS = (INNER_SQUARE, INNER_CUBE, INNER_OMEGA, INNER_DIGIT_COUNT)


def last_nonzero_digit(n: int, base: int) -> int:
    """n 的 base 进制表示中最后一个非零数字，n 须为正"""
    while n % base == 0:
        n //= base
    return n % base


def digit_count(n: int, base: int) -> int:
    """n 的 base 进制位数，n 须为正"""
    count = 0
    while n:
        n //= base
        count += 1
    return count


@lru_cache(maxsize=65536)
def prime_omega(n: int) -> int:
    """Ω(n)：计重数的素因子个数，Ω(1) = 0"""
    return int(sympy.primeomega(n)) if n > 1 else 0


@dataclass(frozen=True)
class Coloring:
    """基于规则的有限着色

    pullback 着色为 n ↦ outer(inner(n))；inner 可能取0（如 Ω(1) = 0）时，
    取0的数单独占用第 outer.colors + 1 种颜色。
    """

    kind: str
    modulus: int = 0
    base: int = 0
    table: Tuple[int, ...] = ()
    inner: Optional[str] = None
    inner_base: int = 0
    outer: Optional["Coloring"] = field(default=None, compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"未知的着色类型: {self.kind}")
        if self.kind == KIND_RESIDUE and self.modulus < 1:
            raise ValueError(f"模数必须为正: {self.modulus}")
        if self.kind == KIND_LNZD and self.base < 2:
            raise ValueError(f"进制必须至少为2: {self.base}")
        if self.kind == KIND_DIGITS and (self.base < 2 or self.modulus < 1):
            raise ValueError(f"位数着色参数错误: base={self.base}, k={self.modulus}")
        if self.kind == KIND_EXPLICIT:
            if not self.table or min(self.table) < 1:
                raise ValueError("显式着色的颜色必须取正整数")
        if self.kind == KIND_PULLBACK:
            if self.inner not in INNER_FUNCTIONS or self.outer is None:
                raise ValueError(f"拉回着色参数错误: inner={self.inner}")
            if self.inner == INNER_DIGIT_COUNT and self.inner_base < 2:
                raise ValueError(f"进制必须至少为2: {self.inner_base}")

    # ---- 构造 ----

    @classmethod
    def explicit(cls, colors: Sequence[int]) -> "Coloring":
        """colors[i] 为 i + 1 的颜色"""
        return cls(KIND_EXPLICIT, table=tuple(int(c) for c in colors))

    @classmethod
    def residue(cls, modulus: int) -> "Coloring":
        return cls(KIND_RESIDUE, modulus=modulus)

    @classmethod
    def lnzd(cls, base: int) -> "Coloring":
        return cls(KIND_LNZD, base=base)

    @classmethod
    def digits(cls, base: int, k: int) -> "Coloring":
        return cls(KIND_DIGITS, base=base, modulus=k)

    @classmethod
    def pullback(cls, inner: str, outer: "Coloring", inner_base: int = 0) -> "Coloring":
        return cls(KIND_PULLBACK, inner=inner, inner_base=inner_base, outer=outer)

    # ---- 取值 ----

    @property
    def colors(self) -> int:
        """颜色数 k"""
        if self.kind == KIND_EXPLICIT:
            return max(self.table)
        if self.kind == KIND_RESIDUE:
            return self.modulus
        if self.kind == KIND_LNZD:
            return self.base - 1
        if self.kind == KIND_DIGITS:
            return self.modulus
        return self.outer.colors + (1 if self.inner == INNER_OMEGA else 0)

    @property
    def domain(self) -> Optional[int]:
        """显式着色覆盖 [1..domain]，规则着色返回None（覆盖全部正整数）"""
        return len(self.table) if self.kind == KIND_EXPLICIT else None

    def covers(self, bound: int) -> bool:
        return self.domain is None or bound <= self.domain

    def _inner_value(self, n: int) -> int:
        if self.inner == INNER_SQUARE:
            return n * n
        if self.inner == INNER_CUBE:
            return n ** 3
        if self.inner == INNER_OMEGA:
            return prime_omega(n)
        return digit_count(n, self.inner_base)

    def color(self, n: int) -> int:
        """正整数 n 的颜色，取值 1..k"""
        if n < 1:
            raise ValueError(f"只能为正整数着色: {n}")
        if self.kind == KIND_EXPLICIT:
            if n > len(self.table):
                raise ValueError(f"{n} 超出显式着色的定义域 [1, {len(self.table)}]")
            return self.table[n - 1]
        if self.kind == KIND_RESIDUE:
            return n % self.modulus + 1
        if self.kind == KIND_LNZD:
            return last_nonzero_digit(n, self.base)
        if self.kind == KIND_DIGITS:
            return digit_count(n, self.base) % self.modulus + 1
        value = self._inner_value(n)
        if value == 0:
            return self.outer.colors + 1
        return self.outer.color(value)

    def array(self, bound: int) -> np.ndarray:
        """长度为 bound + 1 的颜色数组，下标0处为0"""
        if not self.covers(bound):
            raise ValueError(f"着色的定义域不覆盖 [1, {bound}]")
        result = np.zeros(bound + 1, dtype=np.int64)
        if self.kind == KIND_EXPLICIT:
            result[1:] = self.table[:bound]
        elif self.kind == KIND_RESIDUE:
            result[1:] = np.arange(1, bound + 1) % self.modulus + 1
        else:
            result[1:] = [self.color(n) for n in range(1, bound + 1)]
        return result

    # ---- 序列化 ----

    def to_rule(self) -> str:
        """紧凑规则字符串，如 residue:3、lnzd:5、digits:10:2、pullback:square:lnzd:5"""
        if self.kind == KIND_EXPLICIT:
            return "explicit:" + ",".join(str(c) for c in self.table)
        if self.kind == KIND_RESIDUE:
            return f"residue:{self.modulus}"
        if self.kind == KIND_LNZD:
            return f"lnzd:{self.base}"
        if self.kind == KIND_DIGITS:
            return f"digits:{self.base}:{self.modulus}"
        inner = self.inner if self.inner != INNER_DIGIT_COUNT else f"{self.inner}:{self.inner_base}"
        return f"pullback:{inner}:{self.outer.to_rule()}"

    def to_dict(self) -> Dict:
        if self.kind == KIND_EXPLICIT:
            return {"kind": self.kind, "colors": list(self.table)}
        if self.kind == KIND_RESIDUE:
            return {"kind": self.kind, "modulus": self.modulus}
        if self.kind == KIND_LNZD:
            return {"kind": self.kind, "base": self.base}
        if self.kind == KIND_DIGITS:
            return {"kind": self.kind, "base": self.base, "k": self.modulus}
        data = {"kind": self.kind, "inner": self.inner, "outer": self.outer.to_dict()}
        if self.inner == INNER_DIGIT_COUNT:
            data["inner_base"] = self.inner_base
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict) -> "Coloring":
        kind = data.get("kind")
        if kind == KIND_EXPLICIT:
            return cls.explicit(data["colors"])
        if kind == KIND_RESIDUE:
            return cls.residue(int(data["modulus"]))
        if kind == KIND_LNZD:
            return cls.lnzd(int(data["base"]))
        if kind == KIND_DIGITS:
            return cls.digits(int(data["base"]), int(data["k"]))
        if kind == KIND_PULLBACK:
            return cls.pullback(data["inner"], cls.from_dict(data["outer"]), int(data.get("inner_base", 0)))
        raise ValueError(f"未知的着色类型: {kind}")

    @classmethod
    def from_json(cls, text: str) -> "Coloring":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_rule(cls, rule: str) -> "Coloring":
        """解析规则字符串，也接受以 { 开头的JSON"""
        rule = rule.strip()
        if rule.startswith("{"):
            return cls.from_json(rule)
        tokens = [token.strip() for token in rule.split(":")]
        coloring, rest = _parse_tokens(tokens)
        if rest:
            raise ValueError(f"着色规则末尾有多余内容: {':'.join(rest)}")
        return coloring


def _int_token(tokens, name: str) -> Tuple[int, list]:
    if not tokens:
        raise ValueError(f"着色规则缺少参数 {name}")
    try:
        return int(tokens[0]), tokens[1:]
    except ValueError:
        raise ValueError(f"着色规则参数 {name} 不是整数: {tokens[0]}")


def _parse_tokens(tokens) -> Tuple[Coloring, list]:
    if not tokens or not tokens[0]:
        raise ValueError("着色规则为空")
    kind, rest = tokens[0], tokens[1:]
    if kind == KIND_EXPLICIT:
        if not rest:
            raise ValueError("显式着色缺少颜色列表")
        try:
            colors = [int(c) for c in rest[0].split(",")]
        except ValueError:
            raise ValueError(f"显式着色的颜色必须为整数: {rest[0]}")
        return Coloring.explicit(colors), rest[1:]
    if kind == KIND_RESIDUE:
        modulus, rest = _int_token(rest, "modulus")
        return Coloring.residue(modulus), rest
    if kind == KIND_LNZD:
        base, rest = _int_token(rest, "base")
        return Coloring.lnzd(base), rest
    if kind == KIND_DIGITS:
        base, rest = _int_token(rest, "base")
        k, rest = _int_token(rest, "k")
        return Coloring.digits(base, k), rest
    if kind == KIND_PULLBACK:
        if not rest or rest[0] not in INNER_FUNCTIONS:
            raise ValueError(f"拉回着色的内函数必须是 {INNER_FUNCTIONS} 之一")
        inner, rest = rest[0], rest[1:]
        inner_base = 0
        if inner == INNER_DIGIT_COUNT:
            inner_base, rest = _int_token(rest, "inner_base")
        outer, rest = _parse_tokens(rest)
        return Coloring.pullback(inner, outer, inner_base), rest
    raise ValueError(f"未知的着色类型: {kind}")
