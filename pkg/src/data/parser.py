"""
多项式表达式解析模块

文法：
    equation := expr ['=' expr]
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor (['*'] factor)*      整数与变量之间可以省略 '*'
    factor   := integer | var ['^' natural]
    var      := 'x' | 'y' | 'z' | 'w' | 'x' digits

别名 x, y, z, w 依次对应 x1..x4，同一表达式中不能混用别名与下标写法。
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.config import MAX_ARITY, MAX_EXPONENT, VARIABLE_ALIASES
from src.core.polynomial import IntPolynomial
from src.errors import ParseError

logger = logging.getLogger()

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+|[a-zA-Z]\w*)|(?P<op>[-+*^=−]))")

INT = "int"
VAR = "var"
OP = "op"
END = "end"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class ParsedInput:
    """解析结果：多项式、变量名表与原始文本"""

    polynomial: IntPolynomial
    variables: Tuple[str, ...]
    source: str

    def to_dict(self) -> Dict:
        return {
            "source": self.source,
            "canonical": self.polynomial.to_text(),
            "variables": list(self.variables),
            "polynomial": self.polynomial.to_dict(),
        }


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ParseError(f"无法识别的字符 {text[offset]!r}", offset)
        kind = match.lastgroup
        start = match.start(kind)
        value = match.group(kind)
        if kind == OP and value == "−":
            value = "-"
        tokens.append(Token(kind, value, start))
        position = match.end()
    tokens.append(Token(END, "", len(text)))
    return tokens


class _Parser:
    """递归下降解析器，单项式以 {变量下标: 指数} 表示"""

    def __init__(self, text: str):
        """初始化解析器

        Args:
            text: 表达式文本
        """
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.styles = set()
        self.max_index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _is_op(self, *ops: str) -> bool:
        return self.current.kind == OP and self.current.text in ops

    def _variable(self, token: Token) -> int:
        name = token.text
        if name in VARIABLE_ALIASES:
            style, index = "alias", VARIABLE_ALIASES.index(name) + 1
        elif re.fullmatch(r"x\d+", name):
            style, index = "indexed", int(name[1:])
            if index < 1:
                raise ParseError(f"变量下标从1开始: {name}", token.position)
        else:
            raise ParseError(f"未知的变量名 {name!r}", token.position)
        if index > MAX_ARITY:
            raise ParseError(f"变量个数超过上限 {MAX_ARITY}: {name}", token.position)
        self.styles.add(style)
        if len(self.styles) > 1:
            raise ParseError("不能混用 x, y, z, w 与 x1, x2, … 两种写法", token.position)
        self.max_index = max(self.max_index, index)
        return index

    def _factor(self, coefficient: int, exponents: Dict[int, int]) -> int:
        token = self.current
        if token.kind == INT:
            self._advance()
            return coefficient * int(token.text)
        if token.kind != VAR:
            what = "输入结束" if token.kind == END else repr(token.text)
            raise ParseError(f"此处需要整数或变量，却遇到 {what}", token.position)
        self._advance()
        index = self._variable(token)
        power = 1
        if self._is_op("^"):
            self._advance()
            exponent_token = self.current
            if exponent_token.kind != INT:
                raise ParseError("'^' 后面需要自然数指数", exponent_token.position)
            self._advance()
            power = int(exponent_token.text)
            if power > MAX_EXPONENT:
                raise ParseError(f"指数 {power} 超过上限 {MAX_EXPONENT}", exponent_token.position)
        exponents[index] += power
        if exponents[index] > MAX_EXPONENT:
            raise ParseError(f"指数超过上限 {MAX_EXPONENT}", token.position)
        return coefficient

    def _term(self, sign: int) -> Tuple[Dict[int, int], int]:
        exponents: Dict[int, int] = defaultdict(int)
        previous = self.current
        coefficient = self._factor(sign, exponents)
        while True:
            if self._is_op("*"):
                self._advance()
                previous = self.current
                coefficient = self._factor(coefficient, exponents)
            elif previous.kind == INT and self.current.kind == VAR:
                # 整数与变量之间的隐式乘法
                previous = self.current
                coefficient = self._factor(coefficient, exponents)
            elif self.current.kind in (INT, VAR):
                raise ParseError(f"缺少运算符，遇到 {self.current.text!r}", self.current.position)
            else:
                return dict(exponents), coefficient

    def _expression(self) -> List[Tuple[Dict[int, int], int]]:
        terms = []
        sign = 1
        if self._is_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
        terms.append(self._term(sign))
        while self._is_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
            terms.append(self._term(sign))
        return terms

    def parse(self) -> Tuple[List, Optional[List]]:
        if self.current.kind == END:
            raise ParseError("表达式为空", 0)
        left = self._expression()
        right = None
        if self._is_op("="):
            self._advance()
            right = self._expression()
        if self.current.kind != END:
            raise ParseError(f"多余的内容 {self.current.text!r}", self.current.position)
        return left, right


def parse_polynomial(text: str) -> ParsedInput:
    """把表达式解析为整系数多项式

    含一个 '=' 时取 左边 − 右边。变量个数取文本中出现过的最大下标，
    系数抵消为零的变量也计入。to_text 只写出非零项，因此其结果重新解析后
    变量个数可能变少。

    Args:
        text: 非空表达式，如 "x^2 - x*y + 3z" 或 "x + y = 3z"

    Returns:
        ParsedInput

    Raises:
        ParseError: 语法错误（带出错位置）、指数超限、变量个数超限、混用两种变量写法
    """
    if text is None or not text.strip():
        raise ParseError("表达式为空", 0)
    parser = _Parser(text)
    left, right = parser.parse()
    arity = max(parser.max_index, 1)

    terms: Dict[Tuple[int, ...], int] = defaultdict(int)
    for side, sign in ((left, 1), (right or [], -1)):
        for exponents, coefficient in side:
            key = tuple(exponents.get(i, 0) for i in range(1, arity + 1))
            terms[key] += sign * coefficient
    polynomial = IntPolynomial(arity, terms)

    if "alias" in parser.styles:
        variables = VARIABLE_ALIASES[:arity]
    else:
        variables = tuple(f"x{i}" for i in range(1, arity + 1))
    logger.debug(f"解析 {text!r} 得到 {polynomial.to_text()}")
    return ParsedInput(polynomial, tuple(variables), text)
