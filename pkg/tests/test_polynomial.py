"""
测试多项式模块
"""

import itertools
import numpy as np
import unittest

from src.config import config
from src.core.polynomial import (IntPolynomial, MonovariatePoly, MultiIndex, degree_length, diagonal,
                                 extremal_indices, shift, support, taylor_coefficient, transform)
from src.errors import UnsupportedPolynomialError
from src.utils.logger import setup_logger


def P4():
    """−x3 − x4 + x1x2 + x1x2²"""
    return IntPolynomial(4, {(0, 0, 1, 0): -1, (0, 0, 0, 1): -1, (1, 1, 0, 0): 1, (1, 2, 0, 0): 1})


def random_polynomial(rng: np.random.Generator, arity: int = 3, degree: int = 3) -> IntPolynomial:
    """次数不超过 degree、系数在 [−9, 9] 内的随机多项式"""
    indices = [alpha for alpha in itertools.product(range(degree + 1), repeat=arity) if sum(alpha) <= degree]
    chosen = rng.choice(len(indices), size=int(rng.integers(1, 7)), replace=False)
    return IntPolynomial(arity, {indices[i]: int(rng.integers(-9, 10)) for i in chosen})


def substituted(P: IntPolynomial, r: int) -> IntPolynomial:
    """逐项代入 x_i + r 再展开，作为平移的独立参照"""
    result = IntPolynomial.zero(P.arity)
    for alpha, c in P.items():
        term = IntPolynomial.constant(c, P.arity)
        for i, e in enumerate(alpha.exponents):
            term = term * (IntPolynomial.variable(i, P.arity) + r) ** e
        result = result + term
    return result


class TestPolynomial(unittest.TestCase):
    """测试多项式的基本运算"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")
        self.rng = np.random.default_rng(config.get("testing", "seed"))

    def test_support(self):
        """测试支撑集"""
        expected = {MultiIndex(e) for e in [(0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 0, 0), (1, 2, 0, 0)]}
        self.assertEqual(set(support(P4())), expected)
        self.assertEqual(set(support(IntPolynomial.zero(3))), set())

        linear = IntPolynomial(3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -3})
        self.assertEqual(set(support(linear)), {MultiIndex((1, 0, 0)), MultiIndex((0, 1, 0)), MultiIndex((0, 0, 1))})

    def test_zero_coefficients_are_dropped(self):
        """测试运算后不会保留零系数"""
        x = IntPolynomial.variable(0, 2)
        y = IntPolynomial.variable(1, 2)
        P = (x + y) * (x - y) + y * y
        self.assertEqual(set(support(P)), {MultiIndex((2, 0))})
        self.assertTrue((x - x).is_zero())

    def test_degree_length(self):
        """测试次数与Hamming长度"""
        self.assertEqual(degree_length(MultiIndex((1, 2, 0, 0))), (3, 2))
        self.assertEqual(degree_length(MultiIndex((0, 0, 0, 0))), (0, 0))
        self.assertEqual(degree_length(MultiIndex((1, 1, 0, 0))), (2, 2))

    def test_shift_examples(self):
        """测试平移的具体例子"""
        P = IntPolynomial(2, {(2, 0): 1, (0, 2): 1, (1, 1): -1, (0, 1): -1})
        self.assertEqual(shift(P, 0), P)

        # x² 平移1得到 x² + 2x + 1
        Q = IntPolynomial(1, {(2,): 1})
        self.assertEqual(shift(Q, 1), IntPolynomial(1, {(2,): 1, (1,): 2, (0,): 1}))

    def test_shift_matches_substitution(self):
        """测试平移与逐项代入展开一致"""
        for _ in range(40):
            P = random_polynomial(self.rng)
            r = int(self.rng.integers(-3, 4))
            self.assertEqual(shift(P, r), substituted(P, r))

    def test_shift_composition(self):
        """测试平移的复合"""
        for _ in range(20):
            P = random_polynomial(self.rng)
            r, s = int(self.rng.integers(-3, 4)), int(self.rng.integers(-3, 4))
            self.assertEqual(shift(shift(P, r), s), shift(P, r + s))

    def test_taylor_coefficient(self):
        """测试Taylor系数"""
        a, b, c = 2, 3, 5
        P = IntPolynomial(3, {(2, 0, 0): 1, (1, 1, 0): -1, (1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
        self.assertEqual(taylor_coefficient(P, (1, 0, 0), b), a + b)
        self.assertEqual(taylor_coefficient(P, (0, 0, 0), 4), diagonal(P).evaluate(4))

        with self.assertRaises(ValueError):
            taylor_coefficient(P, (1, 0), 1)

    def test_taylor_coefficient_matches_shift(self):
        """测试Taylor系数与平移后的系数一致"""
        for _ in range(30):
            P = random_polynomial(self.rng)
            r = int(self.rng.integers(-3, 4))
            shifted = shift(P, r)
            for beta in itertools.product(range(3), repeat=3):
                self.assertEqual(taylor_coefficient(P, beta, r), shifted.coefficient(beta))

    def test_diagonal(self):
        """测试对角多项式"""
        P = IntPolynomial(3, {(2, 0, 0): 1, (1, 1, 0): -1, (1, 0, 0): 2, (0, 1, 0): 3, (0, 0, 1): 5})
        self.assertEqual(diagonal(P), MonovariatePoly((0, 10)))

        # xy − z³
        Q = IntPolynomial(3, {(1, 1, 0): 1, (0, 0, 3): -1})
        self.assertEqual(diagonal(Q), MonovariatePoly((0, 0, 1, -1)))

        # 齐次多项式的对角是 (Σc)·w^d
        H = IntPolynomial(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -3})
        self.assertEqual(diagonal(H), MonovariatePoly((0, 0, -1)))

    def test_diagonal_of_shift(self):
        """测试平移后的对角多项式等于对角多项式的平移"""
        for _ in range(20):
            P = random_polynomial(self.rng)
            r = int(self.rng.integers(-3, 4))
            self.assertEqual(diagonal(shift(P, r)), diagonal(P).shift(r))

    def test_extremal_indices(self):
        """测试极小与极大指标"""
        minimal, maximal = extremal_indices(P4())
        self.assertEqual(minimal, {MultiIndex(e) for e in [(1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]})
        self.assertEqual(maximal, {MultiIndex(e) for e in [(1, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]})

        Q = IntPolynomial(3, {(1, 1, 0): 1, (0, 0, 3): -1})
        minimal, maximal = extremal_indices(Q)
        self.assertEqual(minimal, Q.support())
        self.assertEqual(maximal, Q.support())

        with self.assertRaises(UnsupportedPolynomialError):
            extremal_indices(IntPolynomial.zero(2))

    def test_extremal_indices_bound_support(self):
        """测试每个指标都介于某个极小指标与某个极大指标之间"""
        for _ in range(20):
            P = random_polynomial(self.rng)
            if P.is_zero():
                continue
            minimal, maximal = extremal_indices(P)
            for alpha in P.support():
                self.assertTrue(any(m.is_below(alpha) for m in minimal))
                self.assertTrue(any(alpha.is_below(m) for m in maximal))

    def test_transform(self):
        """测试平移与伸缩变换"""
        linear = IntPolynomial(3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -1})
        scaled = transform(linear, "scale", 2)
        self.assertEqual(scaled.polynomial, linear * 2)
        self.assertEqual(scaled.polynomial.primitive(), linear)

        P = IntPolynomial(2, {(2, 0): 1, (0, 2): -1, (1, 0): 4})
        result = transform(P, "scale-inverse", 2)
        self.assertEqual(result.polynomial, IntPolynomial(2, {(2, 0): 1, (0, 2): -1, (1, 0): 8}))
        self.assertEqual(result.multiplier, 4)

        back = transform(transform(P, "shift", 3).polynomial, "shift", -3)
        self.assertEqual(back.polynomial, P)

        with self.assertRaises(ValueError):
            transform(P, "scale", 0)
        with self.assertRaises(ValueError):
            transform(P, "rotate", 1)

    def test_to_text(self):
        """测试规范文本形式"""
        self.assertEqual(P4().to_text(), "x1*x2^2 + x1*x2 - x3 - x4")
        self.assertEqual(IntPolynomial.zero(2).to_text(), "0")


class TestMonovariatePoly(unittest.TestCase):
    """测试单变量多项式"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_trailing_zeros(self):
        """测试首项系数非零"""
        Q = MonovariatePoly((1, 2, 0, 0))
        self.assertEqual(Q.degree, 1)
        self.assertEqual(Q.leading_coefficient, 2)
        self.assertTrue(MonovariatePoly((0, 0)).is_zero())

    def test_from_roots(self):
        """测试由根构造"""
        Q = MonovariatePoly.from_roots([1, -2])
        self.assertEqual(Q, MonovariatePoly((-2, 1, 1)))
        self.assertEqual(Q.evaluate(1), 0)
        self.assertEqual(Q.evaluate(-2), 0)
        self.assertEqual(Q.to_text(), "w^2 + w - 2")


if __name__ == '__main__':
    unittest.main()
