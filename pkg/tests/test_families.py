"""
测试已知方程族的识别
"""

import itertools
import unittest

from src.core.conditions import definitive_minimal_failure
from src.core.families import (
    FAMILY_CONFIGURATION, FAMILY_PRODUCT, FAMILY_SQUARES, NOT_PARTITION_REGULAR, PARTITION_REGULAR,
    classify_family,
)
from src.core.polynomial import IntPolynomial, diagonal
from src.data.parser import parse_polynomial
from src.utils.logger import setup_logger


def poly(text: str) -> IntPolynomial:
    return parse_polynomial(text).polynomial


def product_family(a: int, b: int, c: int) -> IntPolynomial:
    """x² − xy + ax + by + cz"""
    return IntPolynomial(3, {(2, 0, 0): 1, (1, 1, 0): -1, (1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def squares_family(a: int, b: int, c: int) -> IntPolynomial:
    """x² − y² + ax + by + cz"""
    return IntPolynomial(3, {(2, 0, 0): 1, (0, 2, 0): -1, (1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


class TestClassifyFamily(unittest.TestCase):
    """测试classify_family函数"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_examples(self):
        """测试具体例子"""
        match = classify_family(poly("x^2 - x*y + z"))
        self.assertTrue(match.matched)
        self.assertEqual(match.family, FAMILY_PRODUCT)
        self.assertEqual(match.parameters, {"a": 0, "b": 0, "c": 1})
        self.assertEqual(match.verdict, PARTITION_REGULAR)

        match = classify_family(poly("x^2 - y^2 + x - y"))
        self.assertTrue(match.matched)
        self.assertEqual(match.family, FAMILY_SQUARES)
        self.assertEqual(match.parameters, {"a": 1, "b": -1, "c": 0})
        self.assertEqual(match.verdict, PARTITION_REGULAR)

    def test_renaming_and_sign(self):
        """测试变量重命名与整体变号"""
        match = classify_family(poly("y*z - z^2 - 2y"))
        self.assertTrue(match.matched)
        self.assertEqual(match.family, FAMILY_PRODUCT)
        self.assertEqual(match.verdict, NOT_PARTITION_REGULAR)

    def test_open_problems(self):
        """测试尚未解决的情形"""
        match = classify_family(poly("x^2 - 2x*y + x - y + z"))
        self.assertFalse(match.matched)
        self.assertEqual(match.note, "open problem")
        self.assertEqual(match.parameters, {"a": 1, "b": 1})

        match = classify_family(poly("x^2 - x*y + x - y + z"))
        self.assertFalse(match.matched)
        self.assertEqual(match.note, "open problem")
        self.assertIsNone(match.verdict)

    def test_outside_hypothesis(self):
        """测试不满足 abc = 0 或 a + b + c = 0 的情形"""
        match = classify_family(product_family(1, 2, 3))
        self.assertFalse(match.matched)
        self.assertEqual(match.note, "outside the family hypothesis")

    def test_squares_without_linear_terms(self):
        """测试 x² − y² + cz 因零和极小块 {x², y²} 判为正则"""
        for c in (2, -1, 5):
            match = classify_family(squares_family(0, 0, c))
            self.assertTrue(match.matched)
            self.assertEqual(match.family, FAMILY_SQUARES)
            self.assertEqual(match.verdict, PARTITION_REGULAR)
            self.assertFalse(definitive_minimal_failure(squares_family(0, 0, c)))

        match = classify_family(poly("x^2 - y^2 + z"))
        self.assertTrue(match.matched)
        self.assertEqual(match.parameters, {"a": 0, "b": 0, "c": 1})
        self.assertEqual(match.verdict, PARTITION_REGULAR)

    def test_configuration_family(self):
        """测试 x^d(x − y) + p(x, z) 族"""
        match = classify_family(poly("x^3 - x^2*y + x*z - z^2"))
        self.assertTrue(match.matched)
        self.assertEqual(match.family, FAMILY_CONFIGURATION)
        self.assertEqual(match.parameters, {"d": 2, "a0": 0, "a1": 1, "a2": -1})
        self.assertEqual(match.verdict, PARTITION_REGULAR)

        match = classify_family(poly("x^3 - x^2*y + x^2 - z^2"))
        self.assertTrue(match.matched)
        self.assertEqual(match.verdict, PARTITION_REGULAR)

        self.assertFalse(classify_family(poly("x^3 - x^2*y + x^2 + z^2")).matched)

    def test_no_match(self):
        """测试不属于任何族的多项式"""
        for text in ("x + y - 3z", "x*y - z^3", "x1 + x2 + x3 - x4"):
            match = classify_family(poly(text))
            self.assertFalse(match.matched)
            self.assertIsNone(match.family)
        self.assertFalse(classify_family(IntPolynomial.zero(2)).matched)

    def test_grid_agrees_with_conditions(self):
        """测试族内结论与极小条件的确定失败一致"""
        for a, b, c in itertools.product(range(-4, 5), repeat=3):
            if a * b * c != 0 and a + b + c != 0:
                continue
            for build in (product_family, squares_family):
                P = build(a, b, c)
                match = classify_family(P)
                if not match.matched:
                    continue
                if diagonal(P).is_zero():
                    self.assertEqual(match.verdict, PARTITION_REGULAR)
                    continue
                refuted = definitive_minimal_failure(P)
                self.assertEqual(match.verdict == NOT_PARTITION_REGULAR, refuted,
                                 f"{build.__name__} a={a}, b={b}, c={c}")

    def test_to_dict(self):
        """测试序列化"""
        data = classify_family(poly("x^2 - x*y + z")).to_dict()
        self.assertEqual(data["verdict"], PARTITION_REGULAR)
        self.assertEqual(data["renaming"], [0, 1, 2])


if __name__ == '__main__':
    unittest.main()
