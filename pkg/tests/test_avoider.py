"""
测试避免单色解的着色搜索
"""

import unittest

from src.core.polynomial import IntPolynomial
from src.data.parser import parse_polynomial
from src.search.avoider import (
    check_coloring_avoids, find_avoiding_coloring, solution_hyperedges,
)
from src.search.colorings import Coloring
from src.search.solutions import enumerate_solutions, monochromatic_solutions
from src.utils.logger import setup_logger


def poly(text: str) -> IntPolynomial:
    return parse_polynomial(text).polynomial


SCHUR = "x + y - z"


class TestSolutionHyperedges(unittest.TestCase):
    """测试solution_hyperedges函数"""

    def test_edges(self):
        """测试去重与排序"""
        edges = solution_hyperedges(enumerate_solutions(poly(SCHUR), 4))
        self.assertEqual(edges, [(1, 2), (2, 4), (1, 2, 3), (1, 3, 4)])


class TestFindAvoidingColoring(unittest.TestCase):
    """测试find_avoiding_coloring函数"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_schur_two_colors(self):
        """测试两色Schur数"""
        result = find_avoiding_coloring(poly(SCHUR), 2, 4)
        self.assertTrue(result.found)
        self.assertEqual(list(result.coloring.table), [1, 2, 2, 1])
        self.assertEqual(result.to_dict()["coloring"], [1, 2, 2, 1])

        result = find_avoiding_coloring(poly(SCHUR), 2, 5)
        self.assertFalse(result.found)
        self.assertNotIn("coloring", result.to_dict())

    def test_schur_three_colors(self):
        """测试三色Schur数"""
        P = poly(SCHUR)
        for bound in (12, 13):
            result = find_avoiding_coloring(P, 3, bound)
            self.assertTrue(result.found, bound)
            colors = result.coloring.array(bound)
            self.assertEqual(monochromatic_solutions(P, colors, bound), [])
            self.assertEqual(result.coloring.table[0], 1)
        self.assertFalse(find_avoiding_coloring(P, 3, 14).found)

    def test_canonical_form(self):
        """测试颜色按首次出现顺序编号"""
        result = find_avoiding_coloring(poly(SCHUR), 3, 13)
        self.assertTrue(result.found)
        used = 0
        for c in result.coloring.table:
            self.assertLessEqual(c, used + 1)
            used = max(used, c)

    def test_trivial_solutions(self):
        """测试常数解使任何着色失败"""
        result = find_avoiding_coloring(poly("x - y"), 2, 5)
        self.assertFalse(result.found)
        self.assertEqual(result.nodes, 0)

        result = find_avoiding_coloring(poly("x - y"), 2, 5, exclude_trivial=True)
        self.assertTrue(result.found)
        self.assertEqual(list(result.coloring.table), [1, 1, 1, 1, 1])

    def test_bad_colors(self):
        """测试颜色数不足"""
        with self.assertRaises(ValueError):
            find_avoiding_coloring(poly(SCHUR), 1, 4)


class TestCheckColoringAvoids(unittest.TestCase):
    """测试check_coloring_avoids函数"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_violation(self):
        """测试给出字典序最小的单色解"""
        check = check_coloring_avoids(poly(SCHUR), Coloring.residue(2), 6)
        self.assertFalse(check.avoids)
        self.assertEqual(check.violation.assignment, (2, 2, 4))
        self.assertEqual(check.to_dict()["violation"]["assignment"], [2, 2, 4])

    def test_explicit(self):
        """测试显式着色"""
        check = check_coloring_avoids(poly(SCHUR), Coloring.explicit([1, 2, 2, 1]), 4)
        self.assertTrue(check.avoids)
        self.assertIsNone(check.to_dict()["violation"])
        with self.assertRaises(ValueError):
            check_coloring_avoids(poly(SCHUR), Coloring.explicit([1, 2, 2, 1]), 5)
        with self.assertRaises(ValueError):
            check_coloring_avoids(poly(SCHUR), Coloring.residue(2), 0)

    def test_last_nonzero_digit(self):
        """测试最后非零数字着色避免 x + y = 3z"""
        check = check_coloring_avoids(poly("x + y - 3z"), Coloring.from_rule("lnzd:5"), 10000)
        self.assertTrue(check.avoids)

    def test_square_pullback(self):
        """测试经由 n² 的拉回着色"""
        check = check_coloring_avoids(poly("x^2 + y^2 - 3z^2"), Coloring.from_rule("pullback:square:lnzd:5"), 300)
        self.assertTrue(check.avoids)

    def test_omega_pullback(self):
        """测试经由 Ω(n) 的拉回着色避免 xy = z³ 的非常数解"""
        coloring = Coloring.from_rule("pullback:omega:lnzd:5")
        check = check_coloring_avoids(poly("x*y - z^3"), coloring, 10000, exclude_trivial=True)
        self.assertTrue(check.avoids)

        check = check_coloring_avoids(poly("x*y - z^3"), coloring, 100)
        self.assertFalse(check.avoids)
        self.assertEqual(check.violation.assignment, (1, 1, 1))


if __name__ == '__main__':
    unittest.main()
