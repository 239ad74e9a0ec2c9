"""
测试Rado条件检验模块
"""

import itertools
import unittest

from src.config import Config
from src.core.conditions import (
    FAILS_DEFINITIVELY, HOLDS, INCONCLUSIVE, AnalysisConfig, analyze, check_maximal, check_minimal,
    definitive_minimal_failure, minimal_failure_audit,
)
from src.core.families import NOT_PARTITION_REGULAR, PARTITION_REGULAR
from src.core.polynomial import IntPolynomial, MultiIndex
from src.data.parser import parse_polynomial
from src.errors import UnsupportedPolynomialError
from src.utils.helpers import has_zero_subset_sum
from src.utils.logger import setup_logger

PRIMES = [2, 3, 5, 7, 11, 13]


def poly(text: str) -> IntPolynomial:
    return parse_polynomial(text).polynomial


def linear(*coefficients):
    arity = len(coefficients)
    return IntPolynomial(arity, {MultiIndex.unit(i, arity): c for i, c in enumerate(coefficients)})


def first_example(a: int, b: int) -> IntPolynomial:
    """x² + y² − xy − ax − by + ab"""
    return IntPolynomial(2, {(2, 0): 1, (0, 2): 1, (1, 1): -1, (1, 0): -a, (0, 1): -b, (0, 0): a * b})


def second_example(a: int, b: int) -> IntPolynomial:
    """x² − y² + xy − ax − by + ab"""
    return IntPolynomial(2, {(2, 0): 1, (0, 2): -1, (1, 1): 1, (1, 0): -a, (0, 1): -b, (0, 0): a * b})


class TestMaximalCondition(unittest.TestCase):
    """测试极大Rado条件"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_sum_of_squares_fails(self):
        """测试 x² + y² − 3z² 在每个底数上确定失败"""
        results = check_maximal(poly("x^2 + y^2 - 3z^2"), range(2, 8), 6)
        self.assertEqual(sorted(results), list(range(2, 8)))
        for q, result in results.items():
            self.assertEqual(result.status, FAILS_DEFINITIVELY)
            self.assertIsNone(result.candidate)
            self.assertGreater(result.audited, 0)

    def test_difference_holds(self):
        """测试 x − y 的极大条件成立"""
        for q, result in check_maximal(poly("x - y"), [2, 3, 5], 6).items():
            self.assertEqual(result.status, HOLDS)
            self.assertTrue(result.polynomial.is_zero())

    def test_family_holds(self):
        """测试 x² − xy + ax + by + cz 的极大条件成立"""
        for a, b, c in [(2, 3, 5), (1, -1, 1), (0, 0, 1), (-3, 1, 4)]:
            P = IntPolynomial(3, {(2, 0, 0): 1, (1, 1, 0): -1, (1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
            for q, result in check_maximal(P, range(2, 8), 6).items():
                self.assertEqual(result.status, HOLDS, f"a={a}, b={b}, c={c}, q={q}")

    def test_rejects_bad_arguments(self):
        """测试参数检查"""
        P = poly("x - y")
        with self.assertRaises(ValueError):
            check_maximal(P, [1, 2], 6)
        with self.assertRaises(ValueError):
            check_maximal(P, [], 6)
        with self.assertRaises(ValueError):
            check_maximal(P, [2], 0)
        with self.assertRaises(UnsupportedPolynomialError):
            check_maximal(IntPolynomial.zero(2), [2], 6)


class TestMinimalCondition(unittest.TestCase):
    """测试极小Rado条件"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_linear_fails(self):
        """测试 x + y − 3z 的极小条件失败"""
        results = check_minimal(poly("x + y - 3z"), PRIMES, 6)
        for p, result in results.items():
            self.assertEqual(result.status, FAILS_DEFINITIVELY)

    def test_schur_holds(self):
        """测试 x + y − z 对每个素数都成立"""
        results = check_minimal(poly("x + y - z"), PRIMES, 6)
        self.assertEqual(sorted(results), PRIMES)
        for p, result in results.items():
            self.assertEqual(result.status, HOLDS)
            self.assertEqual(result.root, 0)
            self.assertIsNotNone(result.witness)
            self.assertTrue(result.witness.is_unit())

    def test_singleton_cells_fail(self):
        """测试 x² + y² − xy − y 对每个素数都失败"""
        results = check_minimal(first_example(0, 1), PRIMES, 6)
        for p, result in results.items():
            self.assertEqual(result.status, FAILS_DEFINITIVELY)

    def test_rejects_unsupported(self):
        """测试对角多项式为零或不分裂时被拒绝"""
        with self.assertRaises(UnsupportedPolynomialError):
            check_minimal(poly("x - y"), [2], 6)
        with self.assertRaises(UnsupportedPolynomialError):
            check_minimal(poly("x^2 + y^2 - 3z"), [2], 6)
        with self.assertRaises(ValueError):
            check_minimal(poly("x + y - z"), [4], 6)
        with self.assertRaises(ValueError):
            check_minimal(poly("x + y - z"), [], 6)


class TestDefinitiveMinimalFailure(unittest.TestCase):
    """测试极小条件的确定失败"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_worked_examples(self):
        """测试两组二次例子在 a ≠ b 时都确定失败"""
        for a, b in itertools.product(range(-3, 4), repeat=2):
            if a == b:
                continue
            self.assertTrue(definitive_minimal_failure(first_example(a, b)), f"first a={a}, b={b}")
            self.assertTrue(definitive_minimal_failure(second_example(a, b)), f"second a={a}, b={b}")

    def test_zero_sum_cell(self):
        """测试存在零和极小块时不能确定失败"""
        self.assertFalse(definitive_minimal_failure(poly("x + y - z")))
        self.assertFalse(definitive_minimal_failure(poly("x - y")))

    def test_linear_agreement(self):
        """测试齐次线性方程：确定失败当且仅当没有零和子集"""
        values = [c for c in range(-5, 6) if c != 0]
        for arity in range(1, 6):
            # 结论与系数顺序无关，只取非降序的系数组
            for coefficients in itertools.combinations_with_replacement(values, arity):
                expected = not has_zero_subset_sum(coefficients)
                self.assertEqual(definitive_minimal_failure(linear(*coefficients)), expected, str(coefficients))

    def test_audit(self):
        """测试审计记录列出每个根下的极小块"""
        audit = minimal_failure_audit(poly("x*y - z^3"))
        self.assertEqual([entry["root"] for entry in audit], [0, 1])
        for entry in audit:
            self.assertTrue(entry["cells"])
            for cell in entry["cells"]:
                self.assertTrue(cell["homogeneous"])
                self.assertNotEqual(cell["coefficient_sum"], 0)

    def test_not_split(self):
        """测试对角多项式不分裂时抛出异常"""
        with self.assertRaises(UnsupportedPolynomialError):
            definitive_minimal_failure(poly("x^2 + y^2 - 3z"))


class TestAnalyze(unittest.TestCase):
    """测试综合结论"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")
        self.settings = AnalysisConfig()

    def test_not_regular_by_minimal_route(self):
        """测试 x + y − 3z"""
        verdict = analyze(poly("x + y - 3z"), self.settings)
        self.assertEqual(verdict.outcome, NOT_PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "minimal-definitive")
        self.assertEqual(verdict.route["roots"], [0])

    def test_linear_rado(self):
        """测试 x + y − z"""
        verdict = analyze(poly("x + y - z"), self.settings)
        self.assertEqual(verdict.outcome, PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "linear-rado")

    def test_constant_solutions(self):
        """测试常数解"""
        verdict = analyze(poly("x - y"), self.settings)
        self.assertEqual(verdict.outcome, PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "constant-solutions")

        verdict = analyze(IntPolynomial.zero(3), self.settings)
        self.assertEqual(verdict.outcome, PARTITION_REGULAR)

    def test_sum_of_squares(self):
        """测试 x² + y² − 3z² 同时有极小与极大两条否定路线"""
        verdict = analyze(poly("x^2 + y^2 - 3z^2"), self.settings)
        self.assertEqual(verdict.outcome, NOT_PARTITION_REGULAR)
        types = [route["type"] for route in verdict.routes]
        self.assertEqual(types[0], "minimal-definitive")
        self.assertIn("maximal", types)
        maximal = next(route for route in verdict.routes if route["type"] == "maximal")
        self.assertEqual(maximal["q"], list(range(2, 8)))

    def test_multiplicative(self):
        """测试 xy − z³"""
        verdict = analyze(poly("x*y - z^3"), self.settings)
        self.assertEqual(verdict.outcome, NOT_PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "minimal-definitive")
        self.assertEqual(verdict.route["roots"], [0, 1])

    def test_family_route(self):
        """测试已知族直接给出结论"""
        verdict = analyze(poly("x^2 - x*y + z"), self.settings)
        self.assertEqual(verdict.outcome, PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "family")

    def test_squares_without_linear_terms(self):
        """测试 x² − y² + z 经已知族判为正则"""
        verdict = analyze(poly("x^2 - y^2 + z"), self.settings)
        self.assertEqual(verdict.outcome, PARTITION_REGULAR)
        self.assertEqual(verdict.route["type"], "family")

    def test_open_problem_is_inconclusive(self):
        """测试尚未解决的情形给出不确定"""
        verdict = analyze(poly("x^2 - x*y + x - y + z"), self.settings)
        self.assertEqual(verdict.outcome, INCONCLUSIVE)
        self.assertFalse(verdict.routes)
        self.assertTrue(any("open problem" in note for note in verdict.notes))
        self.assertEqual(sorted(verdict.maximal), list(range(2, 8)))
        self.assertEqual(sorted(verdict.minimal), PRIMES)

    def test_constant_term_skips_minimal(self):
        """测试有非零常数项时跳过极小条件"""
        verdict = analyze(poly("x + y - z + 1"), self.settings)
        self.assertFalse(verdict.minimal)
        self.assertTrue(any("常数项" in note for note in verdict.notes))

    def test_larger_bounds_keep_refutation(self):
        """测试放大检验范围不改变否定结论"""
        larger = AnalysisConfig(q_max=9, p_max=17, d_max=8)
        for text in ("x + y - 3z", "x^2 + y^2 - 3z^2"):
            self.assertEqual(analyze(poly(text), larger).outcome, NOT_PARTITION_REGULAR)

    def test_to_dict(self):
        """测试结论的序列化字段"""
        data = analyze(poly("x^2 - x*y + x - y + z"), self.settings).to_dict()
        for key in ("verdict", "route", "routes", "family", "maximal", "minimal", "certificates", "notes", "warnings"):
            self.assertIn(key, data)
        self.assertEqual([row["q"] for row in data["maximal"]], list(range(2, 8)))


class TestAnalysisConfig(unittest.TestCase):
    """测试检验参数"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")

    def test_from_config(self):
        """测试从配置对象读取参数"""
        cfg = Config()
        self.assertEqual(AnalysisConfig.from_config(cfg), AnalysisConfig())

        cfg.set("analysis", "q_max", 11)
        cfg.set("certificate", "j_max", 2)
        settings = AnalysisConfig.from_config(cfg)
        self.assertEqual(settings.q_max, 11)
        self.assertEqual(settings.j_max, 2)
        self.assertEqual(settings.to_dict()["q_max"], 11)


if __name__ == '__main__':
    unittest.main()
