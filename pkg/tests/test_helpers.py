"""
测试辅助函数模块
"""

import logging
import math
import os
import shutil
import tempfile
import unittest
from fractions import Fraction

from src.utils.helpers import (
    common_denominator, ensure_directory_exists, format_fraction, has_zero_subset_sum,
    integer_content, p_valuation,
)
from src.utils.logger import setup_logger


class TestHelpers(unittest.TestCase):
    """测试通用工具函数"""

    def test_p_valuation(self):
        """测试p进赋值"""
        self.assertEqual(p_valuation(48, 2), 4)
        self.assertEqual(p_valuation(-45, 3), 2)
        self.assertEqual(p_valuation(7, 5), 0)
        self.assertEqual(p_valuation(0, 7), math.inf)
        self.assertEqual(p_valuation(3 * 2 ** 100, 2), 100)
        self.assertEqual(p_valuation(-11 * 5 ** 7, 5), 7)

    def test_integer_content(self):
        """测试内容"""
        self.assertEqual(integer_content([6, -9, 15]), 3)
        self.assertEqual(integer_content([0, 0]), 0)
        self.assertEqual(integer_content([]), 0)

    def test_has_zero_subset_sum(self):
        """测试零和子集"""
        self.assertTrue(has_zero_subset_sum([1, 1, -2]))
        self.assertTrue(has_zero_subset_sum([3, -1, 5, -2]))
        self.assertTrue(has_zero_subset_sum([4, 0]))
        self.assertFalse(has_zero_subset_sum([1, 1, -3]))
        self.assertFalse(has_zero_subset_sum([2, -1]))
        self.assertFalse(has_zero_subset_sum([]))

    def test_fractions(self):
        """测试有理数工具"""
        self.assertEqual(common_denominator([Fraction(1, 2), Fraction(2, 3), 4]), 6)
        self.assertEqual(common_denominator([]), 1)
        self.assertEqual(format_fraction(Fraction(-3, 4)), "-3/4")
        self.assertEqual(format_fraction(Fraction(4, 2)), "2")
        self.assertEqual(format_fraction(5), "5")

    def test_ensure_directory_exists(self):
        """测试创建目录"""
        temp_dir = tempfile.mkdtemp()
        try:
            target = os.path.join(temp_dir, "a", "b")
            ensure_directory_exists(target)
            self.assertTrue(os.path.isdir(target))
            ensure_directory_exists(target)
            ensure_directory_exists("")
        finally:
            shutil.rmtree(temp_dir, ignore_errors=True)


class TestSetupLogger(unittest.TestCase):
    """测试setup_logger函数"""

    def setUp(self):
        """测试前准备"""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """测试后清理"""
        for handler in logging.getLogger().handlers:
            handler.close()
        setup_logger("INFO")
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_root_logger(self):
        """测试配置的是根日志记录器，重复调用不叠加处理器"""
        logger = setup_logger("DEBUG")
        self.assertIs(logger, logging.getLogger())
        self.assertEqual(logger.level, logging.DEBUG)
        setup_logger("warning")
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.level, logging.WARNING)

    def test_log_file(self):
        """测试写入日志文件"""
        log_dir = os.path.join(self.temp_dir, "logs")
        logger = setup_logger("INFO", "rado.log", log_dir)
        self.assertEqual(len(logger.handlers), 2)
        logging.getLogger().info("写入测试")
        for handler in logger.handlers:
            handler.flush()
        with open(os.path.join(log_dir, "rado.log"), encoding="utf-8") as f:
            self.assertIn("写入测试", f.read())


if __name__ == '__main__':
    unittest.main()
