"""
测试配置模块
"""

import os
import shutil
import tempfile
import unittest

from src.config import DEFAULT_CONFIG, Config
from src.utils.logger import setup_logger


class TestConfig(unittest.TestCase):
    """测试Config类"""

    def setUp(self):
        """测试前准备"""
        setup_logger("INFO")
        self.config = Config()
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """测试后清理"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_defaults(self):
        """测试默认值"""
        self.assertEqual(self.config.get("analysis", "q_max"), 7)
        self.assertEqual(self.config.get("analysis", "p_max"), 13)
        self.assertEqual(self.config.get("search", "config_min"), 2)
        self.assertIsNone(self.config.get("analysis", "missing"))
        self.assertIsNone(self.config.get("missing"))
        self.assertEqual(self.config.get("certificate"), DEFAULT_CONFIG["certificate"])

    def test_update_from_dict(self):
        """测试从字典更新，未知的节被忽略"""
        self.config.update_from_dict({"analysis": {"q_max": 4}, "unknown": {"a": 1}})
        self.assertEqual(self.config.get("analysis", "q_max"), 4)
        self.assertEqual(self.config.get("analysis", "p_max"), 13)
        self.assertIsNone(self.config.get("unknown"))

    def test_set_and_reset(self):
        """测试设置与恢复默认值"""
        self.config.set("search", "bound", 50)
        self.config.set("extra", "flag", True)
        self.assertEqual(self.config.get("search", "bound"), 50)
        self.assertTrue(self.config.get("extra", "flag"))
        self.config.reset()
        self.assertEqual(self.config.get("search", "bound"), 20)
        self.assertIsNone(self.config.get("extra"))
        self.assertEqual(DEFAULT_CONFIG["search"]["bound"], 20)

    def test_analysis_params(self):
        """测试合并 analysis 与 certificate 两节"""
        params = self.config.get_analysis_params()
        self.assertEqual(params["d_max"], 6)
        self.assertEqual(params["j_max"], 4)
        self.assertEqual(params["max_certificates"], 8)

    def test_yaml(self):
        """测试保存并重新加载YAML"""
        yaml_file = os.path.join(self.temp_dir, "config.yaml")
        self.config.set("analysis", "d_max", 3)
        self.config.save_to_yaml(yaml_file)

        other = Config()
        self.assertTrue(other.update_from_yaml(yaml_file))
        self.assertEqual(other.get("analysis", "d_max"), 3)
        self.assertFalse(other.update_from_yaml(os.path.join(self.temp_dir, "missing.yaml")))


if __name__ == '__main__':
    unittest.main()
