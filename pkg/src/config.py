"""
配置文件，存储默认参数和配置选项
"""

import copy
import logging
from typing import Dict, Any, Optional

# 默认配置
DEFAULT_CONFIG = {
    # 基本配置
    "basic": {
        "log_level": "INFO",
        "log_file": "rado_lab.log",
        "log_dir": "logs"
    },

    # 条件检验的搜索范围
    "analysis": {
        # 极大条件检验的底数上限 q ∈ [2, q_max]
        "q_max": 7,
        # 极小条件检验的素数上限
        "p_max": 13,
        # 候选泛函的偏移上限
        "d_max": 6
    },

    # Brauer模板证书
    "certificate": {
        "j_max": 4,
        "e_min": -4,
        "e_max": 4,
        # 报告中最多尝试认证的候选数量
        "max_certificates": 8
    },

    # 经验搜索
    "search": {
        "colors": 2,
        "bound": 20,
        "config_bound": 10,
        # 构型搜索中 x, y 的下限，排除 xy = x 之类的退化构型
        "config_min": 2,
        "exclude_trivial": False,
        "allow_repeats": True
    },

    # 输出配置
    "output": {
        "report_file": "",
        "tables_file": ""
    },

    # 随机化测试
    "testing": {
        "seed": 20240617
    }
}

# 日志级别映射
LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}

# 报告格式版本
REPORT_SCHEMA = "rado-lab/report-v1"

# 变量个数上限
MAX_ARITY = 8

# 单个指数上限
MAX_EXPONENT = 64

# 变量别名，依次对应 x1..x4
VARIABLE_ALIASES = ("x", "y", "z", "w")

# 配置类
class Config:
    """配置类，用于加载和管理配置"""

    def __init__(self):
        """初始化默认配置"""
        self.config = copy.deepcopy(DEFAULT_CONFIG)

    def update_from_dict(self, config_dict: Dict[str, Any]) -> None:
        """从字典更新配置

        Args:
            config_dict: 包含配置的字典
        """
        for section, values in config_dict.items():
            if section in self.config:
                if isinstance(values, dict) and isinstance(self.config[section], dict):
                    self.config[section].update(values)
                else:
                    self.config[section] = values
            else:
                logging.warning(f"忽略未知的配置节: {section}")

    def update_from_yaml(self, yaml_file: str) -> bool:
        """从YAML文件加载配置

        Args:
            yaml_file: YAML配置文件路径

        Returns:
            是否加载成功
        """
        try:
            import yaml
            with open(yaml_file, 'r', encoding='utf-8') as f:
                config_dict = yaml.safe_load(f)
                if config_dict:
                    self.update_from_dict(config_dict)
            return True
        except Exception as e:
            logging.error(f"加载配置文件失败: {e}")
            return False

    def get(self, section: str, key: Optional[str] = None) -> Any:
        """获取配置值

        Args:
            section: 配置节
            key: 配置键，如果为None则返回整个节

        Returns:
            配置值
        """
        if section not in self.config:
            return None

        if key is None:
            return self.config[section]

        if key in self.config[section]:
            return self.config[section][key]

        return None

    def set(self, section: str, key: str, value: Any) -> None:
        """设置配置值

        Args:
            section: 配置节
            key: 配置键
            value: 配置值
        """
        if section not in self.config:
            self.config[section] = {}

        self.config[section][key] = value

    def save_to_yaml(self, yaml_file: str) -> None:
        """保存配置到YAML文件

        Args:
            yaml_file: YAML配置文件路径
        """
        try:
            import yaml
            with open(yaml_file, 'w', encoding='utf-8') as f:
                yaml.dump(self.config, f, default_flow_style=False, allow_unicode=True)
        except Exception as e:
            logging.error(f"保存配置文件失败: {e}")

    def get_analysis_params(self) -> Dict[str, Any]:
        """获取条件检验所需的参数

        Returns:
            合并了analysis与certificate两节的参数字典
        """
        params = {}
        params.update(self.get("analysis") or {})
        params.update(self.get("certificate") or {})
        return params

    def reset(self) -> None:
        """恢复默认配置"""
        self.config = copy.deepcopy(DEFAULT_CONFIG)

# 全局配置实例
config = Config()
