"""
丢番图方程划分正则性分析工具
"""

__version__ = '0.2.0'
