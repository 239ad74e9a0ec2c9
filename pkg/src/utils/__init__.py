"""
工具函数包：日志配置与整数工具函数
"""
