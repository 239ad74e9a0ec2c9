"""
数据处理包，负责多项式表达式的解析和报告的写入
"""
