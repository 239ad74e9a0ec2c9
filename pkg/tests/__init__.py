"""
测试包，每个库模块对应一个测试模块
"""
