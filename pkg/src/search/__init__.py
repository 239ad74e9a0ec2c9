"""
经验搜索包，负责解枚举、着色检验、避免着色搜索和单色构型搜索
"""
