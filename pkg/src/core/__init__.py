"""
核心算法包，负责多项式、Rado泛函、根分析、p进判定与条件检验
"""
