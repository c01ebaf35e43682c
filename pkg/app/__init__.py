"""
广义约化 Lie 代数范畴 O' 的精确计算工具
"""
