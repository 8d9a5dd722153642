"""
通用工具模块（不涉及分次本身）

- field: Q(ζ₁₂) 精确算术
- linalg: 矩阵、子空间、Smith 标准形
- notation: 目录数据的人读记号
"""
