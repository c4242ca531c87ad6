# 格 (Gram 矩阵) 与规范形
