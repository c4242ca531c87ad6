# 条件 (*) (**) (***) 与 Pell 方程
