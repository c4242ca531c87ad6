# 初始化 src 目录
