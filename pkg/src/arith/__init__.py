# 精确算术
