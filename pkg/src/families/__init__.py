# 见证族与剩余类校验
