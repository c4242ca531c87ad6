"""
Hassett 判别式工具的命令行入口。

用法:
    python scripts/hassett.py check 14
    python scripts/hassett.py check 74 --json
    python scripts/hassett.py enumerate --max 200 --filter star,triple_star --csv
    python scripts/hassett.py family verify all --symbolic
    python scripts/hassett.py family verify C --symbolic --use-printed-form   # 印刷系数, 应失败 (退出码 1)
    python scripts/hassett.py normalize --geometry dp6 --m 6 --c 1 --s 4
    python scripts/hassett.py certify --geometry plane --m 0 --c 1 --s 4
    python scripts/hassett.py pell --d 28 --n -3
    python scripts/hassett.py disc "3,2;2,4"
    python scripts/hassett.py residues
"""

import sys
import os

# 添加项目根目录到 Python 模块搜索路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cli.commands import main


if __name__ == "__main__":
    sys.exit(main())
