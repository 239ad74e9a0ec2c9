"""
主程序入口模块
"""

import sys
from typing import List, Optional

from src.ui.cli import run_cli


def main(argv: Optional[List[str]] = None):
    """主函数，退出码：0 得到结论，1 无定论或仅在有限范围内失败，2 输入错误"""
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    main()
