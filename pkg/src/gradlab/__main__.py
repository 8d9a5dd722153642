import sys
from typing import Optional, Sequence

from .core import Tool


def main(argv: Optional[Sequence[str]] = None) -> int:
    return Tool().run(argv)


if __name__ == "__main__":
    sys.exit(main())
