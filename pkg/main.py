import sys

from descent3.cli import main

if __name__ == "__main__":
    sys.exit(main())
