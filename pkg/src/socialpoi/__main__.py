import sys

from socialpoi.cli import main

sys.exit(main())
