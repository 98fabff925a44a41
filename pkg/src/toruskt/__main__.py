import sys

from toruskt.cli import main

sys.exit(main())
