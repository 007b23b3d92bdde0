import sys

from bredon.cli import main

sys.exit(main())
