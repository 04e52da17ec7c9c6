import sys

from hgci.cli import main

sys.exit(main())
