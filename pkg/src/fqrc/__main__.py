import sys

from fqrc.cli import main

sys.exit(main())
