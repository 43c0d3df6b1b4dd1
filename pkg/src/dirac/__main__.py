import sys

from dirac.cli import main

sys.exit(main())
