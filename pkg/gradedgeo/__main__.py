import sys

from gradedgeo.cli import main

sys.exit(main())
