import sys

from phasecode.cli import main

sys.exit(main())
