import sys

from harmonic_h2.cli import main

sys.exit(main())
