import sys

from spectral_tev.cli import main

sys.exit(main())
