import sys

from zeta_spectra.figio.cli import main

sys.exit(main())
