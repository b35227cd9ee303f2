"""Allow `python -m wealthsim`."""

import sys

from .cli import main

sys.exit(main())
