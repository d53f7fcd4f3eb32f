import sys

from acslie.cli import main

sys.exit(main())
