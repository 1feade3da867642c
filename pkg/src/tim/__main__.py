import sys

from tim.cli import main

sys.exit(main())
