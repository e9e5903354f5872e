import sys

from njordan.cli import main

sys.exit(main())
