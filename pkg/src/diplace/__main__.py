import sys

from diplace.cli import main

sys.exit(main())
