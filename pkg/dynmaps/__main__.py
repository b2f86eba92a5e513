import sys

from dynmaps.main import main

sys.exit(main())
