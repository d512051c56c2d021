import sys

from umbilic_atlas.main import main

sys.exit(main())
