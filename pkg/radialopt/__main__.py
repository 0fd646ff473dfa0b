import sys

from radialopt.main import main

sys.exit(main())
