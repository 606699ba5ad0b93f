from logdiam.cli import main
import sys

sys.exit(main())
