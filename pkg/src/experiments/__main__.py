import sys

from experiments.cli import cli_main

sys.exit(cli_main())
