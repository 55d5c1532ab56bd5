"""Runs the rusm command-line interface: python -m Rusm <command> ..."""

import sys

from Rusm.Internal.Cli import cli_main

sys.exit(cli_main())
