"""
Entry point for:  python3 -m spt_teleport

See cli.py for the commands.
"""

import sys

from .cli import main

sys.exit(main())
