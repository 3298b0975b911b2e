#!/usr/bin/env python3
"""
Suite runner that takes its settings from environment variables.
"""
import sys

from fockbridge.core.config import settings
from fockbridge.main import main

if __name__ == "__main__":
    argv = ["verify", "all"]
    if settings.FOCKBRIDGE_CONFIG:
        argv += ["--config", settings.FOCKBRIDGE_CONFIG]
    sys.exit(main(argv + sys.argv[1:]))
