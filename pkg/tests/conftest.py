"""Test configuration for ensuring project modules are importable and logs stay out of the home directory."""

import os
import sys
import tempfile
from pathlib import Path


ROOT_DIR = Path(__file__).resolve().parent.parent
ROOT_PATH = str(ROOT_DIR)

if ROOT_PATH not in sys.path:
    sys.path.insert(0, ROOT_PATH)

os.environ.setdefault("DEBRUIJN_HOME", os.path.join(tempfile.gettempdir(), "debruijn_codes_tests"))
