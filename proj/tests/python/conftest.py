import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
PKG_DIR = os.path.normpath(os.path.join(HERE, "..", "..", "python"))

if PKG_DIR not in sys.path:
    sys.path.insert(0, PKG_DIR)
