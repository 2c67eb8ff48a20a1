import sys
import os

# Make it so the tests can find the source without installing the package
sys.path.insert(0, os.path.realpath(
    os.path.join(os.path.dirname(__file__), '..', 'src')))
