import os
import sys

# Tests import the package as src.squeezing_measure
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
