#
# __main__.py -- python -m polyeval
#
import sys

from polyeval.main import polyeval

sys.exit(polyeval(sys.argv))
