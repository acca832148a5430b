#
# paths.py -- where polyeval looks for its per-user settings
#
import os
import pathlib


def home_folder(svcname, environ=None):
    """$CONFHOME/<svcname> if CONFHOME is set, else ~/.<svcname>."""
    if environ is None:
        environ = os.environ
    confhome = environ.get('CONFHOME', '').strip()
    if len(confhome) > 0:
        return pathlib.Path(confhome) / svcname
    return pathlib.Path(os.path.expanduser('~')) / ('.' + svcname)
