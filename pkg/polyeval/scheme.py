#
# scheme.py -- function schemes driving evaluation tree construction
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
A function scheme is a split function f with 0 < f(k) <= k for k >= 1.
A polynomial of degree n is written a * x^f(n) + b and both parts are
handled recursively.
"""
import re

from ginga.misc import Bunch


class SchemeError(Exception):
    pass


class FunctionScheme(object):
    """
    FunctionScheme -- a named split function.  `split` must be pure.
    """

    def __init__(self, name, split):
        super().__init__()
        self.name = name
        self._split = split

    def split(self, k):
        return self._split(k)

    __call__ = split

    def __repr__(self):
        return "FunctionScheme(%s)" % (self.name)

    __str__ = __repr__


def direct_split(k):
    return k

def horner_split(k):
    return 1

def estrin_split(k):
    # 2^floor(log2 k), exact for arbitrarily large k
    return 1 << (k.bit_length() - 1)

def balanced_split(k):
    # floor(1/2) = 0 would break 0 < f(k), hence the clamp at k = 1
    return max(1, k // 2)


builtins = {
    'direct': direct_split,
    'horner': horner_split,
    'estrin': estrin_split,
    'balanced': balanced_split,
    }


def builtin(name):
    """Get one of the builtin schemes: direct, horner, estrin, balanced."""
    try:
        return FunctionScheme(name, builtins[name])
    except KeyError:
        raise SchemeError("unknown scheme '%s' (choose from %s)" % (
            name, ', '.join(builtins.keys())))


def threshold_combine(upper, lower, cutoff):
    """Scheme that uses `upper` for k > cutoff and `lower` otherwise."""
    if cutoff < 1:
        raise SchemeError("threshold cutoff must be >= 1, got %d" % (cutoff))

    def split(k):
        if k > cutoff:
            return upper.split(k)
        return lower.split(k)

    name = "%s:%s@%d" % (upper.name, lower.name, cutoff)
    return FunctionScheme(name, split)


def validate(s, k_max):
    """Check 0 < s.split(k) <= k for 1 <= k <= k_max.

    Returns
    -------
    res : `~ginga.misc.Bunch.Bunch`
        `res.ok` is True if no violation was found; otherwise `res.k` is
        the first violating k, `res.value` the split returned for it and
        `res.reason` a description.
    """
    res = Bunch.Bunch(ok=True, scheme=s.name, k=None, value=None,
                      reason=None)
    for k in range(1, k_max + 1):
        v = s.split(k)
        if not (0 < v <= k):
            res.setvals(ok=False, k=k, value=v,
                        reason="split(%d) = %s not in (0, %d]" % (k, v, k))
            break
    return res


_threshold_re = re.compile(r'^([a-z]+):([a-z]+)@(\d+)$')


def get_scheme(name):
    """Resolve a scheme name: a builtin, or 'upper:lower@N' for a
    threshold combination of two builtins.
    """
    name = name.strip().lower()
    match = _threshold_re.match(name)
    if match is not None:
        upper, lower, cutoff = match.groups()
        return threshold_combine(builtin(upper), builtin(lower), int(cutoff))
    if ':' in name or '@' in name:
        raise SchemeError("malformed threshold scheme '%s' (use upper:lower@N)" % (
            name))
    return builtin(name)

#END
