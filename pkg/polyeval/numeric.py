#
# numeric.py -- ring domains the evaluator is generic over
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
import math

from . import polynomial

max_float = 1.7976931348623157e+308


class DomainError(Exception):
    pass


class Interval(object):
    """
    Interval -- a closed interval [lo, hi] of 64-bit floats.
    """
    __slots__ = ('lo', 'hi')

    def __init__(self, lo, hi):
        lo, hi = float(lo), float(hi)
        if lo != lo or hi != hi:
            raise DomainError("interval endpoint is NaN")
        if lo > hi:
            raise DomainError("interval [%r, %r] has lo > hi" % (lo, hi))
        self.lo = lo
        self.hi = hi

    def contains(self, value):
        """True if `value` (int, Fraction or float) lies in the interval.
        Comparisons between floats and ints/Fractions are exact in python.
        """
        return self.lo <= value <= self.hi

    __contains__ = contains

    def width(self):
        return self.hi - self.lo

    def __add__(self, other):
        return interval_add(self, other)

    def __mul__(self, other):
        return interval_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return "Interval(%r, %r)" % (self.lo, self.hi)

    def __str__(self):
        return "[%r,%r]" % (self.lo, self.hi)


def _down(x):
    return math.nextafter(x, -math.inf)

def _up(x):
    return math.nextafter(x, math.inf)


def interval_add(a, b):
    """Outward rounded sum: one float step beyond the rounded endpoints."""
    return Interval(_down(a.lo + b.lo), _up(a.hi + b.hi))


def _endpoint_mul(x, y):
    # 0 * inf is taken as 0 in interval products
    if x == 0.0 or y == 0.0:
        return 0.0
    return x * y


def interval_mul(a, b):
    """Outward rounded hull of the four endpoint products."""
    products = (_endpoint_mul(a.lo, b.lo), _endpoint_mul(a.lo, b.hi),
                _endpoint_mul(a.hi, b.lo), _endpoint_mul(a.hi, b.hi))
    return Interval(_down(min(products)), _up(max(products)))


class RingDomain(object):
    """
    RingDomain -- the capability set an evaluation is generic over.

    Subclasses provide zero, add, mul and from_integer.  `exact` is True
    for domains where the ring laws hold exactly.
    """
    name = None
    exact = True

    def zero(self):
        raise NotImplementedError("subclass should override this")

    def add(self, a, b):
        raise NotImplementedError("subclass should override this")

    def mul(self, a, b):
        raise NotImplementedError("subclass should override this")

    def from_integer(self, n):
        raise NotImplementedError("subclass should override this")

    def is_zero(self, value):
        return value == self.zero()

    def format(self, value):
        return str(value)

    @property
    def cache_key(self):
        """Key under which injected coefficients may be cached."""
        return self.name

    def __repr__(self):
        return "<%s>" % (self.__class__.__name__)


class IntegerDomain(RingDomain):
    name = 'integer'
    exact = True

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def from_integer(self, n):
        return int(n)

    def format(self, value):
        return str(value)


class FloatDomain(RingDomain):
    name = 'float'
    exact = False

    def zero(self):
        return 0.0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def from_integer(self, n):
        try:
            return float(n)
        except OverflowError:
            return math.inf if n > 0 else -math.inf

    def format(self, value):
        # repr gives the shortest round-trip decimal
        return repr(float(value))


class IntervalDomain(RingDomain):
    name = 'interval'
    exact = False

    def __init__(self):
        super().__init__()
        self._zero = Interval(0.0, 0.0)

    def zero(self):
        return self._zero

    def add(self, a, b):
        return interval_add(a, b)

    def mul(self, a, b):
        return interval_mul(a, b)

    def from_integer(self, n):
        n = int(n)
        try:
            value = float(n)
        except OverflowError:
            if n > 0:
                return Interval(max_float, math.inf)
            return Interval(-math.inf, -max_float)

        if int(value) == n:
            return Interval(value, value)
        return Interval(_down(value), _up(value))

    def format(self, value):
        return str(value)


class PolynomialDomain(RingDomain):
    """
    Polynomials over a fixed list of variables; evaluating a polynomial at
    polynomial values composes them.
    """
    name = 'polynomial'
    exact = True

    def __init__(self, variables):
        super().__init__()
        self.variables = tuple(variables)
        self._zero = polynomial.Polynomial(self.variables, ())

    def zero(self):
        return self._zero

    def _check(self, a, b):
        if a.variables != self.variables or b.variables != self.variables:
            raise DomainError("polynomial variables %s/%s do not match domain %s" % (
                list(a.variables), list(b.variables), list(self.variables)))

    def add(self, a, b):
        self._check(a, b)
        return polynomial.add(a, b)

    def mul(self, a, b):
        self._check(a, b)
        return polynomial.mul(a, b)

    def from_integer(self, n):
        return polynomial.constant(n, self.variables)

    def format(self, value):
        return str(value)

    @property
    def cache_key(self):
        return (self.name, self.variables)


class CountingDomain(RingDomain):
    """
    Wraps another domain and counts the additions and multiplications
    performed through it.  Counters are not synchronized.
    """

    def __init__(self, inner):
        super().__init__()
        self.inner = inner
        self.name = inner.name
        self.exact = inner.exact
        self.reset()

    def reset(self):
        self.additions = 0
        self.multiplications = 0

    def zero(self):
        return self.inner.zero()

    def add(self, a, b):
        self.additions += 1
        return self.inner.add(a, b)

    def mul(self, a, b):
        self.multiplications += 1
        return self.inner.mul(a, b)

    def from_integer(self, n):
        return self.inner.from_integer(n)

    def is_zero(self, value):
        return self.inner.is_zero(value)

    def format(self, value):
        return self.inner.format(value)

    @property
    def cache_key(self):
        return self.inner.cache_key


def power(domain, base, e):
    """base**e in `domain` by square and multiply (independent of any
    power table)."""
    result = None
    square = base
    while e > 0:
        if e & 1:
            result = square if result is None else domain.mul(result, square)
        e >>= 1
        if e > 0:
            square = domain.mul(square, square)
    if result is None:
        return domain.from_integer(1)
    return result


def get_domain(name, variables=None):
    """Get a domain by name.  'polynomial' needs the variables the
    polynomial values are written in.
    """
    name = _domain_aliases.get(name, name)
    if name == 'polynomial':
        return PolynomialDomain(variables if variables is not None else ())
    try:
        return domains[name]()
    except KeyError:
        raise DomainError("unknown domain '%s'" % (name))


_domain_aliases = {'int': 'integer', 'poly': 'polynomial'}

domains = {
    'integer': IntegerDomain,
    'float': FloatDomain,
    'interval': IntervalDomain,
    'polynomial': PolynomialDomain,
    }

#END
