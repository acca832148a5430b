#
# powers.py -- exponents needed by a tree and their precomputed powers
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
import threading

from .scheme import SchemeError


class ExponentSet(object):
    """
    ExponentSet -- sorted, distinct exponents >= 1.
    """

    def __init__(self, exponents=()):
        super().__init__()
        exps = sorted(set(exponents))
        if len(exps) > 0 and exps[0] < 1:
            raise ValueError("exponents must be >= 1: %s" % (exps[0]))
        self.exponents = tuple(exps)

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __contains__(self, e):
        return e in self.exponents

    def __getitem__(self, idx):
        return self.exponents[idx]

    def index(self, e):
        return self.exponents.index(e)

    def union(self, other):
        return ExponentSet(self.exponents + tuple(other))

    def max(self):
        return self.exponents[-1] if len(self.exponents) > 0 else 0

    def __eq__(self, other):
        if isinstance(other, ExponentSet):
            return self.exponents == other.exponents
        try:
            return self.exponents == tuple(sorted(set(other)))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return "ExponentSet(%s)" % (list(self.exponents))


class PowerTable(object):
    """
    PowerTable -- powers of one base value in a ring domain.

    Each power is the product of two already available ones:
    base^e = base^(e//2) * base^(e - e//2), memoized on the intermediate
    exponents.  `multiplications` counts the products formed.
    """

    def __init__(self, domain, base, exponents):
        super().__init__()
        self.domain = domain
        self.base = base
        self.exponents = (exponents if isinstance(exponents, ExponentSet)
                          else ExponentSet(exponents))
        self.multiplications = 0
        self._values = {1: base}
        for e in self.exponents:
            self._compute(e)

    def _compute(self, e):
        # halving chain, smallest first so both factors exist when needed
        chain = []
        todo = [e]
        while len(todo) > 0:
            k = todo.pop()
            if k in self._values or k in chain:
                continue
            chain.append(k)
            todo.extend((k // 2, k - k // 2))
        chain.sort()
        for k in chain:
            h = k // 2
            self._values[k] = self.domain.mul(self._values[h],
                                              self._values[k - h])
            self.multiplications += 1
        return self._values[e]

    def __getitem__(self, e):
        return self._values[e]

    def get(self, e):
        """Power `e` of the base, computing it if it is not in the table."""
        if e == 0:
            return self.domain.from_integer(1)
        if e not in self._values:
            return self._compute(e)
        return self._values[e]

    def values(self, exponents=None):
        """Powers listed in the order of `exponents` (default: the table's)."""
        if exponents is None:
            exponents = self.exponents
        return [self._values[e] for e in exponents]

    def __len__(self):
        return len(self.exponents)

    def __repr__(self):
        return "PowerTable(%s)" % (list(self.exponents))


def required_exponents(t):
    """Distinct nonzero partial degrees over the nodes of `t` (its own
    variable only).
    """
    return ExponentSet(node.partial_degree for node in t.nodes
                       if node.partial_degree > 0)


def required_exponents_by_variable(t):
    """Union of the required exponents of `t` and its nested coefficient
    trees, as a dict of variable index -> `ExponentSet`.
    """
    res = {}
    for tree in t.iter_trees():
        exps = required_exponents(tree)
        if len(exps) == 0:
            continue
        if tree.variable in res:
            res[tree.variable] = res[tree.variable].union(exps)
        else:
            res[tree.variable] = exps
    return res


def build_power_table(base, e, domain):
    """Precompute base^k in `domain` for every k in `e`."""
    return PowerTable(domain, base, e)


_dense_lock = threading.Lock()
_dense_cache = {}


def dense_exponents(scheme, n):
    """Exponent set of the tree of a dense polynomial of degree `n`.

    With every coefficient present the tree shape depends only on the
    degree:  S(0) = {},  S(n) = S(n - e) | S(e - 1) | {e}  with e = f(n),
    the child of degree n - e hanging at degree e above the remainder of
    degree e - 1.  Results are memoized per scheme name.
    """
    with _dense_lock:
        cache = _dense_cache.setdefault(scheme.name, {0: frozenset()})

        # fill in bottom up; both sub-problems are strictly smaller
        for k in range(max(cache.keys()) + 1, n + 1):
            e = scheme.split(k)
            if not (0 < e <= k):
                raise SchemeError("scheme %s: split(%d) = %s not in (0, %d]" % (
                    scheme.name, k, e, k))
            cache[k] = cache[k - e] | cache[e - 1] | frozenset((e,))

        return ExponentSet(cache[n])

#END
