#
# misc.py -- random polynomials and points, brute force evaluation
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
import random

from . import polynomial
from .numeric import power


def get_rng(seed, *keys):
    """Seeded generator; extra keys give independent reproducible streams."""
    return random.Random(':'.join([str(seed)] + [str(k) for k in keys]))


def random_bits_int(rng, bits):
    """Random signed integer of exactly `bits` bits (never zero)."""
    magnitude = rng.getrandbits(bits - 1) | (1 << (bits - 1))
    return -magnitude if rng.random() < 0.5 else magnitude


def random_coefficient(rng, bound):
    """Uniform nonzero integer in [-bound, bound]."""
    while True:
        c = rng.randint(-bound, bound)
        if c != 0:
            return c


def random_dense(rng, degree, coeff_bits, variable='x'):
    """Dense univariate polynomial: every coefficient of degree 0..`degree`
    nonzero, each of exactly `coeff_bits` bits.
    """
    terms = [(random_bits_int(rng, coeff_bits), (e,))
             for e in range(degree + 1)]
    return polynomial.canonicalize(terms, [variable])


def random_sparse(rng, max_degree, nterms, bound, variable='x'):
    """Univariate polynomial with `nterms` distinct exponents <= max_degree
    and nonzero coefficients bounded by `bound` in absolute value.
    """
    nterms = min(nterms, max_degree + 1)
    exps = rng.sample(range(max_degree + 1), nterms)
    terms = [(random_coefficient(rng, bound), (e,)) for e in exps]
    return polynomial.canonicalize(terms, [variable])


def random_multivariate(rng, variables, max_degree, nterms, bound):
    terms = []
    for i in range(nterms):
        exps = tuple(rng.randint(0, max_degree) for name in variables)
        terms.append((random_coefficient(rng, bound), exps))
    return polynomial.canonicalize(terms, variables)


def term_sum(p, point):
    """Brute force value of `p` with python numbers: sum of c * prod v^e.

    `point` maps variable names to ints (or anything supporting + * **).
    """
    total = 0
    for t in p.terms:
        value = t.coefficient
        for name, e in zip(p.variables, t.exponents):
            if e > 0:
                value = value * point[name] ** e
        total = total + value
    return total


def term_sum_in(p, point, domain):
    """Brute force value of `p` in a ring domain."""
    total = domain.zero()
    for t in p.terms:
        value = domain.from_integer(t.coefficient)
        for name, e in zip(p.variables, t.exponents):
            if e > 0:
                value = domain.mul(value, power(domain, point[name], e))
        total = domain.add(total, value)
    return total

#END
