#
# polynomial.py -- canonical sparse multivariate polynomials
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
Polynomials are kept as a tuple of terms sorted in strictly decreasing
lexicographic order of their exponent vectors, the comparison following
the (user supplied) order of the variables.  Coefficients are python
integers.  The zero polynomial has no terms.
"""
from collections import namedtuple


Term = namedtuple('Term', ['coefficient', 'exponents'])


class PolynomialError(Exception):
    pass

class StructureError(PolynomialError):
    pass

class DegreeError(PolynomialError):
    pass

class SplitError(PolynomialError):
    pass


class Polynomial(object):
    """
    Polynomial -- an immutable canonical polynomial.

    Use `canonicalize` to build one from arbitrary terms; the constructor
    trusts its arguments.
    """

    def __init__(self, variables, terms):
        super().__init__()
        self.variables = tuple(variables)
        self.terms = tuple(terms)

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return len(self.terms) == 0

    def is_constant(self):
        return all(not any(t.exponents) for t in self.terms)

    def constant_value(self):
        """Value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise StructureError("polynomial %s is not constant" % (str(self)))
        if self.is_zero():
            return 0
        return self.terms[0].coefficient

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.variables == other.variables and
                self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, self.terms))

    def __repr__(self):
        return "Polynomial(%s, %s)" % (list(self.variables), str(self))

    def __str__(self):
        from .parser import render
        return render(self)


def _check_exponents(exponents, nvars):
    if len(exponents) != nvars:
        raise StructureError("exponent vector %s does not match %d variables" % (
            str(exponents), nvars))
    for e in exponents:
        if not isinstance(e, int) or e < 0:
            raise StructureError("exponent %s is not a natural number" % (
                str(e)))


def canonicalize(raw_terms, variables):
    """Build a canonical polynomial.

    Parameters
    ----------
    raw_terms : iterable of `Term` or (coefficient, exponents) pairs
        Terms in any order; duplicates and zero coefficients are allowed.

    variables : sequence of str
        Variable names, in the order used for lexicographic comparison.

    Returns
    -------
    poly : `Polynomial`
        Like terms merged, zero terms dropped, terms sorted decreasingly.
    """
    variables = tuple(variables)
    nvars = len(variables)
    coeffs = {}
    for coefficient, exponents in raw_terms:
        exponents = tuple(exponents)
        _check_exponents(exponents, nvars)
        coeffs[exponents] = coeffs.get(exponents, 0) + int(coefficient)

    terms = [Term(c, exps) for exps, c in coeffs.items() if c != 0]
    terms.sort(key=lambda t: t.exponents, reverse=True)
    return Polynomial(variables, terms)


def constant(value, variables):
    """The constant polynomial `value` over `variables`."""
    variables = tuple(variables)
    if value == 0:
        return Polynomial(variables, ())
    return Polynomial(variables, (Term(int(value), (0,) * len(variables)),))


def _check_index(p, variable_index):
    if not (0 <= variable_index < p.nvars):
        raise StructureError("variable index %d out of range for %s" % (
            variable_index, list(p.variables)))


def degree(p, variable_index=0):
    """Maximum exponent of the given variable across the terms of `p`."""
    if p.is_zero():
        raise DegreeError("degree of the zero polynomial is undefined")
    _check_index(p, variable_index)
    return max(t.exponents[variable_index] for t in p.terms)


def split_at(p, variable_index, e):
    """Split `p` as a * x^e + b in the chosen variable.

    `a` gets the terms whose exponent is at least `e` (reduced by `e`),
    `b` the remaining terms.  Requires 0 < e <= degree(p, variable_index).
    """
    n = degree(p, variable_index)
    if not (0 < e <= n):
        raise SplitError("split exponent %d out of range (0, %d]" % (e, n))

    a_terms, b_terms = [], []
    for t in p.terms:
        exps = t.exponents
        if exps[variable_index] >= e:
            exps = (exps[:variable_index] + (exps[variable_index] - e,) +
                    exps[variable_index + 1:])
            a_terms.append(Term(t.coefficient, exps))
        else:
            b_terms.append(t)

    # subtracting the same amount from one coordinate keeps the order
    return (Polynomial(p.variables, a_terms),
            Polynomial(p.variables, b_terms))


def shift(p, variable_index, e):
    """Multiply `p` by the e-th power of the chosen variable."""
    _check_index(p, variable_index)
    terms = []
    for t in p.terms:
        exps = (t.exponents[:variable_index] +
                (t.exponents[variable_index] + e,) +
                t.exponents[variable_index + 1:])
        terms.append(Term(t.coefficient, exps))
    return Polynomial(p.variables, terms)


def _check_same_variables(a, b):
    if a.variables != b.variables:
        raise StructureError("variable mismatch: %s vs. %s" % (
            list(a.variables), list(b.variables)))


def add(a, b):
    """Exact sum of two polynomials over the same variables."""
    _check_same_variables(a, b)
    return canonicalize(a.terms + b.terms, a.variables)


def mul(a, b):
    """Exact product of two polynomials over the same variables."""
    _check_same_variables(a, b)
    coeffs = {}
    for ta in a.terms:
        for tb in b.terms:
            exps = tuple(x + y for x, y in zip(ta.exponents, tb.exponents))
            coeffs[exps] = coeffs.get(exps, 0) + ta.coefficient * tb.coefficient
    return canonicalize(((c, exps) for exps, c in coeffs.items()),
                        a.variables)


def coefficient_groups(p, variable_index=0):
    """Group the terms of `p` by the exponent of one variable.

    Returns
    -------
    groups : list of (exponent, `Polynomial`) tuples
        In strictly decreasing exponent order; each coefficient polynomial
        is over the remaining variables.
    """
    _check_index(p, variable_index)
    rest = p.variables[:variable_index] + p.variables[variable_index + 1:]
    groups = {}
    for t in p.terms:
        exps = t.exponents
        groups.setdefault(exps[variable_index], []).append(
            Term(t.coefficient, exps[:variable_index] + exps[variable_index + 1:]))

    return [(e, canonicalize(groups[e], rest))
            for e in sorted(groups.keys(), reverse=True)]

#END
