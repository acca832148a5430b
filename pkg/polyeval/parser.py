#
# parser.py -- textual polynomials and evaluation points
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
Grammar (expanded sums of terms only, whitespace ignored)::

    poly    := [sign] term (sign term)*
    sign    := '+' | '-'
    term    := integer | integer '*' factors | factors
    factors := factor ('*' factor)*
    factor  := ident ['^' natural]
    ident   := letter (letter | digit | '_')*

Points are comma separated ``var=value`` pairs; interval values are
written ``[lo,hi]``.
"""
import re
from collections import namedtuple

from . import polynomial
from .numeric import Interval

SourceExpression = namedtuple('SourceExpression', ['text'])

domain_tags = ('integer', 'float', 'interval', 'polynomial')

_tag_aliases = {'int': 'integer', 'poly': 'polynomial'}

_token_re = re.compile(r'\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*^]))')
_ident_re = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')
_int_re = re.compile(r'^[-+]?\d+$')


class ParseError(Exception):

    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        if pos is not None:
            message = "%s (at position %d)" % (message, pos)
        super().__init__(message)

class BindingError(Exception):
    pass


Token = namedtuple('Token', ['kind', 'text', 'pos'])


def tokenize(text):
    tokens = []
    pos = 0
    end = len(text)
    while pos < end:
        if text[pos].isspace():
            pos += 1
            continue
        match = _token_re.match(text, pos)
        if match is None:
            raise ParseError("unknown character '%s'" % (text[pos]), pos)
        number, ident, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token('int', number, start))
        elif ident is not None:
            tokens.append(Token('ident', ident, start))
        else:
            tokens.append(Token(op, op, start))
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class PolynomialParser(object):
    """
    Recursive descent parser for the grammar in the module docstring.
    One instance parses one expression.
    """

    def __init__(self, text, variables=None):
        self.text = text
        self.tokens = tokenize(text)
        self.idx = 0
        self.fixed_variables = variables is not None
        self.variables = list(variables) if variables is not None else []

    @property
    def token(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind, what):
        tok = self.token
        if tok.kind != kind:
            found = tok.text if tok.kind != 'end' else 'end of input'
            raise ParseError("expected %s, found '%s'" % (what, found),
                             tok.pos)
        return self.advance()

    def parse(self):
        if self.token.kind == 'end':
            raise ParseError("empty expression", 0)

        raw = []
        sign = 1
        if self.token.kind in ('+', '-'):
            sign = -1 if self.advance().kind == '-' else 1
        raw.append(self.parse_term(sign))

        while self.token.kind != 'end':
            tok = self.token
            if tok.kind not in ('+', '-'):
                raise ParseError("expected '+' or '-', found '%s'" % (
                    tok.text), tok.pos)
            self.advance()
            sign = -1 if tok.kind == '-' else 1
            raw.append(self.parse_term(sign))

        nvars = len(self.variables)
        terms = []
        for coefficient, powers in raw:
            exps = [0] * nvars
            for name, e in powers:
                exps[self.variables.index(name)] += e
            terms.append((coefficient, exps))
        return polynomial.canonicalize(terms, self.variables)

    def parse_term(self, sign):
        tok = self.token
        if tok.kind == 'int':
            coefficient = int(self.advance().text)
            if self.token.kind != '*':
                return (sign * coefficient, [])
            self.advance()
            return (sign * coefficient, self.parse_factors())
        if tok.kind == 'ident':
            return (sign, self.parse_factors())

        found = tok.text if tok.kind != 'end' else 'end of input'
        raise ParseError("expected a term, found '%s'" % (found), tok.pos)

    def parse_factors(self):
        factors = [self.parse_factor()]
        while self.token.kind == '*':
            self.advance()
            factors.append(self.parse_factor())
        return factors

    def parse_factor(self):
        tok = self.expect('ident', 'a variable')
        name = tok.text
        if name not in self.variables:
            if self.fixed_variables:
                raise ParseError("unknown variable '%s'" % (name), tok.pos)
            self.variables.append(name)

        e = 1
        if self.token.kind == '^':
            self.advance()
            tok = self.token
            if tok.kind != 'int':
                raise ParseError("exponent is not a natural number", tok.pos)
            e = int(self.advance().text)
        return (name, e)


def parse_polynomial(src, variables=None):
    """Parse a polynomial expression.

    Parameters
    ----------
    src : str or `SourceExpression`
        Text in the grammar of this module.

    variables : list of str or None
        Variable order; inferred in order of first appearance if None.

    Returns
    -------
    poly : `~polyeval.polynomial.Polynomial`
    """
    if isinstance(src, SourceExpression):
        src = src.text
    return PolynomialParser(src, variables=variables).parse()


def render(p):
    """Render a canonical polynomial in the parser grammar."""
    if p.is_zero():
        return '0'
    res = []
    for i, t in enumerate(p.terms):
        c = t.coefficient
        parts = []
        for name, e in zip(p.variables, t.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append('%s^%d' % (name, e))

        if len(parts) == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = '*'.join(parts)
        else:
            body = '*'.join([str(abs(c))] + parts)

        if c < 0:
            res.append('-' + body)
        elif i > 0:
            res.append('+' + body)
        else:
            res.append(body)
    return ''.join(res)


class PointAssignment(object):
    """
    PointAssignment -- values bound to variable names.
    """

    def __init__(self, bindings=None, domain_tag=None):
        super().__init__()
        self.bindings = dict(bindings) if bindings is not None else {}
        self.domain_tag = domain_tag

    def __getitem__(self, name):
        return self.bindings[name]

    def __contains__(self, name):
        return name in self.bindings

    def get(self, name, default=None):
        return self.bindings.get(name, default)

    def check_bound(self, variables):
        for name in variables:
            if name not in self.bindings:
                raise BindingError("variable '%s' is unbound" % (name))

    def __repr__(self):
        return "PointAssignment(%s)" % (self.bindings)


def _split_top_level(text):
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == '[':
            depth += 1
        elif ch == ']':
            depth -= 1
        elif ch == ',' and depth == 0:
            pieces.append(text[start:i])
            start = i + 1
    pieces.append(text[start:])
    return pieces


def _parse_float(text):
    try:
        value = float(text)
    except ValueError:
        raise BindingError("malformed number '%s'" % (text))
    if value != value:
        raise BindingError("NaN is not a valid value")
    return value


def _parse_value(text, domain_tag):
    if domain_tag == 'integer':
        if not _int_re.match(text):
            raise BindingError("malformed integer '%s'" % (text))
        return int(text)

    if domain_tag == 'float':
        return _parse_float(text)

    # interval
    if text.startswith('[') and text.endswith(']'):
        ends = text[1:-1].split(',')
        if len(ends) != 2:
            raise BindingError("malformed interval '%s'" % (text))
        lo, hi = _parse_float(ends[0].strip()), _parse_float(ends[1].strip())
        if lo > hi:
            raise BindingError("interval '%s' has lo > hi" % (text))
        return Interval(lo, hi)
    value = _parse_float(text)
    return Interval(value, value)


def parse_point(text, variables, domain_tag):
    """Parse comma separated ``var=value`` bindings.

    Every name in `variables` must be bound exactly once.  For the
    'polynomial' tag the values are polynomial expressions sharing one
    variable list, inferred in order of first appearance.
    """
    domain_tag = _tag_aliases.get(domain_tag, domain_tag)
    if domain_tag not in domain_tags:
        raise BindingError("unknown domain '%s'" % (domain_tag))

    raw = {}
    if len(text.strip()) > 0:
        for piece in _split_top_level(text):
            if '=' not in piece:
                raise BindingError("malformed binding '%s'" % (piece.strip()))
            name, value = piece.split('=', 1)
            name, value = name.strip(), value.strip()
            if not _ident_re.match(name):
                raise BindingError("malformed variable name '%s'" % (name))
            if name in raw:
                raise BindingError("variable '%s' bound twice" % (name))
            if name not in variables:
                raise BindingError("unknown variable '%s'" % (name))
            raw[name] = value

    for name in variables:
        if name not in raw:
            raise BindingError("variable '%s' is unbound" % (name))

    if domain_tag == 'polynomial':
        return PointAssignment(_parse_polynomial_values(raw), domain_tag)

    bindings = {name: _parse_value(value, domain_tag)
                for name, value in raw.items()}
    return PointAssignment(bindings, domain_tag)


def _parse_polynomial_values(raw):
    point_vars = []
    try:
        for value in raw.values():
            for name in parse_polynomial(value).variables:
                if name not in point_vars:
                    point_vars.append(name)
        return {name: parse_polynomial(value, variables=point_vars)
                for name, value in raw.items()}

    except ParseError as e:
        raise BindingError("malformed polynomial value: %s" % (str(e)))

#END
