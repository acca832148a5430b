import unittest
import random

import pytest

from polyeval import misc
from polyeval.numeric import Interval
from polyeval.parser import (parse_polynomial, parse_point, render,
                             SourceExpression, ParseError, BindingError)
from polyeval.polynomial import Term


class TestParsePolynomial(unittest.TestCase):

    def test_example(self):
        p = parse_polynomial(SourceExpression(
            "3*x^8-x^7+2*x^6+x^5-4*x^4+9*x^3-3*x^2-2*x+1"))
        self.assertEqual(p.variables, ('x',))
        self.assertEqual([t.coefficient for t in p.terms],
                         [3, -1, 2, 1, -4, 9, -3, -2, 1])
        self.assertEqual([t.exponents[0] for t in p.terms],
                         list(range(8, -1, -1)))

    def test_single_variable(self):
        p = parse_polynomial("x")
        self.assertEqual(p.terms, (Term(1, (1,)),))

    def test_zero_term_dropped(self):
        p = parse_polynomial("2*x*y^2 - y + 0")
        self.assertEqual(p.variables, ('x', 'y'))
        self.assertEqual(p.terms, (Term(2, (1, 2)), Term(-1, (0, 1))))

    def test_whitespace(self):
        self.assertEqual(parse_polynomial(" 3 * x ^ 2 +\t1 "),
                         parse_polynomial("3*x^2+1"))

    def test_leading_sign(self):
        p = parse_polynomial("-x^2+x")
        self.assertEqual(p.terms[0], Term(-1, (2,)))

    def test_variable_order(self):
        p = parse_polynomial("x*y^2+y", variables=['y', 'x'])
        self.assertEqual(p.variables, ('y', 'x'))
        self.assertEqual(p.terms[0], Term(1, (2, 1)))

    def test_repeated_factor(self):
        self.assertEqual(parse_polynomial("x*x^2"), parse_polynomial("x^3"))

    def test_big_coefficient(self):
        c = 2 ** 200 + 1
        p = parse_polynomial("%d*x-1" % (c))
        self.assertEqual(p.terms[0].coefficient, c)

    def test_zero_polynomial(self):
        self.assertTrue(parse_polynomial("x-x").is_zero())


@pytest.mark.parametrize(
    ("text", "pos"), [
        ("x+", 2),
        ("", 0),
        ("x^-2", 2),
        ("x^y", 2),
        ("3x", 1),
        ("x$1", 1),
        ("x*2", 2),
        ("(x+1)", 0),
        ])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as excinfo:
        parse_polynomial(text)
    assert excinfo.value.pos == pos


def test_unknown_variable_with_fixed_order():
    with pytest.raises(ParseError):
        parse_polynomial("x+z", variables=['x', 'y'])


def test_render_round_trip():
    rng = random.Random(3)
    for i in range(100):
        p = misc.random_multivariate(rng, ['x', 'y', 'z'], 5, 6, 2 ** 70)
        assert parse_polynomial(render(p), variables=p.variables) == p


def test_render():
    assert render(parse_polynomial("3*x^8-x^7+1")) == "3*x^8-x^7+1"
    assert render(parse_polynomial("-x*y+2")) == "-x*y+2"
    assert render(parse_polynomial("x-x")) == "0"
    assert str(parse_polynomial("x^2+2*x+1")) == "x^2+2*x+1"


class TestParsePoint(unittest.TestCase):

    def test_integer(self):
        pt = parse_point("x=2", ['x'], 'integer')
        self.assertEqual(pt['x'], 2)
        self.assertEqual(pt.domain_tag, 'integer')

    def test_int_alias(self):
        pt = parse_point("x=-12345678901234567890", ['x'], 'int')
        self.assertEqual(pt['x'], -12345678901234567890)

    def test_float(self):
        pt = parse_point("x=1.5, y=2", ['x', 'y'], 'float')
        self.assertEqual(pt['x'], 1.5)
        self.assertEqual(pt['y'], 2.0)

    def test_interval(self):
        pt = parse_point("x=[1.0,2.0]", ['x'], 'interval')
        self.assertEqual(pt['x'], Interval(1.0, 2.0))

    def test_interval_point(self):
        pt = parse_point("x=3,y=[-1, 1]", ['x', 'y'], 'interval')
        self.assertEqual(pt['x'], Interval(3.0, 3.0))
        self.assertEqual(pt['y'], Interval(-1.0, 1.0))

    def test_polynomial_values(self):
        pt = parse_point("x=t+1,y=s*t", ['x', 'y'], 'polynomial')
        self.assertEqual(pt['x'].variables, ('t', 's'))
        self.assertEqual(pt['y'].variables, ('t', 's'))

    def test_unbound(self):
        with self.assertRaises(BindingError):
            parse_point("y=3", ['x', 'y'], 'integer')

    def test_bound_twice(self):
        with self.assertRaises(BindingError):
            parse_point("x=3,x=4", ['x'], 'integer')

    def test_unknown_variable(self):
        with self.assertRaises(BindingError):
            parse_point("x=3,z=4", ['x'], 'integer')

    def test_malformed(self):
        for text, tag in [("x=2.5", 'integer'), ("x=abc", 'float'),
                          ("x=nan", 'float'), ("x=[1,2,3]", 'interval'),
                          ("x", 'integer'), ("x=[2,1]", 'interval'),
                          ("x=(", 'polynomial')]:
            with self.assertRaises(BindingError):
                parse_point(text, ['x'], tag)

    def test_no_variables(self):
        pt = parse_point("", [], 'integer')
        self.assertEqual(len(pt.bindings), 0)


if __name__ == '__main__':
    unittest.main()
