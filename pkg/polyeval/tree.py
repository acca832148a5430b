#
# tree.py -- evaluation trees
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
An evaluation tree has one node per term of the polynomial.  Each node
carries a coefficient c(N) and a partial degree d(N); a tree evaluates to

    (c(R) + sum of the children subtrees) * x^d(R)

The nodes are stored in decreasing term order, which is topological: every
child has a lower index than its parent and the root is the last node.
"""
import bisect

from ginga.misc import Bunch

from . import numeric, powers
from .parser import render, BindingError
from .polynomial import coefficient_groups
from .scheme import SchemeError, FunctionScheme


class TreeError(Exception):
    pass


class TreeNode(object):
    """
    TreeNode -- one term of the polynomial.

    `coefficient` is an int, or a nested `EvaluationTree` over the
    remaining variables in a multivariate tree.
    """

    def __init__(self, coefficient, partial_degree=None, index=None):
        super().__init__()
        self.coefficient = coefficient
        self.partial_degree = partial_degree
        self.children = []
        self.lazy_height = None
        self.index = index
        self.parent = None

    def is_nested(self):
        return isinstance(self.coefficient, EvaluationTree)

    def __repr__(self):
        return "TreeNode(%d: c=%s d=%s lh=%s)" % (
            self.index, self.coefficient_label(), self.partial_degree,
            self.lazy_height)

    def coefficient_label(self):
        if self.is_nested():
            return render(self.coefficient.polynomial)
        return str(self.coefficient)


class EvaluationTree(object):
    """
    EvaluationTree -- nodes in topological order, root last.

    `variable` is the index (into `variables`) of the variable this tree
    evaluates; nested coefficient trees evaluate the following ones.
    """

    def __init__(self, nodes, variable, variables, polynomial=None,
                 scheme_name=None):
        super().__init__()
        self.nodes = nodes
        self.root_index = len(nodes) - 1
        self.variable = variable
        self.variables = tuple(variables)
        self.polynomial = polynomial
        self.scheme_name = scheme_name

    @property
    def root(self):
        return self.nodes[self.root_index]

    @property
    def variable_name(self):
        if self.variable < len(self.variables):
            return self.variables[self.variable]
        return None

    def __len__(self):
        return len(self.nodes)

    def iter_trees(self):
        """This tree and all nested coefficient trees, depth first."""
        yield self
        for node in self.nodes:
            if node.is_nested():
                for subtree in node.coefficient.iter_trees():
                    yield subtree

    @property
    def max_lazy_height(self):
        return max(node.lazy_height for node in self.nodes)

    @property
    def max_partial_degree(self):
        return max(node.partial_degree for node in self.nodes)

    def __repr__(self):
        return "EvaluationTree(%s, %d nodes, %s)" % (
            self.variable_name, len(self.nodes), self.scheme_name)


def _build_nodes(exps, coeffs, scheme):
    """Build the nodes of the tree of a univariate term list.

    `exps` is strictly decreasing.  Each range [lo, hi) of terms, taken
    relative to an exponent `base`, is rooted at its last term; splitting
    peels off the top part `a` as a child range and continues on the
    remainder `b`, which shares the root.  A child's partial degree is
    measured from its parent's term, not from `base`.  Iterative, so that
    Horner chains of any length are fine.
    """
    m = len(exps)
    nodes = [TreeNode(coeffs[i], index=i) for i in range(m)]
    neg = [-e for e in exps]
    nodes[m - 1].partial_degree = exps[m - 1]

    stack = [(0, m, 0)]
    while len(stack) > 0:
        lo, hi, base = stack.pop()
        node = nodes[hi - 1]
        while hi - lo > 1:
            n = exps[lo] - base
            e = scheme.split(n)
            if not (0 < e <= n):
                raise SchemeError("scheme %s: split(%d) = %s not in (0, %d]" % (
                    scheme.name, n, e, n))
            # first term with exponent below base + e
            mid = bisect.bisect_right(neg, -(base + e), lo, hi)
            if mid == hi:
                # zero remainder: p = a * x^e, the root takes the factor
                base += e
                continue

            child = nodes[mid - 1]
            child.partial_degree = exps[mid - 1] - exps[hi - 1]
            child.parent = node
            node.children.append(child)
            if mid - 1 > lo:
                stack.append((lo, mid, base + e))
            lo = mid
    return nodes


def _degenerate(variable, variables, poly, scheme_name):
    node = TreeNode(0, partial_degree=0, index=0)
    return EvaluationTree([node], variable, variables, polynomial=poly,
                          scheme_name=scheme_name)


def build(p, s, variable_index=0):
    """Build the evaluation tree of `p` in one variable with scheme `s`.

    `p` may not depend on any other variable; see `build_multivariate`.
    The zero polynomial gives a single node with coefficient 0.
    """
    if p.is_zero():
        tree = _degenerate(variable_index, p.variables, p, s.name)
        return compute_lazy_heights(tree)

    if not (0 <= variable_index < p.nvars):
        raise TreeError("variable index %d out of range for %s" % (
            variable_index, list(p.variables)))
    for t in p.terms:
        if any(e for i, e in enumerate(t.exponents) if i != variable_index):
            raise TreeError("%s depends on more than variable '%s'; "
                            "use build_multivariate" % (
                                str(p), p.variables[variable_index]))

    exps = [t.exponents[variable_index] for t in p.terms]
    coeffs = [t.coefficient for t in p.terms]
    nodes = _build_nodes(exps, coeffs, s)
    tree = EvaluationTree(nodes, variable_index, p.variables, polynomial=p,
                          scheme_name=s.name)
    return compute_lazy_heights(tree)


def _build_level(p, schemes, level, variables):
    scheme = schemes[level]
    if p.is_zero():
        return _degenerate(level, variables, p, scheme.name)

    exps, coeffs = [], []
    for e, sub in coefficient_groups(p, 0):
        exps.append(e)
        if sub.is_constant():
            coeffs.append(sub.constant_value())
        else:
            coeffs.append(_build_level(sub, schemes, level + 1, variables))

    nodes = _build_nodes(exps, coeffs, scheme)
    return EvaluationTree(nodes, level, variables, polynomial=p,
                          scheme_name=scheme.name)


def build_multivariate(p, schemes):
    """Build a tree in the first variable whose node coefficients are
    trees over the remaining variables (plain ints when constant).

    Parameters
    ----------
    p : `~polyeval.polynomial.Polynomial`

    schemes : list of `~polyeval.scheme.FunctionScheme`, or one scheme
        One scheme per variable, outermost first; a single scheme is used
        for every variable.
    """
    if isinstance(schemes, FunctionScheme):
        schemes = [schemes] * max(1, p.nvars)
    schemes = list(schemes)

    if p.nvars == 0:
        # a bare constant, no variable at all
        tree = EvaluationTree([TreeNode(p.constant_value(), 0, 0)], 0, (),
                              polynomial=p, scheme_name=schemes[0].name)
        return compute_lazy_heights(tree)

    if len(schemes) != p.nvars:
        raise TreeError("need %d schemes for variables %s, got %d" % (
            p.nvars, list(p.variables), len(schemes)))

    tree = _build_level(p, schemes, 0, p.variables)
    return compute_lazy_heights(tree)


def compute_lazy_heights(t):
    """Annotate every node (nested trees included) with its lazy height:
    0 with at most one child, else 1 + the largest lazy height among the
    children after the first.
    """
    for tree in t.iter_trees():
        # children always precede their parent
        for node in tree.nodes:
            if len(node.children) <= 1:
                node.lazy_height = 0
            else:
                node.lazy_height = 1 + max(child.lazy_height
                                           for child in node.children[1:])
    return t


def reference_eval(t, point, domain):
    """Evaluate a tree node by node, straight from the recursive definition.

    Parameters
    ----------
    t : `EvaluationTree`

    point : `~polyeval.parser.PointAssignment` or dict
        Domain values by variable name.

    domain : `~polyeval.numeric.RingDomain`
    """
    x = None
    vals = [None] * len(t.nodes)
    for node in t.nodes:
        if node.is_nested():
            acc = reference_eval(node.coefficient, point, domain)
        else:
            acc = domain.from_integer(node.coefficient)

        for child in node.children:
            acc = domain.add(acc, vals[child.index])

        if node.partial_degree > 0:
            if x is None:
                name = t.variable_name
                try:
                    x = point[name]
                except KeyError:
                    raise BindingError("variable '%s' is unbound" % (name))
            acc = domain.mul(acc, numeric.power(domain, x, node.partial_degree))
        vals[node.index] = acc

    return vals[t.root_index]


def to_dot(t):
    """Render the tree as a DOT digraph (edges parent -> child)."""
    lines = ['digraph tree {']
    for node in t.nodes:
        lines.append('  n%d [label="c=%s d=%d lh=%d"];' % (
            node.index, node.coefficient_label(), node.partial_degree,
            node.lazy_height))
    for node in t.nodes:
        for child in node.children:
            lines.append('  n%d -> n%d;' % (node.index, child.index))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def tree_stats(t):
    """Summary numbers for a tree and its nested coefficient trees."""
    trees = list(t.iter_trees())
    exps = powers.required_exponents_by_variable(t)
    exponents = Bunch.Bunch()
    for idx, name in enumerate(t.variables):
        exponents[name] = len(exps.get(idx, ()))
    return Bunch.Bunch(
        nodes=sum(len(tree.nodes) for tree in trees),
        max_partial_degree=max(tree.max_partial_degree for tree in trees),
        max_lazy_height=max(tree.max_lazy_height for tree in trees),
        exponents=exponents)

#END
