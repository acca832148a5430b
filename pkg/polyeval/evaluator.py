#
# evaluator.py -- compiled evaluation trees and the coefficient walk
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
A tree is compiled into a flat list of records in topological order.  The
walk keeps a small register file m[]; for record i

    v = (m[slot] + c) * x^d
    m[slot] = 0
    m[parent_slot] += v            (the root returns v instead)

A node accumulates the values of its children in its register; the
register of every non-first child subtree lies strictly above the
registers used inside that subtree, so nothing pending is overwritten.
"""
import threading
from collections import namedtuple

from ginga.misc import log, Task, Bunch

from . import powers
from .parser import BindingError


class EvaluationError(Exception):
    pass

class RegisterHygieneError(EvaluationError):
    pass


Record = namedtuple('Record', ['coefficient', 'power_slot', 'lazy_slot',
                               'parent_slot', 'parent_index'])


class CompiledProgram(object):
    """
    CompiledProgram -- the flat form of an evaluation tree.

    `records[i].coefficient` is an int or a nested `CompiledProgram` for
    the following variable.  Immutable once built, apart from the cache
    of coefficients injected into the domains it has been evaluated in.
    """

    def __init__(self, records, exponent_list, register_count, variable,
                 variables, max_lazy_height, exponents_by_variable):
        super().__init__()
        self.records = tuple(records)
        self.exponent_list = exponent_list
        self.register_count = register_count
        self.variable = variable
        self.variables = tuple(variables)
        self.max_lazy_height = max_lazy_height
        self.exponents_by_variable = exponents_by_variable
        self.root_index = len(self.records) - 1

        root = self.root_index
        self.root_children = [i for i, r in enumerate(self.records)
                              if r.parent_index == root]
        self._injected = {}
        self._lock = threading.Lock()

    @property
    def variable_name(self):
        if self.variable < len(self.variables):
            return self.variables[self.variable]
        return None

    def __len__(self):
        return len(self.records)

    def iter_programs(self):
        yield self
        for r in self.records:
            if isinstance(r.coefficient, CompiledProgram):
                for prog in r.coefficient.iter_programs():
                    yield prog

    def injected(self, domain):
        """Scalar coefficients converted into `domain` (None where the
        coefficient is a nested program), cached per domain."""
        key = domain.cache_key
        with self._lock:
            coeffs = self._injected.get(key, None)
            if coeffs is None:
                coeffs = [None if isinstance(r.coefficient, CompiledProgram)
                          else domain.from_integer(r.coefficient)
                          for r in self.records]
                self._injected[key] = coeffs
        return coeffs

    def __repr__(self):
        return "CompiledProgram(%s, %d records, %d registers)" % (
            self.variable_name, len(self.records), self.register_count)


def _register_slots(t):
    """Register slot per node: 0 with at most one child, else one above
    every slot used inside the non-first child subtrees.
    """
    n = len(t.nodes)
    slots = [0] * n
    highest = [0] * n
    for node in t.nodes:
        i = node.index
        if len(node.children) > 1:
            slots[i] = 1 + max(highest[c.index] for c in node.children[1:])
        highest[i] = max([slots[i]] + [highest[c.index]
                                       for c in node.children])
    return slots


def compile_tree(t, logger=None):
    """Compile an evaluation tree (lazy heights computed) into a
    `CompiledProgram`; nested coefficient trees are compiled recursively.
    """
    if logger is None:
        logger = log.get_logger(null=True)

    slots = _register_slots(t)
    exps = powers.required_exponents(t)
    slot_of = {e: i for i, e in enumerate(exps)}

    promoted = 0
    records = []
    for node in t.nodes:
        i = node.index
        if node.is_nested():
            coefficient = compile_tree(node.coefficient, logger=logger)
        else:
            coefficient = node.coefficient
        if slots[i] != node.lazy_height:
            promoted += 1

        parent = node.parent
        records.append(Record(
            coefficient=coefficient,
            power_slot=slot_of.get(node.partial_degree, None),
            lazy_slot=slots[i],
            parent_slot=None if parent is None else slots[parent.index],
            parent_index=None if parent is None else parent.index))

    if promoted > 0:
        logger.debug("%d of %d nodes got a register above their lazy height" % (
            promoted, len(records)))

    return CompiledProgram(records, exps, max(slots) + 1, t.variable,
                           t.variables, t.max_lazy_height,
                           powers.required_exponents_by_variable(t))


def _walk(records, coeffs, pows, nregs, domain, lo, hi, root=None):
    """Run records lo..hi-1 with a private register file.

    Returns the root value if the root is in range; otherwise, when
    `root` is given, the list of values of the root's children met.
    """
    zero = domain.zero()
    add, mul = domain.add, domain.mul
    m = [zero] * nregs
    collected = []
    for i in range(lo, hi):
        r = records[i]
        v = add(m[r.lazy_slot], coeffs[i])
        if r.power_slot is not None:
            v = mul(v, pows[r.power_slot])
        m[r.lazy_slot] = zero

        if r.parent_slot is None:
            return v
        if r.parent_index == root:
            collected.append(v)
        else:
            m[r.parent_slot] = add(m[r.parent_slot], v)
    return collected


def _walk_checked(prog, coeffs, pows, domain):
    """The walk, verifying which node each register is accumulating for."""
    zero = domain.zero()
    m = [zero] * prog.register_count
    owner = [None] * prog.register_count
    for i, r in enumerate(prog.records):
        h = r.lazy_slot
        if owner[h] is not None and owner[h] != i:
            raise RegisterHygieneError(
                "record %d reads register %d holding a value for record %d" % (
                    i, h, owner[h]))
        if owner[h] is None and not domain.is_zero(m[h]):
            raise RegisterHygieneError(
                "record %d reads register %d which is not clear" % (i, h))

        v = domain.add(m[h], coeffs[i])
        if r.power_slot is not None:
            v = domain.mul(v, pows[r.power_slot])
        m[h] = zero
        owner[h] = None

        if r.parent_slot is None:
            dirty = [k for k in range(len(m))
                     if owner[k] is not None or not domain.is_zero(m[k])]
            if len(dirty) > 0:
                raise RegisterHygieneError("registers %s not clear after the walk" % (
                    dirty))
            return v

        p = r.parent_slot
        if owner[p] is not None and owner[p] != r.parent_index:
            raise RegisterHygieneError(
                "record %d adds into register %d holding a value for record %d" % (
                    i, p, owner[p]))
        owner[p] = r.parent_index
        m[p] = domain.add(m[p], v)

    raise EvaluationError("program has no root record")


class EvaluationSession(object):
    """
    EvaluationSession -- evaluates one compiled program in one domain.

    Power tables are built per point and kept for the last point
    evaluated.  A session is not meant to be shared between threads;
    the parallel evaluator only reads its tables.
    """

    def __init__(self, prog, domain, logger=None, checked=False):
        super().__init__()
        if logger is None:
            logger = log.get_logger(null=True)
        self.logger = logger
        self.prog = prog
        self.domain = domain
        self.checked = checked

        self._point_key = None
        self._tables = None

    def _bind(self, point):
        values = {}
        for idx in self.prog.exponents_by_variable.keys():
            name = self.prog.variables[idx]
            try:
                values[idx] = point[name]
            except KeyError:
                raise BindingError("variable '%s' is unbound" % (name))
        return values

    def power_tables(self, point):
        """Power tables (variable index -> `PowerTable`) for `point`."""
        values = self._bind(point)
        # same value objects as last time (0.0 == -0.0, so not by equality)
        key = tuple(sorted(values.items(), key=lambda kv: kv[0]))
        if (self._point_key is not None and len(key) == len(self._point_key)
                and all(a[1] is b[1] for a, b in zip(key, self._point_key))):
            return self._tables

        tables = {}
        for idx, exps in self.prog.exponents_by_variable.items():
            tables[idx] = powers.build_power_table(values[idx], exps,
                                                   self.domain)
            self.logger.debug("power table for '%s': %d exponents, %d multiplications" % (
                self.prog.variables[idx], len(exps),
                tables[idx].multiplications))

        self._point_key, self._tables = key, tables
        return tables

    def frame(self, prog, tables):
        """Coefficients and powers of `prog`'s records at the tabled point;
        nested coefficient programs are evaluated here."""
        coeffs = list(prog.injected(self.domain))
        for i, r in enumerate(prog.records):
            if isinstance(r.coefficient, CompiledProgram):
                coeffs[i] = self.walk(r.coefficient, tables)

        if len(prog.exponent_list) > 0:
            pows = tables[prog.variable].values(prog.exponent_list)
        else:
            pows = []
        return coeffs, pows

    def walk(self, prog, tables):
        coeffs, pows = self.frame(prog, tables)
        if self.checked:
            return _walk_checked(prog, coeffs, pows, self.domain)
        return _walk(prog.records, coeffs, pows, prog.register_count,
                     self.domain, 0, len(prog.records))

    def evaluate(self, point):
        tables = self.power_tables(point)
        return self.walk(self.prog, tables)

    def evaluate_parallel(self, point, evaluator, workers=None):
        """Evaluate with the root's child subtrees spread over at most
        `workers` threads of `evaluator` (a `ParallelEvaluator`)."""
        prog = self.prog
        children = prog.root_children
        if workers is None:
            workers = evaluator.numthreads
        workers = min(workers, evaluator.numthreads)
        if workers <= 1 or len(children) < 2 or self.checked:
            return self.evaluate(point)

        tables = self.power_tables(point)
        coeffs, pows = self.frame(prog, tables)

        # contiguous record ranges, one per root child, cut in at most
        # `workers` groups of about the same number of records
        starts = [0] + [c + 1 for c in children[:-1]]
        ranges = list(zip(starts, [c + 1 for c in children]))
        ngroups = min(workers, len(ranges))
        total = prog.root_index
        groups, cur, acc = [], [], 0
        for lo, hi in ranges:
            cur.append((lo, hi))
            acc += hi - lo
            if (acc * ngroups >= total * (len(groups) + 1) and
                    len(groups) < ngroups - 1):
                groups.append(cur)
                cur = []
        if len(cur) > 0:
            groups.append(cur)

        jobs = []
        for group in groups:
            lo, hi = group[0][0], group[-1][1]
            jobs.append((_walk, prog.records, coeffs, pows,
                         prog.register_count, self.domain, lo, hi,
                         prog.root_index))
        self.logger.debug("root children %d split in %d groups" % (
            len(children), len(groups)))
        results = evaluator.run(jobs)

        # same order of accumulation as the sequential walk
        domain = self.domain
        v = domain.zero()
        for values in results:
            for value in values:
                v = domain.add(v, value)
        r = prog.records[prog.root_index]
        v = domain.add(v, coeffs[prog.root_index])
        if r.power_slot is not None:
            v = domain.mul(v, pows[r.power_slot])
        return v


class ParallelEvaluator(object):
    """
    ParallelEvaluator -- a thread pool running walks over record ranges.

    Use as a context manager, or call start() and stop().
    """

    def __init__(self, logger, numthreads):
        super().__init__()
        if numthreads < 1:
            raise EvaluationError("number of workers must be >= 1, got %d" % (
                numthreads))
        self.logger = logger
        self.numthreads = numthreads

        # for task inheritance; no logger, a task with one logs str() of
        # its arguments and result, and those hold the big power tables
        self.tag = 'polyeval'
        self.shares = ['threadPool']
        self.ev_quit = threading.Event()
        self.threadPool = Task.ThreadPool(logger=self.logger,
                                          ev_quit=self.ev_quit,
                                          numthreads=numthreads)
        self.running = False

    def start(self):
        if not self.running:
            self.threadPool.startall(wait=True)
            self.running = True

    def stop(self):
        if self.running:
            self.threadPool.stopall(wait=True)
            self.running = False

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.stop()
        return False

    def run(self, jobs):
        """Run (func, *args) jobs on the pool; results in job order."""
        self.start()
        tasks = []
        for job in jobs:
            task = Task.FuncTask2(job[0], *job[1:])
            task.init_and_start(self)
            tasks.append(task)
        return [task.wait() for task in tasks]


def evaluate(prog, point, domain, checked=False, logger=None):
    """Evaluate a compiled program at `point` in `domain`.

    Parameters
    ----------
    prog : `CompiledProgram`

    point : `~polyeval.parser.PointAssignment` or dict
        Domain values by variable name.

    domain : `~polyeval.numeric.RingDomain`

    checked : bool
        Verify register usage during the walk.
    """
    session = EvaluationSession(prog, domain, logger=logger, checked=checked)
    return session.evaluate(point)


def evaluate_parallel(prog, point, domain, workers, logger=None,
                      evaluator=None):
    """Evaluate with the root's child subtrees on up to `workers` threads.

    The children's values are summed in topological order, as in the
    sequential walk, so the result is the one `evaluate` gives.  Pass a
    running `ParallelEvaluator` as `evaluator` to reuse its threads.
    """
    if workers < 1:
        raise EvaluationError("number of workers must be >= 1, got %d" % (
            workers))
    if logger is None:
        logger = log.get_logger(null=True)

    session = EvaluationSession(prog, domain, logger=logger)
    if workers == 1 or len(prog.root_children) < 2:
        return session.evaluate(point)

    if evaluator is not None:
        return session.evaluate_parallel(point, evaluator, workers=workers)

    with ParallelEvaluator(logger, workers) as evaluator:
        return session.evaluate_parallel(point, evaluator, workers=workers)


def program_stats(prog):
    """Record, register and exponent counts of a program."""
    return Bunch.Bunch(records=sum(len(p) for p in prog.iter_programs()),
                       registers=max(p.register_count
                                     for p in prog.iter_programs()),
                       exponents={prog.variables[idx]: len(exps)
                                  for idx, exps in
                                  prog.exponents_by_variable.items()})

#END
