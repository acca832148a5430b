#
# bench.py -- timing the evaluation schemes over a grid of sizes
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
For each degree of the grid one dense random polynomial and one random
point are drawn.  Every scheme is compiled once, checked against the
others and then evaluated a number of times; the median evaluation time
is divided by that of the Balanced scheme on one thread.
"""
import csv
import time
import warnings
from collections import namedtuple

import numpy as np
import yaml

from ginga.misc import Callback, Bunch, log

from . import misc, numeric, tree, evaluator
from .scheme import get_scheme

# Default number of timed evaluations per grid point
default_reps = 9
# smallest acceptable number of repetitions
min_reps = 3
# scheme all timings are divided by
baseline_scheme = 'balanced'

# staircase probe: term counts 2^k and 2^k+1 at this bit size
staircase_bits = 2048
staircase_k = 8
staircase_reps = 9

csv_columns = ['scheme', 'degree', 'terms', 'coeff_bits', 'point_bits',
               'workers', 'reps', 'median_ns', 'ratio_vs_balanced']

BenchRecord = namedtuple('BenchRecord', ['scheme', 'degree', 'term_count',
                                         'coeff_bits', 'point_bits',
                                         'workers', 'repetitions',
                                         'median_ns', 'ratio_vs_balanced'])


class BenchError(Exception):
    pass


def parse_list(text, conv=str):
    if isinstance(text, (list, tuple)):
        return [conv(x) for x in text]
    return [conv(x.strip()) for x in str(text).split(',')
            if len(x.strip()) > 0]


def parse_degrees(text):
    """Degrees from 'start:stop:step' (stop included), 'a,b,c' or 'n'."""
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        return [int(d) for d in text]
    text = str(text).strip()
    try:
        if ':' in text:
            parts = [int(x) for x in text.split(':')]
            if len(parts) == 2:
                parts.append(1)
            if len(parts) != 3:
                raise BenchError("degree range '%s' is not start:stop:step" % (
                    text))
            start, stop, step = parts
            if step < 1:
                raise BenchError("degree step must be >= 1: '%s'" % (text))
            return list(range(start, stop + 1, step))
        return parse_list(text, conv=int)

    except ValueError:
        raise BenchError("malformed degree spec '%s'" % (text))


class BenchSpec(object):
    """
    BenchSpec -- the grid to time.
    """

    def __init__(self, schemes=(baseline_scheme,), degrees=(16,),
                 coeff_bits=64, point_bits=64, workers=(1,),
                 repetitions=default_reps, seed=0, compile_times=False):
        super().__init__()
        self.schemes = parse_list(schemes)
        self.degrees = parse_degrees(degrees)
        self.coeff_bits = int(coeff_bits)
        self.point_bits = int(point_bits)
        self.workers = parse_list(workers, conv=int)
        self.repetitions = int(repetitions)
        self.seed = int(seed)
        self.compile_times = compile_times

    def validate(self):
        if self.repetitions < min_reps:
            raise BenchError("repetitions must be >= %d, got %d" % (
                min_reps, self.repetitions))
        if len(self.degrees) == 0:
            raise BenchError("no degrees to benchmark")
        if min(self.degrees) < 0:
            raise BenchError("degrees must be >= 0")
        if self.coeff_bits < 1 or self.point_bits < 1:
            raise BenchError("bit sizes must be >= 1")
        if len(self.schemes) == 0:
            raise BenchError("no schemes to benchmark")
        if len(self.workers) == 0 or min(self.workers) < 1:
            raise BenchError("worker counts must be >= 1")
        if self.seed < 0:
            raise BenchError("seed must be >= 0")
        # raises SchemeError for unknown names
        for name in self.schemes:
            get_scheme(name)

    def __repr__(self):
        return ("BenchSpec(schemes=%s, degrees=%s, bits=%d/%d, workers=%s, "
                "reps=%d, seed=%d)" % (
                    self.schemes, self.degrees, self.coeff_bits,
                    self.point_bits, self.workers, self.repetitions,
                    self.seed))


def load_spec(path, **overrides):
    """Read a `BenchSpec` from a YAML file; keyword arguments that are not
    None override the file."""
    with open(path, 'r') as in_f:
        d = yaml.safe_load(in_f)
    if d is None:
        d = {}
    if not isinstance(d, dict):
        raise BenchError("benchmark spec '%s' is not a mapping" % (path))

    d = {key.replace('-', '_'): val for key, val in d.items()}
    if 'reps' in d:
        d['repetitions'] = d.pop('reps')
    d.update({key: val for key, val in overrides.items() if val is not None})
    try:
        return BenchSpec(**d)
    except TypeError as e:
        raise BenchError("bad key in benchmark spec '%s': %s" % (path, str(e)))


class BenchRunner(Callback.Callbacks):
    """
    BenchRunner -- runs a `BenchSpec` grid point by point.

    Emits 'grid-point-done' (degree, records, info) after every degree;
    `info` holds the compile and power table times when requested.
    """

    def __init__(self, logger, spec):
        Callback.Callbacks.__init__(self)

        self.logger = logger
        self.spec = spec
        self.domain = numeric.IntegerDomain()

        for name in ('grid-point-done',):
            self.enable_callback(name)

    def make_instance(self, degree):
        """The polynomial and point of one degree, reproducible by seed."""
        spec = self.spec
        rng = misc.get_rng(spec.seed, degree)
        p = misc.random_dense(rng, degree, spec.coeff_bits)
        x = misc.random_bits_int(rng, spec.point_bits)
        return p, {'x': x}

    def compile(self, p, name):
        s = get_scheme(name)
        t = tree.build(p, s)
        return evaluator.compile_tree(t, logger=self.logger)

    def time_evaluation(self, session, point, workers, pool):
        if workers > 1:
            def evaluate():
                return session.evaluate_parallel(point, pool)
        else:
            def evaluate():
                return session.evaluate(point)

        times = []
        for i in range(self.spec.repetitions):
            t1 = time.perf_counter_ns()
            evaluate()
            times.append(time.perf_counter_ns() - t1)
        return int(np.median(times))

    def run_degree(self, degree, pools):
        spec = self.spec
        p, point = self.make_instance(degree)
        info = Bunch.Bunch(degree=degree, compile_ns={}, powers_ns={})

        names = list(spec.schemes)
        if baseline_scheme not in names:
            names.append(baseline_scheme)

        sessions = {}
        for name in names:
            t1 = time.perf_counter_ns()
            prog = self.compile(p, name)
            info.compile_ns[name] = time.perf_counter_ns() - t1

            session = evaluator.EvaluationSession(prog, self.domain,
                                                  logger=self.logger)
            t1 = time.perf_counter_ns()
            session.power_tables(point)
            info.powers_ns[name] = time.perf_counter_ns() - t1
            sessions[name] = session

        # every scheme and worker count must agree before anything is timed
        expected = misc.term_sum(p, point)
        for name, session in sessions.items():
            for workers in spec.workers:
                if workers > 1:
                    value = session.evaluate_parallel(point, pools[workers])
                else:
                    value = session.evaluate(point)
                if value != expected:
                    raise BenchError("scheme %s (workers=%d) disagrees at degree %d" % (
                        name, workers, degree))

        base_ns = self.time_evaluation(sessions[baseline_scheme], point, 1,
                                       None)
        base_ns = max(base_ns, 1)

        records = []
        for name in spec.schemes:
            for workers in spec.workers:
                if name == baseline_scheme and workers == 1:
                    median_ns = base_ns
                else:
                    median_ns = self.time_evaluation(sessions[name], point,
                                                     workers,
                                                     pools.get(workers))
                records.append(BenchRecord(
                    scheme=name, degree=degree, term_count=len(p),
                    coeff_bits=spec.coeff_bits, point_bits=spec.point_bits,
                    workers=workers, repetitions=spec.repetitions,
                    median_ns=median_ns,
                    ratio_vs_balanced=median_ns / base_ns))

        self.logger.info("degree %d: %d records, baseline %d ns" % (
            degree, len(records), base_ns))
        return records, info

    def run(self):
        spec = self.spec
        spec.validate()
        # canonical scheme names, as the records carry them
        spec.schemes = [get_scheme(name).name for name in spec.schemes]
        self.logger.info("running %s" % (str(spec)))

        pools = {}
        try:
            for workers in sorted(set(spec.workers)):
                if workers > 1:
                    pools[workers] = evaluator.ParallelEvaluator(self.logger,
                                                                 workers)
                    pools[workers].start()

            records = []
            for degree in spec.degrees:
                recs, info = self.run_degree(degree, pools)
                records.extend(recs)
                self.make_callback('grid-point-done', degree, recs, info)

        finally:
            for pool in pools.values():
                pool.stop()

        return sort_records(records)


def sort_records(records):
    return sorted(records, key=lambda r: (r.degree, r.scheme, r.workers))


def run_grid(spec, logger=None):
    """Time every (degree, scheme, workers) point of `spec`.

    Returns
    -------
    records : list of `BenchRecord`
        Sorted by degree, scheme and number of workers.
    """
    if logger is None:
        logger = log.get_logger(null=True)
    runner = BenchRunner(logger, spec)
    return runner.run()


fmtparams = {'delimiter': ',', 'quotechar': '"',
             'quoting': csv.QUOTE_MINIMAL, 'lineterminator': '\n'}


def write_records(records, out_f):
    writer = csv.writer(out_f, **fmtparams)
    writer.writerow(csv_columns)
    for r in sort_records(records):
        writer.writerow([r.scheme, r.degree, r.term_count, r.coeff_bits,
                         r.point_bits, r.workers, r.repetitions, r.median_ns,
                         "%.4f" % (r.ratio_vs_balanced)])


def write_csv(records, destination):
    """Write records as CSV to a path or an open text file."""
    if hasattr(destination, 'write'):
        write_records(records, destination)
        return

    with open(destination, 'w', newline='') as out_f:
        write_records(records, out_f)


def staircase_probe(logger=None, k=staircase_k, bits=staircase_bits,
                    repetitions=staircase_reps, seed=0):
    """Compare the time jump from 2^k to 2^k + 1 terms for Estrin and
    Balanced.

    Returns a Bunch with the two jump ratios and `ok`, True when Estrin's
    jump is the larger one.  Only indicative: a failure is reported as a
    warning, never as an error.
    """
    if logger is None:
        logger = log.get_logger(null=True)
    n = 1 << k
    spec = BenchSpec(schemes=['estrin', 'balanced'], degrees=[n - 1, n],
                     coeff_bits=bits, point_bits=bits, workers=[1],
                     repetitions=max(repetitions, min_reps), seed=seed)
    records = run_grid(spec, logger=logger)

    times = {(r.scheme, r.degree): r.median_ns for r in records}
    estrin_jump = times[('estrin', n)] / max(times[('estrin', n - 1)], 1)
    balanced_jump = times[('balanced', n)] / max(times[('balanced', n - 1)], 1)
    res = Bunch.Bunch(estrin_jump=estrin_jump, balanced_jump=balanced_jump,
                      ok=estrin_jump > balanced_jump, records=records)

    if not res.ok:
        msg = ("staircase probe: estrin jump %.3f not above balanced jump %.3f "
               "at %d/%d terms" % (estrin_jump, balanced_jump, n, n + 1))
        logger.warning(msg)
        warnings.warn(msg)
    return res

#END
