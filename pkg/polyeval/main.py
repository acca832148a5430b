#
# main.py -- polyeval command line
#
# This is open-source software licensed under a BSD license.
# Please see the file LICENSE.md for details.
#
"""
Usage:
    polyeval compile POLY [--scheme NAME] [--var-order LIST] [--dot PATH] [--stats]
    polyeval eval POLY [--scheme NAME] [--domain DOMAIN] [--at BINDINGS] [--workers N]
    polyeval bench [--schemes LIST] [--degrees SPEC] [--csv PATH] ...

Exit codes: 0 ok, 1 parse error, 2 scheme error, 3 binding or domain
error, 4 I/O error.
"""
import sys
from argparse import ArgumentParser

from ginga.misc import Settings, log

from . import bench, numeric, tree, evaluator
from .parser import (parse_polynomial, parse_point, ParseError,
                     BindingError)
from .polynomial import PolynomialError
from .scheme import get_scheme, SchemeError
from .util import paths
from polyeval import __version__

svcname = 'polyeval'

exit_ok = 0
exit_parse = 1
exit_scheme = 2
exit_binding = 3
exit_io = 4


class ArgumentError(Exception):
    pass


class PolyEvalArgumentParser(ArgumentParser):
    """argparse exits with status 2 on usage errors, which is taken by
    scheme errors here; raise instead."""

    def error(self, message):
        raise ArgumentError(message)


class PolyEval(object):
    """
    Option set-up and dispatch of the polyeval subcommands.
    """

    def __init__(self, out_f=None, err_f=None):
        self.out_f = out_f
        self.err_f = err_f
        self.logger = None
        self.settings = None

    def add_default_options(self, argprs):
        argprs.add_argument('--version', action='version',
                            version='%(prog)s v{version}'.format(version=__version__),
                            help="Show the polyeval version and exit")
        log.addlogopts(argprs)

        subprs = argprs.add_subparsers(dest='command', metavar='COMMAND',
                                       parser_class=PolyEvalArgumentParser)
        subprs.required = True

        prs = subprs.add_parser('compile',
                                help="Build the evaluation tree of a polynomial")
        prs.add_argument('poly', metavar='POLY',
                         help="Polynomial, e.g. '3*x^8-x^7+1'")
        self._add_scheme_option(prs)
        prs.add_argument("--var-order", dest="var_order", default=None,
                         metavar="LIST",
                         help="Comma separated variable order (default: order of appearance)")
        prs.add_argument("--dot", dest="dot", default=None, metavar="PATH",
                         help="Write the tree in DOT format to PATH")
        prs.add_argument("--stats", dest="stats", default=False,
                         action="store_true",
                         help="Print node, degree, height and exponent counts")

        prs = subprs.add_parser('eval', help="Evaluate a polynomial at a point")
        prs.add_argument('poly', metavar='POLY',
                         help="Polynomial, e.g. 'x^2*y+1'")
        self._add_scheme_option(prs)
        prs.add_argument("--var-order", dest="var_order", default=None,
                         metavar="LIST",
                         help="Comma separated variable order (default: order of appearance)")
        prs.add_argument("--domain", dest="domain", default=None,
                         metavar="DOMAIN",
                         choices=['int', 'float', 'interval', 'poly'],
                         help="Evaluate over DOMAIN: int, float, interval or poly")
        prs.add_argument("--at", dest="at", default='', metavar="BINDINGS",
                         help="Point, e.g. 'x=2,y=3' or 'x=[1,1.5]'")
        prs.add_argument("--workers", dest="workers", type=int, default=None,
                         metavar="N",
                         help="Evaluate the root's subtrees on N threads")
        prs.add_argument("--checked", dest="checked", default=False,
                         action="store_true",
                         help="Verify register usage during evaluation")

        prs = subprs.add_parser('bench', help="Time the schemes over a grid")
        prs.add_argument("--schemes", dest="schemes", default=None,
                         metavar="LIST",
                         help="Comma separated scheme names")
        prs.add_argument("--degrees", dest="degrees", default=None,
                         metavar="SPEC",
                         help="Degrees: START:STOP:STEP (STOP included), a comma list or N")
        prs.add_argument("--coeff-bits", dest="coeff_bits", type=int,
                         default=None, metavar="N",
                         help="Bit size of the coefficients")
        prs.add_argument("--point-bits", dest="point_bits", type=int,
                         default=None, metavar="N",
                         help="Bit size of the evaluation point")
        prs.add_argument("--workers", dest="workers", default=None,
                         metavar="LIST",
                         help="Comma separated worker counts")
        prs.add_argument("--reps", dest="reps", type=int, default=None,
                         metavar="R",
                         help="Timed evaluations per grid point")
        prs.add_argument("--seed", dest="seed", type=int, default=None,
                         metavar="S",
                         help="Seed for the random polynomials and points")
        prs.add_argument("--csv", dest="csv", default=None, metavar="PATH",
                         help="Write the records as CSV to PATH (default: standard output)")
        prs.add_argument("--spec", dest="spec", default=None, metavar="FILE",
                         help="Read the grid from a YAML FILE; flags override it")
        prs.add_argument("--compile-times", dest="compile_times",
                         default=False, action="store_true",
                         help="Report compile and power table times per degree")

    def _add_scheme_option(self, prs):
        prs.add_argument("-s", "--scheme", dest="scheme", default=None,
                         metavar="NAME",
                         help="Scheme: direct, horner, estrin, balanced or UPPER:LOWER@N; "
                         "a comma list gives one per variable")

    def load_settings(self, logger):
        # nothing is written, a missing folder just means no user defaults
        prefs = Settings.Preferences(basefolder=str(paths.home_folder(svcname)),
                                     logger=logger)
        settings = prefs.create_category('general')
        settings.load(onError='silent')
        settings.set_defaults(scheme='balanced', domain='int', workers=1,
                              reps=bench.default_reps, seed=0,
                              coeff_bits=64, point_bits=64)
        return settings

    def _option(self, options, name, key=None):
        value = getattr(options, name)
        if value is None:
            value = self.settings.get(key or name, None)
        return value

    def _parse(self, options):
        variables = None
        if options.var_order is not None:
            variables = [name.strip() for name in options.var_order.split(',')
                         if len(name.strip()) > 0]
        return parse_polynomial(options.poly, variables=variables)

    def _build(self, p, options):
        names = str(self._option(options, 'scheme')).split(',')
        schemes = [get_scheme(name) for name in names]
        if len(schemes) == 1:
            schemes = schemes[0]
        return tree.build_multivariate(p, schemes)

    def cmd_compile(self, options):
        p = self._parse(options)
        t = self._build(p, options)
        self.logger.debug("built %s" % (repr(t)))

        if options.dot is not None:
            with open(options.dot, 'w') as out_f:
                out_f.write(tree.to_dot(t))
            self.logger.info("wrote %s" % (options.dot))

        if options.stats:
            stats = tree.tree_stats(t)
            prog = evaluator.compile_tree(t, logger=self.logger)
            pstats = evaluator.program_stats(prog)
            lines = ["nodes: %d" % (stats.nodes),
                     "max partial degree: %d" % (stats.max_partial_degree),
                     "max lazy height: %d" % (stats.max_lazy_height),
                     "registers: %d" % (pstats.registers)]
            for name in t.variables:
                lines.append("exponents[%s]: %d" % (name, stats.exponents[name]))
            self.out_f.write('\n'.join(lines) + '\n')
        return exit_ok

    def cmd_eval(self, options):
        p = self._parse(options)
        t = self._build(p, options)

        tag = self._option(options, 'domain')
        point = parse_point(options.at, p.variables, tag)
        variables = ()
        if point.domain_tag == 'polynomial' and len(point.bindings) > 0:
            variables = next(iter(point.bindings.values())).variables
        domain = numeric.get_domain(point.domain_tag, variables=variables)

        workers = int(self._option(options, 'workers'))
        prog = evaluator.compile_tree(t, logger=self.logger)
        if workers != 1:
            value = evaluator.evaluate_parallel(prog, point, domain, workers,
                                                logger=self.logger)
        else:
            value = evaluator.evaluate(prog, point, domain,
                                       checked=options.checked,
                                       logger=self.logger)

        self.out_f.write(domain.format(value) + '\n')
        return exit_ok

    def _bench_spec(self, options):
        overrides = dict(schemes=options.schemes, degrees=options.degrees,
                         coeff_bits=options.coeff_bits,
                         point_bits=options.point_bits,
                         workers=options.workers, repetitions=options.reps,
                         seed=options.seed,
                         compile_times=options.compile_times or None)
        if options.spec is not None:
            return bench.load_spec(options.spec, **overrides)

        settings = self.settings
        defaults = dict(schemes=settings.get('scheme'),
                        coeff_bits=settings.get('coeff_bits'),
                        point_bits=settings.get('point_bits'),
                        workers=settings.get('workers'),
                        repetitions=settings.get('reps'),
                        seed=settings.get('seed'))
        defaults.update({key: val for key, val in overrides.items()
                         if val is not None})
        return bench.BenchSpec(**defaults)

    def cmd_bench(self, options):
        spec = self._bench_spec(options)
        spec.validate()

        # the summary goes where the CSV does not
        if options.csv is not None:
            csv_f = open(options.csv, 'w', newline='')
            summary_f = self.out_f
        else:
            csv_f = None
            summary_f = self.err_f

        try:
            runner = bench.BenchRunner(self.logger, spec)
            runner.add_callback('grid-point-done', self._bench_progress,
                                summary_f, spec.compile_times)
            records = runner.run()

            bench.write_records(records, csv_f if csv_f is not None
                                else self.out_f)
        finally:
            if csv_f is not None:
                csv_f.close()
        return exit_ok

    def _bench_progress(self, runner, degree, records, info, out_f,
                        compile_times):
        res = ["%s/%d %.4f (%d ns)" % (r.scheme, r.workers,
                                       r.ratio_vs_balanced, r.median_ns)
               for r in bench.sort_records(records)]
        line = "degree %d: %s" % (degree, ', '.join(res))
        if compile_times:
            line += "; compile %s" % (', '.join(
                ["%s %d ns + powers %d ns" % (name, info.compile_ns[name],
                                             info.powers_ns[name])
                 for name in sorted(info.compile_ns.keys())]))
        out_f.write(line + '\n')
        out_f.flush()

    def report_error(self, e, code):
        self.logger.error("%s: %s" % (e.__class__.__name__, str(e)))
        self.err_f.write("%s: error: %s\n" % (svcname, str(e)))
        return code

    def main(self, options, args):
        """Run one subcommand; returns the exit code."""
        if self.out_f is None:
            self.out_f = sys.stdout
        if self.err_f is None:
            self.err_f = sys.stderr

        self.logger = log.get_logger(name=svcname, options=options)
        self.settings = self.load_settings(self.logger)

        cmds = dict(compile=self.cmd_compile, eval=self.cmd_eval,
                    bench=self.cmd_bench)
        try:
            return cmds[options.command](options)

        except (ParseError, PolynomialError, bench.BenchError) as e:
            return self.report_error(e, exit_parse)

        except (SchemeError, tree.TreeError) as e:
            return self.report_error(e, exit_scheme)

        except (BindingError, numeric.DomainError,
                evaluator.EvaluationError) as e:
            return self.report_error(e, exit_binding)

        except OSError as e:
            return self.report_error(e, exit_io)


def polyeval(sys_argv, out_f=None, err_f=None):
    """Command line entry point; returns the exit code."""
    app = PolyEval(out_f=out_f, err_f=err_f)

    argprs = PolyEvalArgumentParser(prog=svcname,
                                    description="Compile polynomials into evaluation trees and evaluate them")
    app.add_default_options(argprs)

    try:
        options = argprs.parse_args(sys_argv[1:])

    except ArgumentError as e:
        err_f = err_f if err_f is not None else sys.stderr
        err_f.write("%s: error: %s\n" % (svcname, str(e)))
        return exit_parse

    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else exit_ok

    return app.main(options, [])

#END
