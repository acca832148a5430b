import io

import pytest
from ginga.misc import log

from polyeval import bench
from polyeval.bench import (BenchSpec, BenchRecord, BenchRunner, BenchError,
                            parse_degrees, run_grid, write_csv, load_spec)
from polyeval.scheme import SchemeError

header = ("scheme,degree,terms,coeff_bits,point_bits,workers,reps,"
          "median_ns,ratio_vs_balanced\n")


def small_spec(**kwdargs):
    d = dict(schemes=['estrin', 'balanced'], degrees=[8], coeff_bits=64,
             point_bits=64, workers=[1], repetitions=3, seed=0)
    d.update(kwdargs)
    return BenchSpec(**d)


class TestDegrees:

    @pytest.mark.parametrize(
        ("text", "expected"), [
            ('255:257', [255, 256, 257]),
            ('0:64:16', [0, 16, 32, 48, 64]),
            ('3,5,8', [3, 5, 8]),
            ('12', [12]),
            (7, [7]),
            ([1, 2], [1, 2]),
            ])
    def test_parse(self, text, expected):
        assert parse_degrees(text) == expected

    @pytest.mark.parametrize(("text"), ['1:2:3:4', '5:1:0', 'a:b', 'x'])
    def test_malformed(self, text):
        with pytest.raises(BenchError):
            parse_degrees(text)


class TestCSV:

    def test_golden(self):
        records = [
            BenchRecord('estrin', 8, 9, 64, 64, 1, 9, 1500, 1.5),
            BenchRecord('balanced', 8, 9, 64, 64, 1, 9, 1000, 1.0),
            ]
        out_f = io.StringIO()
        write_csv(records, out_f)
        assert out_f.getvalue() == (
            header +
            "balanced,8,9,64,64,1,9,1000,1.0000\n"
            "estrin,8,9,64,64,1,9,1500,1.5000\n")

    def test_empty(self):
        out_f = io.StringIO()
        write_csv([], out_f)
        assert out_f.getvalue() == header

    def test_to_path(self, tmp_path):
        path = tmp_path / 'bench.csv'
        write_csv([BenchRecord('horner', 2, 3, 8, 8, 2, 3, 10, 0.25)],
                  str(path))
        assert path.read_text() == header + "horner,2,3,8,8,2,3,10,0.2500\n"


class TestSpec:

    def test_defaults_validate(self):
        spec = BenchSpec()
        spec.validate()
        assert spec.schemes == ['balanced']
        assert spec.repetitions == bench.default_reps

    @pytest.mark.parametrize(
        ("kwdargs"), [dict(repetitions=2), dict(workers=[0]),
                      dict(degrees=[-1]), dict(coeff_bits=0),
                      dict(schemes=[]), dict(seed=-1)])
    def test_invalid(self, kwdargs):
        with pytest.raises(BenchError):
            small_spec(**kwdargs).validate()

    def test_unknown_scheme(self):
        with pytest.raises(SchemeError):
            small_spec(schemes=['nosuch']).validate()

    def test_comma_lists(self):
        spec = BenchSpec(schemes='horner, estrin', degrees='1:3',
                         workers='1,2')
        assert spec.schemes == ['horner', 'estrin']
        assert spec.degrees == [1, 2, 3]
        assert spec.workers == [1, 2]

    def test_yaml(self, tmp_path):
        path = tmp_path / 'grid.yml'
        path.write_text("schemes: [horner, direct]\n"
                        "degrees: '3:5'\n"
                        "reps: 3\n"
                        "coeff-bits: 16\n"
                        "workers: [1, 2]\n")
        spec = load_spec(str(path), seed=7, workers=None)
        assert spec.schemes == ['horner', 'direct']
        assert spec.degrees == [3, 4, 5]
        assert spec.repetitions == 3
        assert spec.coeff_bits == 16
        assert spec.workers == [1, 2]
        assert spec.seed == 7

    def test_yaml_errors(self, tmp_path):
        path = tmp_path / 'list.yml'
        path.write_text("- horner\n- direct\n")
        with pytest.raises(BenchError):
            load_spec(str(path))
        path = tmp_path / 'badkey.yml'
        path.write_text("colour: blue\n")
        with pytest.raises(BenchError):
            load_spec(str(path))


class TestGrid:

    def test_records(self):
        spec = small_spec(degrees='255:257')
        records = run_grid(spec)
        assert len(records) == 6
        assert [(r.degree, r.scheme) for r in records] == [
            (255, 'balanced'), (255, 'estrin'), (256, 'balanced'),
            (256, 'estrin'), (257, 'balanced'), (257, 'estrin')]
        for r in records:
            assert r.term_count == r.degree + 1
            assert r.repetitions == 3
            assert r.median_ns > 0
            if r.scheme == 'balanced':
                assert r.ratio_vs_balanced == 1.0

    def test_balanced_only(self):
        records = run_grid(small_spec(schemes=['balanced'], degrees=[4, 9]))
        assert [r.ratio_vs_balanced for r in records] == [1.0, 1.0]

    def test_baseline_not_recorded(self):
        records = run_grid(small_spec(schemes=['Direct', 'estrin:horner@4'],
                                      degrees=[20], workers=[1, 2]))
        assert len(records) == 4
        assert set(r.scheme for r in records) == {'direct', 'estrin:horner@4'}
        assert set(r.workers for r in records) == {1, 2}

    def test_instances_reproducible(self):
        logger = log.get_logger(null=True)
        a = BenchRunner(logger, small_spec(seed=3)).make_instance(30)
        b = BenchRunner(logger, small_spec(seed=3)).make_instance(30)
        c = BenchRunner(logger, small_spec(seed=4)).make_instance(30)
        assert a == b
        assert a != c

    def test_callback(self):
        runner = BenchRunner(log.get_logger(null=True),
                             small_spec(degrees=[2, 3], compile_times=True))
        seen = []

        def grid_point_done(runner, degree, records, info):
            seen.append((degree, len(records), sorted(info.compile_ns.keys())))

        runner.add_callback('grid-point-done', grid_point_done)
        runner.run()
        assert seen == [(2, 2, ['balanced', 'estrin']),
                        (3, 2, ['balanced', 'estrin'])]


def test_staircase_probe(recwarn):
    res = bench.staircase_probe(k=5, bits=256, repetitions=3)
    assert res.estrin_jump > 0 and res.balanced_jump > 0
    assert len(res.records) == 4
    # only advisory: a miss warns, nothing raises
    if not res.ok:
        assert len(recwarn) > 0
