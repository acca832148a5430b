import pytest

from polyeval import scheme
from polyeval.scheme import (builtin, get_scheme, threshold_combine,
                             validate, FunctionScheme, SchemeError)


@pytest.mark.parametrize(
    ("name", "k", "expected"), [
        ('direct', 8, 8),
        ('direct', 1, 1),
        ('horner', 8, 1),
        ('horner', 1, 1),
        ('estrin', 8, 8),
        ('estrin', 7, 4),
        ('estrin', 1, 1),
        ('balanced', 8, 4),
        ('balanced', 9, 4),
        ('balanced', 1, 1),
        ])
def test_builtin_split(name, k, expected):
    assert builtin(name).split(k) == expected


def test_estrin_big_argument():
    k = 2 ** 4000 + 12345
    assert builtin('estrin').split(k) == 2 ** 4000


class TestSplitProperties:

    def test_estrin_power_of_two(self):
        s = builtin('estrin')
        for k in list(range(1, 2 ** 16)) + [2 ** 20 - 1, 2 ** 20, 3 ** 50]:
            e = s.split(k)
            assert e & (e - 1) == 0
            assert e <= k < 2 * e

    def test_balanced_half(self):
        s = builtin('balanced')
        for k in list(range(2, 2 ** 16)) + [2 ** 20, 2 ** 20 + 1, 3 ** 50]:
            # ceil(k / 2)
            assert k - s.split(k) == (k + 1) // 2

    @pytest.mark.parametrize(
        ("k", "expected"), [(16, 16), (10, 1), (11, 8), (1, 1), (1000, 512)])
    def test_estrin_over_horner_at_10(self, k, expected):
        s = threshold_combine(builtin('estrin'), builtin('horner'), 10)
        assert s.split(k) == expected


class TestValidate:

    @pytest.mark.parametrize(("name"), sorted(scheme.builtins.keys()))
    def test_builtins_valid(self, name):
        res = validate(builtin(name), 2 ** 20)
        assert res.ok
        assert res.k is None

    def test_invalid_scheme(self):
        res = validate(FunctionScheme('zero', lambda k: 0), 10)
        assert not res.ok
        assert res.k == 1
        assert res.value == 0

    @pytest.mark.parametrize(
        ("name", "split"), [('over', lambda k: k + 1),
                            ('halves', lambda k: k // 2)])
    def test_first_k_violates(self, name, split):
        res = validate(FunctionScheme(name, split), 5)
        assert not res.ok
        assert res.k == 1

    def test_too_large(self):
        res = validate(FunctionScheme('bad', lambda k: k + 1 if k > 5 else 1),
                       10)
        assert not res.ok
        assert res.k == 6


class TestNames:

    def test_unknown(self):
        with pytest.raises(SchemeError):
            builtin('nosuch')
        with pytest.raises(SchemeError):
            get_scheme('nosuch')

    def test_case_and_space(self):
        assert get_scheme(' Horner ').name == 'horner'

    def test_threshold(self):
        s = get_scheme('estrin:horner@32')
        assert s.name == 'estrin:horner@32'
        assert s.split(64) == 64
        assert s.split(40) == 32
        assert s.split(32) == 1
        assert s.split(5) == 1

    @pytest.mark.parametrize(
        ("name"), ['estrin:horner', 'estrin:horner@', 'estrin@4',
                   'estrin:nosuch@4', 'estrin:horner@0', 'a:b:c@1'])
    def test_malformed_threshold(self, name):
        with pytest.raises(SchemeError):
            get_scheme(name)

    def test_combine_is_valid(self):
        s = threshold_combine(builtin('balanced'), builtin('direct'), 3)
        assert validate(s, 1000).ok
        assert s.split(3) == 3
        assert s.split(10) == 5
