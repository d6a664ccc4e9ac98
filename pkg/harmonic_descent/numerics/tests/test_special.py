import math
from fractions import Fraction
import numpy as np
import pytest
from scipy import special
from harmonic_descent.exceptions import DomainError
from harmonic_descent.numerics import (
    HarmonicTable,
    ZetaConstants,
    dilog,
    harmonic,
    harmonic_table,
    zeta_constants,
    zeta_int,
)


ZETA2 = math.pi**2 / 6


@pytest.mark.parametrize(
    "n,expected", [(1, 1.0), (2, 1.5), (3, 11 / 6), (4, 25 / 12)]
)
def test_harmonic_small(n, expected):
    assert harmonic(n) == pytest.approx(expected, rel=1e-15)


def test_harmonic_matches_exact_sums():
    exact = Fraction(0)
    table = harmonic_table(10_000)
    worst = 0.0
    for n in range(1, 10_001):
        exact += Fraction(1, n)
        worst = max(worst, abs(table[n] - float(exact)))
    assert worst <= 1e-12


def test_harmonic_table_grows():
    small = harmonic_table(10)
    assert small.max_n >= 10
    large = harmonic_table(small.max_n + 1)
    assert large.max_n >= 2 * small.max_n
    assert large[7] == small[7]


def test_harmonic_table_is_read_only():
    table = HarmonicTable.build(5)
    assert len(table) == 5
    assert table.as_array()[0] == 0.0
    assert list(table.as_array(2)) == [0.0, 1.0, 1.5]
    with pytest.raises(ValueError):
        table.values[1] = 2.0


@pytest.mark.parametrize("n", [0, -3])
def test_harmonic_domain(n):
    with pytest.raises(DomainError):
        harmonic(n)


def test_harmonic_table_index_out_of_range():
    table = HarmonicTable.build(5)
    with pytest.raises(DomainError):
        table[6]
    with pytest.raises(DomainError):
        table.as_array(6)


def test_zeta_closed_forms():
    assert zeta_int(2) == pytest.approx(ZETA2, rel=1e-15)
    assert zeta_int(4) == pytest.approx(math.pi**4 / 90, rel=1e-15)
    assert zeta_int(3) == pytest.approx(1.2020569031595942, rel=1e-15)


@pytest.mark.parametrize("s", range(2, 16))
def test_zeta_against_scipy(s):
    assert zeta_int(s) == pytest.approx(float(special.zeta(s)), rel=1e-14)


@pytest.mark.parametrize("s", [1, 0, 2.5])
def test_zeta_domain(s):
    with pytest.raises(DomainError):
        zeta_int(s)


def test_zeta_constants():
    consts = zeta_constants()
    assert consts is zeta_constants()
    assert consts.zeta2 == pytest.approx(ZETA2, rel=1e-15)
    assert consts.zeta3 / consts.zeta2 == pytest.approx(0.7307629694, rel=1e-9)
    with pytest.raises(DomainError):
        ZetaConstants(zeta2=1.6, zeta3=consts.zeta3, zeta4=consts.zeta4)


def test_dilog_values():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(ZETA2, rel=1e-15)
    assert dilog(0.5) == pytest.approx(0.5822405264650125, rel=1e-14)
    assert dilog(0.5) == pytest.approx(ZETA2 / 2 - math.log(2) ** 2 / 2, rel=1e-14)


def test_dilog_reflection():
    for z in np.arange(1, 100) * 0.01:
        lhs = dilog(z) + dilog(1.0 - z)
        rhs = ZETA2 - math.log(z) * math.log1p(-z)
        assert abs(lhs - rhs) < 1e-13


def test_dilog_against_scipy():
    # scipy's spence(x) is Li2(1 - x)
    z = np.linspace(0.0, 1.0, 201)
    expected = special.spence(1.0 - z)
    np.testing.assert_allclose(dilog(z), expected, rtol=1e-13, atol=1e-15)
    for zi, ei in zip(z[::20], expected[::20]):
        assert dilog(float(zi)) == pytest.approx(ei, rel=1e-13, abs=1e-15)


def test_dilog_array_matches_scalar():
    z = np.array([0.0, 0.1, 0.5, 0.500001, 0.9, 0.999999, 1.0])
    arr = dilog(z)
    assert isinstance(arr, np.ndarray)
    for zi, ai in zip(z, arr):
        assert ai == pytest.approx(dilog(float(zi)), rel=1e-14, abs=1e-16)


@pytest.mark.parametrize("z", [-0.1, 1.1, math.nan])
def test_dilog_domain(z):
    with pytest.raises(DomainError):
        dilog(z)
    with pytest.raises(DomainError):
        dilog(np.array([0.5, z]))
