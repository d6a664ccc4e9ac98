import math
import numpy as np
import pytest
from harmonic_descent.utils import (
    format_value,
    mean_estimate,
    pmf_from_counts,
    proportion_estimate,
    total_variation,
    write_csv,
)


@pytest.mark.parametrize(
    "value,expected",
    [
        (1 / 3, "0.333333333333"),
        (6 / math.pi**2, "0.607927101854"),
        (2.0, "2"),
        (7, "7"),
        (True, "true"),
        (math.nan, "nan"),
        (np.float64(0.5), "0.5"),
        (np.int64(3), "3"),
        ("label", "label"),
    ],
)
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_write_csv(work_dir):
    out = work_dir / "table.csv"
    text = write_csv(("a", "b"), [(1, 0.25), (2, 1 / 3)], out)
    assert text == "a,b\n1,0.25\n2,0.333333333333\n"
    assert out.read_text() == text
    assert out.read_bytes() == text.encode("utf-8")
    assert write_csv(("a",), []) == "a\n"


def test_proportion_estimate():
    p, se = proportion_estimate(3, 4)
    assert p == 0.75
    assert se == pytest.approx(math.sqrt(0.75 * 0.25 / 4))
    assert proportion_estimate(5, 5) == (1.0, 0.0)


def test_mean_estimate():
    mean, se = mean_estimate([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert se == pytest.approx(1.0 / math.sqrt(3.0))
    assert mean_estimate([4.0]) == (4.0, 0.0)


def test_pmf_and_total_variation():
    pmf = pmf_from_counts([1, 1, 2], 3)
    np.testing.assert_allclose(pmf, [2 / 3, 1 / 3, 0.0])
    assert total_variation([0.5, 0.5], [1.0, 0.0]) == pytest.approx(0.5)
    assert total_variation(pmf, pmf) == 0.0
