import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revival import GridFunction, RationalTime, data, gauss_indicator, odd_periodic_extension, revival_superposition
from revival.revivals import gauss_sum, root_of_unity, shift_coefficients


def test_gauss_examples():
    assert gauss_indicator(3, 8, 5) == 5
    assert gauss_indicator(0, 1, 5) == 0
    assert gauss_indicator(4, 4, 1) == 1


@given(q=st.integers(1, 60), m=st.integers(-200, 200), j=st.integers(-200, 200))
def test_gauss_closed_form(q, m, j):
    expected = q if (m - j) % q == 0 else 0
    assert abs(gauss_sum(m, j, q) - expected) < 1e-9
    assert gauss_indicator(m, j, q) == expected


def test_quarter_roots_exact():
    assert root_of_unity(1, 4) == 1j
    assert root_of_unity(2, 4) == -1
    assert root_of_unity(7, 4) == -1j


def test_rational_time_reduces():
    t = RationalTime(2, 10)
    assert (t.p, t.q) == (1, 5)
    assert float(t) == pytest.approx(2 * np.pi / 5)
    with pytest.raises(ValueError):
        RationalTime(0, 3)


@given(t=st.builds(RationalTime, st.integers(1, 30), st.integers(1, 30)))
def test_shift_coefficients_unit_norm(t):
    # the map f -> revival field is unitary, so sum |a_k|^2 = 1
    a = shift_coefficients(t)
    assert np.sum(np.abs(a) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_odd_extension_examples():
    f = data.sine(1, 256)
    assert odd_periodic_extension(f, -np.pi / 2) == pytest.approx(-1.0)
    step = data.step_datum(256)
    assert odd_periodic_extension(step, np.pi / 2 - 2 * np.pi) == 1
    g = data.poly(256)
    for x0 in (0.0, 0.3, 1.7, np.pi / 2):
        assert odd_periodic_extension(g, x0 + 2 * np.pi) == pytest.approx(odd_periodic_extension(g, x0), abs=1e-12)
    assert odd_periodic_extension(g, np.pi) == g.values[-1]


def test_full_revival_exact():
    f = data.step_datum(1000)
    r = revival_superposition(f, RationalTime(1, 1))
    assert np.array_equal(r.values, f.values)


def test_half_period_mirror():
    f = data.indicator(0.2, 1.1, 512)
    r = revival_superposition(f, RationalTime(1, 2))
    expected = odd_periodic_extension(f, f.x - np.pi)
    assert np.max(np.abs(r.values - expected)) < 1e-12


def test_plateaus():
    f = data.step_datum(4100)
    r = revival_superposition(f, RationalTime(1, 5))
    levels = np.unique(np.round(r.values, 12))
    assert len(levels) <= 5 + 1  # plus the zero level between copies


def test_mean_phase():
    f = data.poly(200)
    t = RationalTime(3, 7)
    c = 0.3 + 0.1j
    a = revival_superposition(f, t, c).values
    b = revival_superposition(f, t).values
    np.testing.assert_allclose(a, np.exp(-2j * np.pi * c * 3 / 7) * b, atol=1e-15)


def test_interpolated_shifts_agree_with_aligned():
    # q = 3 does not divide 2M = 200, so the shifts are interpolated
    f = data.poly(100)
    g = data.poly(150)
    r1 = revival_superposition(f, RationalTime(1, 3))
    r2 = revival_superposition(g, RationalTime(1, 3))
    assert np.max(np.abs(r1.values[::2] - r2.values[::3])) < 1e-3
