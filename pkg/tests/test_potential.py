import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revival import Potential
from revival.potential import ApproximationWarning, DomainError, load_samples_csv

xs = st.floats(min_value=0.0, max_value=np.pi)
qs = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


def test_mathieu_values():
    assert Potential.mathieu(0.25j)(0.0) == pytest.approx(0.5j)
    assert abs(Potential.mathieu(0.5j)(np.pi / 4)) < 1e-16


@given(x=xs, q=qs)
def test_fourier_matches_mathieu(x, q):
    a = Potential.mathieu(q)(x)
    b = Potential.fourier(cos=[0, 0, 2 * q])(x)
    assert abs(a - b) <= 1e-14 * max(1.0, abs(q))


def test_domain_error():
    with pytest.raises(DomainError):
        Potential.mathieu(1.0)(3.2)
    with pytest.raises(DomainError):
        Potential.zero()(-0.1)


@settings(max_examples=30, deadline=None)
@given(x=xs, q=qs)
def test_V1_mathieu_closed_form(x, q):
    assert abs(Potential.mathieu(q).V1(x) - q * np.sin(2 * x)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(x=xs, q=qs)
def test_V2_mathieu_closed_form(x, q):
    expected = q * q * (1 - np.cos(4 * x)) / 4 - 2 * q * np.cos(2 * x) + 2 * q
    assert abs(Potential.mathieu(q).V2(x) - expected) < 1e-9


def test_V1_V2_vanish_at_zero():
    for V in (Potential.mathieu(0.3 + 0.1j), Potential.fourier(cos=[1, 0.5], sin=[0, 0.2j])):
        assert V.V1(0.0) == 0
        assert V.V2(0.0) == 0


def test_constant():
    assert Potential.constant(1.0).V1(np.pi) == pytest.approx(np.pi, abs=1e-12)
    c = 0.3 + 0.1j
    x = np.linspace(0, np.pi, 7)
    np.testing.assert_allclose(Potential.constant(c).V2(x), c * c * x**2 / 2, atol=1e-10)


def test_means():
    assert Potential.mathieu(0.7j).mean == 0
    assert Potential.constant(0.3 + 0.1j).mean == pytest.approx(0.3 + 0.1j)
    x = np.linspace(0, np.pi, 101)
    assert Potential.samples(x, x).mean == pytest.approx(np.pi / 2, abs=1e-14)


def test_sup_norm():
    assert Potential.mathieu(0.25j).sup_norm == pytest.approx(0.5)
    assert Potential.mathieu(1j).sup_norm == pytest.approx(2.0)


def test_conj_and_shift():
    V = Potential.mathieu(0.3 + 0.2j)
    x = np.linspace(0, np.pi, 9)
    np.testing.assert_allclose(V.conj()(x), np.conj(V(x)))
    np.testing.assert_allclose(V.shifted(0.5j)(x), V(x) + 0.5j)
    np.testing.assert_allclose(V.shifted(2.0).centered()(x), V(x), atol=1e-14)


def test_samples_V2_warns():
    x = np.linspace(0, np.pi, 33)
    V = Potential.samples(x, np.where(x < 1, 1.0, -1.0))
    with pytest.warns(ApproximationWarning):
        V.V2(1.0)


def test_samples_csv(tmp_path):
    path = tmp_path / "v.csv"
    x = np.linspace(0, np.pi, 50)
    np.savetxt(path, np.column_stack([x, np.cos(x), 0 * x]), delimiter=",")
    V = load_samples_csv(path)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ApproximationWarning)
        assert V(np.pi / 3) == pytest.approx(0.5, abs=1e-3)
    assert abs(V.mean) < 1e-12
