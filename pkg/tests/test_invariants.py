"""Structural identities that hold across modules."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revival import GridFunction, Potential, RationalTime, biortho, data, eigen_sweep, revival_superposition
from revival.diagnostics import continuity_report
from revival.evolution import decompose_at_rational_time, evolve, free_evolution, truncate
from revival.grid import l2_norm
from revival.mathieu import characteristic_values


@settings(max_examples=20, deadline=None)
@given(p=st.integers(1, 20), q=st.integers(1, 12))
def test_revival_isometry_on_steps(p, q):
    M = 2 * q * (840 // q)
    f = data.indicator(0.4, 2.1, M)
    r = revival_superposition(f, RationalTime(p, q))
    assert abs(l2_norm(r) - l2_norm(f)) < 1e-9


@settings(max_examples=10, deadline=None)
@given(mu=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_phase_covariance(mu):
    f = data.step_datum(400)
    t = RationalTime(2, 5)
    a = revival_superposition(f, t, mu).values
    b = revival_superposition(f, t).values
    np.testing.assert_allclose(a, np.exp(-2j * np.pi * mu * 2 / 5) * b, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("t1,t2", [(0.3, 1.1), (2.0, 4.5), (np.pi / 3, np.pi / 7)])
def test_free_semigroup(t1, t2):
    f = data.step_datum(2048)
    a = free_evolution(free_evolution(f, t1, 200), t2, 200)
    b = free_evolution(f, t1 + t2, 200)
    assert np.max(np.abs(a.values - b.values)) < 1e-10


def test_decomposition_identity(mathieu_system):
    V, pairs, system = mathieu_system
    f = data.step_datum(system.M)
    d = decompose_at_rational_time(V, system, pairs, f, RationalTime(1, 4))
    assert np.max(np.abs(d.solution.values - d.revival_part.values - d.correction.values)) < 1e-15


def test_free_correction_norm(free_system):
    pairs, system = free_system
    f = data.step_datum(system.M)
    d = decompose_at_rational_time(Potential.zero(grid=system.M), system, pairs, f, RationalTime(1, 1))
    assert abs(l2_norm(d.correction) - l2_norm(f - truncate(f, system.N))) < 1e-10


@pytest.mark.parametrize("s", [2.0, -0.5j, 3 + 4j])
def test_continuity_report_homogeneous(s):
    f, g = data.step_datum(256), data.step_datum(512)
    a = continuity_report(f, g)
    b = continuity_report(f * s, g * s)
    assert b.max_jump == pytest.approx(abs(s) * a.max_jump, rel=1e-15)
    assert b.l2_norm == pytest.approx(abs(s) * a.l2_norm, rel=1e-15)
    assert b.sup_norm == pytest.approx(abs(s) * a.sup_norm, rel=1e-15)
    assert b.refinement_ratio == pytest.approx(a.refinement_ratio, rel=1e-14)


def test_spectrum_conjugation():
    V = Potential.mathieu(0.3 + 0.4j)
    a = np.array([p.lam for p in eigen_sweep(V, 20)])
    b = np.array([p.lam for p in eigen_sweep(V.conj(), 20)])
    assert np.max(np.abs(b - np.conj(a))) < 1e-8


def test_real_potential_real_spectrum():
    x = np.linspace(0, np.pi, 257)
    V = Potential.samples(x, np.where(x < 2.0, 1.0, -1.0), grid=2048)
    lam = np.array([p.lam for p in eigen_sweep(V, 30, 2048)])
    assert np.max(np.abs(lam.imag)) < 1e-8


@pytest.mark.parametrize("q", [0.3, 0.25j, 0.5 - 0.5j])
def test_mathieu_conjugation_and_truncation(q):
    a = characteristic_values(q, 10).values
    assert np.max(np.abs(characteristic_values(np.conj(q), 10).values - np.conj(a))) < 1e-10
    assert np.max(np.abs(characteristic_values(q, 10, K=128).values - a)) < 1e-10
    if np.isreal(q):
        assert np.max(np.abs(a.imag)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(a=st.floats(0, np.pi), b=st.floats(0, np.pi))
def test_V1_additive(a, b):
    V = Potential.fourier(cos=[0.2, 0.5j, 0.1], sin=[0, 0.3])
    x = np.linspace(a, b, 2001)
    integral = np.trapezoid(V(x), x) if abs(b - a) > 0 else 0
    # the reference quadrature is only second order; keep its error below 1e-7
    assert abs(V.V1(b) - V.V1(a) - integral) < 1e-6


def test_fourier_grid_independent():
    cos, sin = [0.2, 0.5j, 0.1], [0, 0.3]
    a = Potential.fourier(cos=cos, sin=sin, grid=2048)
    b = Potential.fourier(cos=cos, sin=sin, grid=4096)
    x = np.linspace(0, np.pi, 17)
    assert abs(a.mean - b.mean) < 1e-12
    assert np.max(np.abs(a.V1(x) - b.V1(x))) < 1e-12


def test_selfadjoint_isometry_times():
    M = 2048
    x = np.linspace(0, np.pi, 257)
    V = Potential.samples(x, np.where(x < np.pi / 2, 1.0, -1.0), grid=M)
    pairs, system = biortho.solve(V, 40, M)
    f = GridFunction.from_callable(lambda x: x * (np.pi - x), M)
    fN = system.reconstruct(biortho.expand(system, f))
    norms = [l2_norm(evolve(system, pairs, f, t)) for t in (0, 0.5, 1, 2 * np.pi / 5, 2 * np.pi)]
    assert max(abs(n - l2_norm(fN)) for n in norms) < 1e-6
