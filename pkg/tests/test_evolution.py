import numpy as np
import pytest

from revival import GridFunction, Potential, RationalTime, biortho, data, revival_superposition, sine_mode
from revival.evolution import (
    GrowthOverflowError,
    decompose_at_rational_time,
    evolve,
    free_evolution,
    sine_coefficients,
    sine_synthesis,
    truncate,
)
from revival.grid import l2_norm


@pytest.mark.parametrize("t", [0.0, 0.7, 3.0, 10.0])
def test_single_mode(free_system, t):
    pairs, system = free_system
    d1 = sine_mode(1, system.M)
    u = evolve(system, pairs, d1, t)
    assert np.max(np.abs(u.values - np.exp(-1j * t) * d1.values)) < 1e-9


def test_time_zero_is_truncation(free_system):
    pairs, system = free_system
    f = data.step_datum(system.M)
    u = evolve(system, pairs, f, 0.0)
    assert np.max(np.abs(u.values - truncate(f, system.N).values)) < 1e-9


def test_negative_time(free_system):
    pairs, system = free_system
    with pytest.raises(ValueError):
        evolve(system, pairs, data.poly(system.M), -1.0)


def test_growth_guard():
    # lambda_1 is close to 1 - q = 1 + i/4, so mode 1 grows like exp(t/4)
    V = Potential.mathieu(-0.25j, grid=1024)
    pairs, system = biortho.solve(V, 5, 1024)
    with pytest.raises(GrowthOverflowError):
        evolve(system, pairs, data.poly(1024), 1000.0)


def test_dst_roundtrip():
    rng = np.random.default_rng(1)
    c = rng.normal(size=40) + 1j * rng.normal(size=40)
    g = sine_synthesis(c, 256)
    np.testing.assert_allclose(sine_coefficients(g, 40), c, atol=1e-12)


def test_dst_mode_limit():
    with pytest.raises(ValueError):
        sine_coefficients(data.poly(64), 64)


def test_free_evolution_d2_at_pi():
    d2 = sine_mode(2, 512)
    u = free_evolution(d2, np.pi, 10)
    assert np.max(np.abs(u.values - d2.values)) < 1e-12


def test_free_evolution_full_period():
    f = data.step_datum(4096)
    u = free_evolution(f, 2 * np.pi, 500)
    assert np.max(np.abs(u.values - truncate(f, 500).values)) < 1e-12


def test_free_evolution_matches_revival():
    M = 40960
    f = data.step_datum(M)
    t = RationalTime(1, 5)
    err = l2_norm(free_evolution(f, t, 2000) - revival_superposition(f, t))
    assert err < 0.05


def test_decomposition_free_case(free_system):
    pairs, system = free_system
    f = data.step_datum(system.M)
    d = decompose_at_rational_time(Potential.zero(grid=system.M), system, pairs, f, RationalTime(1, 1))
    np.testing.assert_allclose(d.revival_part.values, f.values)
    assert abs(l2_norm(d.correction) - l2_norm(truncate(f, system.N) - f)) < 1e-10


def test_mean_shift_covariance():
    M, N, t = 2048, 30, 0.9
    c = 0.3 + 0.1j
    f = data.poly(M)
    V = Potential.mathieu(0.25j, grid=M)
    a = evolve(*reversed(biortho.solve(V, N, M)), f, t)
    b = evolve(*reversed(biortho.solve(V.shifted(c), N, M)), f, t)
    assert np.max(np.abs(b.values - np.exp(-1j * c * t) * a.values)) < 1e-8


def test_selfadjoint_norm(free_system):
    M = 2048
    x = np.linspace(0, np.pi, 257)
    V = Potential.samples(x, np.where(x < np.pi / 3, 1.0, -0.5), grid=M)
    pairs, system = biortho.solve(V, 40, M)
    f = GridFunction.from_callable(lambda x: np.sin(x) ** 3, M)
    norms = [l2_norm(evolve(system, pairs, f, t)) for t in (0.0, 1.0, 2 * np.pi)]
    assert max(norms) - min(norms) < 1e-6
