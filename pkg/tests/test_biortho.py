import numpy as np
import pytest

from revival import GridFunction, Potential, biortho, data, sine_mode
from revival.biortho import expand
from revival.grid import GridMismatchError, l2_norm


def test_free_system_is_sine_basis(free_system):
    _, system = free_system
    assert system.gram_defect < 1e-9
    np.testing.assert_allclose(system.gamma, 1.0, atol=1e-9)
    for phi, phi_star, _, j in system.pairs[:5]:
        d = sine_mode(j, system.M).values
        assert np.max(np.abs(phi.values - d)) < 1e-7
        assert np.max(np.abs(phi_star.values - d)) < 1e-7


def test_expand_sine_mode(free_system):
    _, system = free_system
    c = expand(system, sine_mode(3, system.M))
    assert abs(c[2] - 1) < 1e-10
    assert np.max(np.abs(np.delete(c, 2))) < 1e-10


def test_expand_zero(mathieu_system):
    _, _, system = mathieu_system
    assert not np.any(expand(system, GridFunction(np.zeros(system.M + 1))))


def test_expand_grid_mismatch(mathieu_system):
    _, _, system = mathieu_system
    with pytest.raises(GridMismatchError):
        expand(system, data.poly(1024))


def test_gram_defect(mathieu_system):
    _, _, system = mathieu_system
    assert system.gram_defect < 1e-6
    G = system.gram()
    assert np.max(np.abs(G - np.eye(system.N))) == pytest.approx(system.gram_defect)


def test_star_anchor(mathieu_system):
    _, _, system = mathieu_system
    d = np.array([sine_mode(j, system.M).values for j in system.indices])
    from revival.grid import simpson_weights

    anchor = (system.phi_star * simpson_weights(system.M)) @ d.T
    np.testing.assert_allclose(np.diag(anchor), 1.0, atol=1e-12)


def test_gamma_upper_rate():
    _, system = biortho.solve(Potential.mathieu(0.5j), 50, 4096, jobs=4)
    j = system.indices[9:]
    scaled = j * np.abs(system.gamma[9:] - 1)
    assert scaled.max() < 1.0
    # the observed decay is faster than 1/j
    assert scaled[-1] < scaled[0]


def test_riesz_terms_bounded(mathieu_system):
    _, _, system = mathieu_system
    terms = []
    for phi, _, _, j in system.pairs[9:]:
        v = phi.values / l2_norm(phi)
        d = sine_mode(j, system.M).values
        v = v * np.exp(-1j * np.angle(np.sum(v * d)))
        terms.append(j * j * l2_norm(GridFunction(v - d)) ** 2)
    assert max(terms) < 3 * min(terms)


def test_step_expansion_converges(mathieu_system):
    _, _, system = mathieu_system
    f = data.step_datum(system.M)
    c = expand(system, f)
    errs = [l2_norm(f - GridFunction(c[:n] @ system.phi[:n])) for n in (10, 20, 50)]
    assert errs[0] > errs[1] > errs[2]


def test_smooth_reconstruction():
    M = 4096
    pairs, system = biortho.solve(Potential.mathieu(0.25j), 100, M, jobs=4)
    f = GridFunction.from_callable(lambda x: np.sin(x) * (np.pi - x) * x, M)
    assert l2_norm(f - system.reconstruct(expand(system, f))) < 1e-4
