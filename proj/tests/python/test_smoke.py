import math

import pytest

import dirichlet_lab as dl


def test_energy_small_values():
    assert [dl.multiplicative_energy(b) for b in (1, 2, 3, 4)] == [1, 6, 15, 32]
    assert dl.multiplicative_energy(37) == dl.multiplicative_energy_bruteforce(37)


def test_polynomial_roundtrip_and_moments():
    d = dl.DirichletPolynomial([1, 2], [1, 1])
    assert len(d) == 2
    assert d.frequencies == [1, 2]
    assert d == dl.DirichletPolynomial.ones(2)
    assert abs(d(0.0) - 2) < 1e-15
    assert dl.second_moment(d) == 2
    assert dl.fourth_moment(d) == 6
    assert dl.convolution_coefficients(d) == [(1, 1), (2, 2), (4, 1)]


def test_bounds():
    assert dl.helson_bound(10) == pytest.approx(math.sqrt(53 / 12), rel=1e-14)
    assert dl.interpolation_lower_bound(2, 6, 1) == pytest.approx(2**1.5 / math.sqrt(6))
    assert dl.lcm_sum_bound(dl.DirichletPolynomial.ones(2)) == pytest.approx(2**1.5 / math.sqrt(10))
    assert dl.moment_bound(4)["value"] == pytest.approx(math.sqrt(2))


def test_monte_carlo_two_term():
    e = dl.estimate_torus_norm(dl.DirichletPolynomial.ones(2), alpha=1.0, n_samples=400_000, seed=7)
    assert abs(e.mean - 4 / math.pi) < 3 * e.stderr
    again = dl.estimate_torus_norm(dl.DirichletPolynomial.ones(2), alpha=1.0, n_samples=400_000, seed=7, threads=3)
    assert again.mean == e.mean


def test_limits_and_curves():
    assert dl.steinhaus_limit() == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)
    assert dl.gaussian_modulus_mean([1, 0, 0, 1]) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-12)
    pts = dl.clt_ratio_curve([1, 2], n_samples=100_000, seed=1)
    assert pts[0]["ratio"] == pytest.approx(1.0)
    assert abs(pts[1]["ratio"] - 4 / math.pi / math.sqrt(2)) < 3 * pts[1]["stderr"]
    lac = dl.lacunary_ratio(2, 12)
    assert lac["method"] == "quadrature"
    assert abs(lac["ratio"] - dl.lacunary_limit()) < 0.05
    assert dl.acz_constant() == pytest.approx(-0.5113, abs=1e-4)
    assert dl.montgomery_theta(2, 100.0, 50) == pytest.approx(math.sin(100 * math.log(2)) / (2 * math.log(2)), abs=1e-9)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        dl.DirichletPolynomial([2, 1], [1, 1])
    with pytest.raises(ValueError):
        dl.interpolation_lower_bound(2, 6, 2.5)
    with pytest.raises(RuntimeError):
        dl.multiplicative_energy_bruteforce(500)
