import math

import numpy as np
import pytest
from scipy import stats

from ambient_swipt import point_process as pp
from ambient_swipt.errors import DomainError, SamplingError
from ambient_swipt.point_process import (
    GinibreSpectrum,
    build_spectrum,
    check_alpha,
    copies_for_alpha,
    sample_alpha_dpp,
    sample_dpp,
    sample_ppp,
    sample_radii,
)

RHO, R = 0.1, 5.0
AREA = math.pi * RHO * R**2


@pytest.fixture(scope="module")
def spectrum():
    return build_spectrum(RHO, R)


@pytest.fixture(scope="module")
def dpp_draws(spectrum):
    rng = np.random.default_rng(2024)
    return [sample_dpp(spectrum, rng) for _ in range(10_000)]


def test_spectrum_trace_and_first_eigenvalue(spectrum):
    assert spectrum.trace == pytest.approx(7.853981633974483, rel=1e-9)
    assert spectrum.eigenvalues[0] == pytest.approx(1 - math.exp(-AREA), rel=1e-14)
    assert spectrum.eigenvalues[-1] < 1e-12
    assert np.all((spectrum.eigenvalues >= 0) & (spectrum.eigenvalues <= 1))
    assert np.all(np.diff(spectrum.eigenvalues) <= 0)


def test_spectrum_vanishing_density():
    s = build_spectrum(1e-16, 3.0)
    assert s.n_max == 0
    assert s.trace < 1e-14


@pytest.mark.parametrize("rho,radius", [(0, 1), (-1, 1), (1, 0), (1, -2)])
def test_spectrum_domain_errors(rho, radius):
    with pytest.raises(DomainError):
        build_spectrum(rho, radius)


def test_eigenfunctions_orthonormal_on_disk(spectrum):
    # polar quadrature of <phi_m, phi_n> over B(0, R)
    r, wr = np.polynomial.legendre.leggauss(200)
    r = 0.5 * R * (r + 1)
    wr = 0.5 * R * wr
    theta = 2 * np.pi * np.arange(64) / 64
    z = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    w = (wr[:, None] * r[:, None] * np.full((1, 64), 2 * np.pi / 64)).ravel()
    idx = np.arange(12)
    phi = spectrum.eigenfunctions(z, idx)
    gram = (phi.conj() * w[:, None]).T @ phi
    np.testing.assert_allclose(gram, np.eye(12), atol=1e-9)


def test_kernel_diagonal_equals_density(spectrum):
    z = np.array([0.0, 1.0 + 1.0j, -3.0, 4.9j])
    phi = spectrum.eigenfunctions(z, np.arange(len(spectrum.eigenvalues)))
    diag = (np.abs(phi) ** 2 * spectrum.eigenvalues).sum(axis=1)
    np.testing.assert_allclose(diag, RHO, rtol=1e-9)


def test_zero_spectrum_gives_empty_pattern(rng):
    s = GinibreSpectrum(rho=0.1, radius=5.0, eigenvalues=np.zeros(10))
    assert len(sample_dpp(s, rng)) == 0


def test_dpp_points_inside_window(dpp_draws):
    assert max(p.radii.max(initial=0) for p in dpp_draws) <= R


def test_dpp_mean_count(dpp_draws):
    counts = np.array([len(p) for p in dpp_draws])
    se = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - AREA) < 3 * se


def test_dpp_void_probability(dpp_draws):
    # void probability of B(0, 2) is prod(1 - lambda_n) with eigenvalues rebuilt at radius 2
    expected = float(np.prod(1 - build_spectrum(RHO, 2.0).eigenvalues))
    hits = np.array([np.all(p.radii > 2.0) for p in dpp_draws], dtype=float)
    se = math.sqrt(expected * (1 - expected) / len(hits))
    assert abs(hits.mean() - expected) < 3 * se


def test_dpp_stationary_intensity_off_centre(dpp_draws):
    centre, rad = np.array([1.5, -1.0]), 1.8
    counts = np.array([np.sum(np.hypot(*(p.points - centre).T) < rad) for p in dpp_draws])
    se = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - RHO * math.pi * rad**2) < 3 * se


def test_dpp_angles_uniform(dpp_draws):
    theta = np.concatenate([np.angle(p.points[:, 0] + 1j * p.points[:, 1]) for p in dpp_draws])
    assert stats.kstest((theta + np.pi) / (2 * np.pi), "uniform").pvalue > 1e-3


def test_dpp_nearest_neighbour_repulsion(dpp_draws, rng):
    # pairs closer than 0.3 m are much rarer than under a Poisson process
    def close_pairs(patterns):
        n = 0
        for p in patterns:
            if len(p) > 1:
                d = np.hypot(*(p.points[:, None, :] - p.points[None, :, :]).transpose(2, 0, 1))
                n += (np.sum(d < 0.3) - len(p)) // 2
        return n

    ppp = [sample_ppp(RHO, R, rng) for _ in range(len(dpp_draws))]
    assert close_pairs(dpp_draws) < 0.2 * close_pairs(ppp)


def test_radial_sampler_matches_spectral_sampler(dpp_draws, spectrum):
    radii_spectral = np.concatenate([p.radii for p in dpp_draws])
    radii, owner = sample_radii(spectrum, -1.0, 10_000, np.random.default_rng(7))
    assert radii.max() <= R
    assert np.all(np.diff(owner) >= 0)
    assert stats.ks_2samp(radii, radii_spectral).pvalue > 1e-3


@pytest.mark.parametrize("alpha", [-1.0, -0.5, -1 / 3])
def test_radial_sampler_void_probability(spectrum, alpha):
    j = copies_for_alpha(alpha)
    inner = build_spectrum(RHO, 1.5).eigenvalues
    expected = float(np.prod((1 - inner / j) ** j))
    n = 40_000
    radii, owner = sample_radii(spectrum, alpha, n, np.random.default_rng(11))
    occupied = np.zeros(n, dtype=bool)
    occupied[owner[radii < 1.5]] = True
    se = math.sqrt(expected * (1 - expected) / n)
    assert abs((~occupied).mean() - expected) < 3 * se


def test_alpha_minus_one_is_single_dpp(spectrum):
    a = sample_alpha_dpp(spectrum, -1.0, np.random.default_rng(5))
    b = sample_dpp(spectrum, np.random.default_rng(5))
    np.testing.assert_array_equal(a.points, b.points)


def test_alpha_half_mean_count_independent_of_j(spectrum):
    rng = np.random.default_rng(99)
    counts = np.array([len(sample_alpha_dpp(spectrum, -0.5, rng)) for _ in range(3000)])
    se = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - AREA) < 3 * se
    radii, owner = sample_radii(spectrum, -0.25, 10_000, rng)
    c = np.bincount(owner, minlength=10_000)
    assert abs(c.mean() - AREA) < 3 * c.std(ddof=1) / 100


def test_alpha_zero_counts_are_poisson(spectrum):
    rng = np.random.default_rng(3)
    counts = np.array([len(sample_alpha_dpp(spectrum, 0.0, rng)) for _ in range(10_000)])
    edges = np.arange(2, 15)
    observed = np.array(
        [np.sum(counts <= edges[0])]
        + [np.sum(counts == k) for k in edges[1:]]
        + [np.sum(counts > edges[-1])]
    )
    probs = np.concatenate(
        [[stats.poisson.cdf(edges[0], AREA)], stats.poisson.pmf(edges[1:], AREA),
         [stats.poisson.sf(edges[-1], AREA)]]
    )
    assert stats.chisquare(observed, probs * len(counts)).pvalue > 0.01


def test_ppp_basic_moments(rng):
    assert all(len(sample_ppp(0.0, R, rng)) == 0 for _ in range(20))
    pats = [sample_ppp(RHO, R, rng) for _ in range(10_000)]
    counts = np.array([len(p) for p in pats])
    assert abs(counts.mean() - AREA) < 3 * counts.std(ddof=1) / 100
    r2 = np.concatenate([p.radii**2 for p in pats])
    assert abs(r2.mean() - R**2 / 2) < 3 * r2.std(ddof=1) / math.sqrt(len(r2))
    assert r2.max() <= R**2


def test_count_variance_decreases_with_repulsion(spectrum):
    n = 20_000
    variances = []
    for alpha in (0.0, -0.5, -1.0):
        _, owner = sample_radii(spectrum, alpha, n, np.random.default_rng(1))
        variances.append(np.bincount(owner, minlength=n).var(ddof=1))
    lam = spectrum.eigenvalues
    theory = [AREA, AREA - np.sum(lam**2) / 2, AREA - np.sum(lam**2)]
    assert variances[0] > variances[1] > variances[2]
    np.testing.assert_allclose(variances, theory, rtol=0.05)


def test_same_seed_same_pattern(spectrum):
    a = sample_alpha_dpp(spectrum, -0.5, np.random.default_rng(42))
    b = sample_alpha_dpp(spectrum, -0.5, np.random.default_rng(42))
    np.testing.assert_array_equal(a.points, b.points)


@pytest.mark.parametrize("alpha", [0.5, -0.4, -2.0, 1.0])
def test_invalid_alpha(alpha):
    with pytest.raises(DomainError):
        check_alpha(alpha)


class _StuckRng:
    """Proposals always land on the boundary and are never accepted."""

    def integers(self, high, size):
        return np.zeros(size, dtype=int)

    def random(self, size=None):
        return np.ones(size)


def test_sampling_budget_exhaustion(spectrum, monkeypatch):
    monkeypatch.setattr(pp, "MAX_ATTEMPTS_PER_POINT", 640)
    with pytest.raises(SamplingError, match="640 proposals"):
        pp._sample_projection(spectrum, [0, 1], _StuckRng())
