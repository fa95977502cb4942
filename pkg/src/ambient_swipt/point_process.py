"""
Ginibre alpha-determinantal and Poisson point processes on a disk.

The Ginibre kernel ``K(x, y) = rho exp(pi rho x conj(y)) exp(-pi rho (|x|^2 + |y|^2) / 2)``
restricted to ``B(0, R)`` is diagonalised by the monomials
``phi_n(z) ∝ exp(-pi rho |z|^2 / 2) (sqrt(pi rho) z)^n``, with eigenvalues
``lambda_n = gamma(n + 1, pi rho R^2) / n!``.

Two samplers are provided:

* :func:`sample_dpp` / :func:`sample_alpha_dpp` draw full planar patterns
  with the spectral (Hough-Krishnapur-Peres-Virag) algorithm.
* :func:`sample_radii` draws only the distances to the origin.  Because the
  eigenfunctions are monomials in ``z``, the moduli of a projection DPP with
  this kernel are independent, the one attached to ``phi_n`` having density
  proportional to ``r^(2n+1) exp(-pi rho r^2)`` on ``[0, R]``.  Every
  quantity in :mod:`ambient_swipt.rf` depends on the pattern only through
  these distances, so the Monte Carlo engine uses this exact, vectorised
  shortcut.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy import special as sc

from .errors import DomainError, SamplingError
from .special import regularized_lower_gamma_seq

__all__ = [
    "EIGEN_TOL",
    "GinibreSpectrum",
    "PointPattern",
    "build_spectrum",
    "check_alpha",
    "copies_for_alpha",
    "sample_alpha_dpp",
    "sample_dpp",
    "sample_ppp",
    "sample_radii",
]

EIGEN_TOL = 1e-12
MAX_ATTEMPTS_PER_POINT = 1_000_000
_PROPOSAL_BATCH = 64


@dataclass(frozen=True)
class PointPattern:
    """Transmitter locations (metres, sensor at the origin) inside ``B(0, R)``."""

    points: np.ndarray
    window_radius: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    @property
    def radii(self):
        return np.hypot(self.points[:, 0], self.points[:, 1])


@dataclass(frozen=True, eq=False)
class GinibreSpectrum:
    """Eigen-decomposition of the Ginibre kernel on ``B(0, radius)``."""

    rho: float
    radius: float
    eigenvalues: np.ndarray

    @property
    def n_max(self):
        return len(self.eigenvalues) - 1

    @property
    def scaled_area(self):
        return math.pi * self.rho * self.radius**2

    @property
    def trace(self):
        return math.fsum(self.eigenvalues)

    def log_abs_eigenfunction(self, n, r):
        """``log |phi_n(z)|`` at ``|z| = r``, assembled in the log domain.

        ``n`` and ``r`` broadcast against each other.
        """
        n = np.asarray(n)
        r = np.asarray(r, dtype=float)
        lam = self.eigenvalues[n]
        lfact = sc.gammaln(n + 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_r = np.log(math.sqrt(math.pi * self.rho) * r)
            # n * log(0) -> nan for n == 0; phi_0 carries no radial power
            radial = np.where(n == 0, 0.0, n * np.where(r > 0, log_r, -np.inf))
        return (
            0.5 * math.log(self.rho)
            - 0.5 * np.log(lam)
            - 0.5 * lfact
            - 0.5 * math.pi * self.rho * r**2
            + radial
        )

    def eigenfunctions(self, z, indices):
        """Matrix ``phi_indices[j](z[i])`` of complex eigenfunction values."""
        z = np.asarray(z, dtype=complex).reshape(-1, 1)
        idx = np.asarray(indices, dtype=int).reshape(1, -1)
        mod = self.log_abs_eigenfunction(idx, np.abs(z))
        return np.exp(mod + 1j * idx * np.angle(z))


def build_spectrum(rho, radius, tol=EIGEN_TOL):
    """Eigenvalues of the Ginibre kernel of density ``rho`` on ``B(0, radius)``.

    The sequence is truncated at the first eigenvalue below ``tol``; that
    eigenvalue is kept so the last entry is always ``< tol``.
    """
    rho = float(rho)
    radius = float(radius)
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho}", "rho")
    if not radius > 0:
        raise DomainError(f"window radius must be positive, got {radius}", "radius")
    return _build_spectrum(rho, radius, float(tol))


@lru_cache(maxsize=256)
def _build_spectrum(rho, radius, tol):
    a = math.pi * rho * radius**2
    lam = np.array(regularized_lower_gamma_seq(a, tol=tol))
    lam.setflags(write=False)
    return GinibreSpectrum(rho=rho, radius=radius, eigenvalues=lam)


def check_alpha(alpha):
    """Validate a repulsion parameter: ``0`` or ``-1/j`` for a positive integer ``j``."""
    alpha = float(alpha)
    if alpha == 0.0:
        return alpha
    if alpha < 0:
        j = -1.0 / alpha
        if j >= 1 and abs(j - round(j)) <= 1e-9 * j:
            return alpha
    raise DomainError(f"alpha must be 0 or -1/j for a positive integer j, got {alpha}", "alpha")


def copies_for_alpha(alpha):
    """Number ``j`` of superposed DPP copies for ``alpha = -1/j``; ``0`` for the PPP."""
    alpha = check_alpha(alpha)
    if alpha == 0.0:
        return 0
    return int(round(-1.0 / alpha))


def sample_ppp(rho, radius, rng):
    """Homogeneous Poisson process of intensity ``rho`` on ``B(0, radius)``."""
    if not rho >= 0:
        raise DomainError(f"density must be non-negative, got {rho}", "rho")
    if not radius > 0:
        raise DomainError(f"window radius must be positive, got {radius}", "radius")
    count = rng.poisson(math.pi * rho * radius**2)
    r = radius * np.sqrt(rng.random(count))
    theta = 2 * math.pi * rng.random(count)
    return PointPattern(np.column_stack([r * np.cos(theta), r * np.sin(theta)]), radius)


def _sample_modulus(spectrum, n, size, rng):
    # inverse CDF of pi*rho*r^2 ~ Gamma(n+1) truncated to [0, pi*rho*R^2]
    n = np.asarray(n)
    u = rng.random(size) * spectrum.eigenvalues[n]
    t = sc.gammaincinv(n + 1, u)
    r = np.sqrt(t / (math.pi * spectrum.rho))
    return np.minimum(r, spectrum.radius)


def _sample_projection(spectrum, indices, rng):
    """Spectral sampling of the projection DPP onto ``phi_indices``.

    Proposals come from the mixture ``(1/N) sum_n |phi_n|^2`` (pick an index,
    draw its modulus exactly, uniform phase).  The conditional density after
    ``N - i`` points is at most ``N/i`` times the proposal, which gives the
    acceptance ratio below without any tuning constant.
    """
    indices = np.asarray(indices, dtype=int)
    n_pts = len(indices)
    if n_pts == 0:
        return np.empty(0, dtype=complex)
    basis = np.empty((0, n_pts), dtype=complex)
    points = np.empty(n_pts, dtype=complex)
    for k in range(n_pts):
        attempts = 0
        while True:
            pick = indices[rng.integers(n_pts, size=_PROPOSAL_BATCH)]
            r = _sample_modulus(spectrum, pick, _PROPOSAL_BATCH, rng)
            z = r * np.exp(2j * math.pi * rng.random(_PROPOSAL_BATCH))
            u = rng.random(_PROPOSAL_BATCH)
            feats = spectrum.eigenfunctions(z, indices)
            norm2 = np.sum(np.abs(feats) ** 2, axis=1)
            proj2 = np.sum(np.abs(feats @ basis.conj().T) ** 2, axis=1) if k else 0.0
            ratio = np.clip((norm2 - proj2) / norm2, 0.0, 1.0)
            hit = np.flatnonzero(u < ratio)
            if hit.size:
                first = hit[0]
                points[k] = z[first]
                v = feats[first]
                break
            attempts += _PROPOSAL_BATCH
            if attempts >= MAX_ATTEMPTS_PER_POINT:
                raise SamplingError(
                    f"no acceptance after {attempts} proposals for point {k + 1} of {n_pts}"
                )
        # Gram-Schmidt, twice for stability
        w = v
        for _ in range(2):
            if k:
                w = w - basis.T @ (basis.conj() @ w)
        w = w / np.linalg.norm(w)
        basis = np.vstack([basis, w])
    return points


def _as_pattern(z, radius):
    return PointPattern(np.column_stack([z.real, z.imag]), radius)


def sample_dpp(spectrum, rng, scale=1.0):
    """One realisation of the Ginibre DPP (``alpha = -1``).

    ``scale`` multiplies every eigenvalue before the Bernoulli selection; the
    alpha-DPP sampler uses ``scale = 1/j``.
    """
    keep = np.flatnonzero(rng.random(len(spectrum.eigenvalues)) < scale * spectrum.eigenvalues)
    return _as_pattern(_sample_projection(spectrum, keep, rng), spectrum.radius)


def sample_alpha_dpp(spectrum, alpha, rng):
    """Ginibre alpha-DPP with ``alpha = -1/j`` as a union of ``j`` independent
    DPPs with eigenvalues ``lambda_n / j``; ``alpha = 0`` gives the PPP."""
    j = copies_for_alpha(alpha)
    if j == 0:
        return sample_ppp(spectrum.rho, spectrum.radius, rng)
    parts = [sample_dpp(spectrum, rng, scale=1.0 / j).points for _ in range(j)]
    return PointPattern(np.concatenate(parts), spectrum.radius)


def sample_radii(spectrum, alpha, n_trials, rng):
    """Distances to the origin for ``n_trials`` independent realisations.

    Returns ``(radii, owner)``: flat arrays where ``owner[i]`` is the trial
    index of ``radii[i]``, sorted by trial.
    """
    j = copies_for_alpha(alpha)
    if j == 0:
        counts = rng.poisson(spectrum.scaled_area, n_trials)
        owner = np.repeat(np.arange(n_trials), counts)
        radii = spectrum.radius * np.sqrt(rng.random(owner.size))
        return radii, owner
    lam = spectrum.eigenvalues
    keep = rng.random((n_trials, j, len(lam))) < lam / j
    trial, _, n = np.nonzero(keep)
    radii = _sample_modulus(spectrum, n, n.size, rng)
    return radii, trial

