"""Conjugate Gaussian and exact discrete posterior inference.

The Gaussian posterior is kept in precision form: each observation is a
rank-1 addition to the precision matrix, which stays numerically stable
over long horizons; sampling pays one Cholesky factorization per draw.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GaussianPosterior",
    "DiscretePosterior",
    "gaussian_update",
    "gaussian_sample",
    "discrete_update",
]


@dataclass(frozen=True)
class GaussianPosterior:
    mean: np.ndarray  # (d,)
    precision: np.ndarray  # (d, d), symmetric positive-definite
    noise_sigma: float

    def __post_init__(self):
        mu = np.asarray(self.mean, dtype=float)
        lam = np.asarray(self.precision, dtype=float)
        object.__setattr__(self, "mean", mu)
        object.__setattr__(self, "precision", lam)
        if lam.shape != (mu.size, mu.size):
            raise ValueError("precision shape mismatch")
        if np.abs(lam - lam.T).max() > 1e-10:
            raise ValueError("precision must be symmetric")
        try:
            np.linalg.cholesky(lam)
        except np.linalg.LinAlgError as exc:
            raise ValueError("precision must be positive-definite") from exc
        if self.noise_sigma <= 0:
            raise ValueError("noise_sigma must be positive")

    @property
    def d(self) -> int:
        return self.mean.size

    def covariance(self) -> np.ndarray:
        return np.linalg.inv(self.precision)

    @classmethod
    def standard(cls, d: int, noise_sigma: float = 1.0) -> "GaussianPosterior":
        """N(0, I) prior."""
        return cls(np.zeros(d), np.eye(d), noise_sigma)


def gaussian_update(post: GaussianPosterior, a: np.ndarray, r: float) -> GaussianPosterior:
    """Condition on one observation r = <a, theta> + N(0, sigma^2)."""
    a = np.asarray(a, dtype=float)
    if a.shape != (post.d,):
        raise ValueError("action dimension mismatch")
    lam_new = post.precision + np.outer(a, a) / post.noise_sigma**2
    lam_new = 0.5 * (lam_new + lam_new.T)
    b = post.precision @ post.mean + a * (r / post.noise_sigma**2)
    mu_new = np.linalg.solve(lam_new, b)
    return GaussianPosterior(mu_new, lam_new, post.noise_sigma)


def gaussian_sample(post: GaussianPosterior, rng: np.random.Generator) -> np.ndarray:
    """Exact posterior draw: mu + L^-T z with precision = L L^T."""
    try:
        L = np.linalg.cholesky(post.precision)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.cond(post.precision)
        raise RuntimeError(f"precision factorization failed (cond={cond:.3e})") from exc
    z = rng.standard_normal(post.d)
    return post.mean + np.linalg.solve(L.T, z)


@dataclass(frozen=True)
class DiscretePosterior:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must form a probability vector")

    @property
    def n(self) -> int:
        return self.weights.size


def discrete_update(post: DiscretePosterior, likelihoods: np.ndarray) -> DiscretePosterior:
    """Exact Bayes rule: new weights proportional to prior * likelihood."""
    lik = np.asarray(likelihoods, dtype=float)
    if lik.shape != post.weights.shape:
        raise ValueError("likelihood length mismatch")
    if np.any(lik < 0):
        raise ValueError("likelihoods must be nonnegative")
    unnorm = post.weights * lik
    total = unnorm.sum()
    if total <= 0:
        raise ValueError("observation has zero probability under the posterior")
    return DiscretePosterior(unnorm / total)
