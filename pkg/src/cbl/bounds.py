"""Closed-form and semi-empirical regret bound calculators.

Covers the chained bound, its linear-bandit specialization, the entropy
integral form, the 7*d*sqrt(T) unit-ball bound and the alpha-series
constant behind its leading factor, plus empirical entropies of quantized
optimal actions.  Entropies are in nats throughout.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .agents import trial_rng
from .bandit_env import optimal_action, sample_parameter
from .metric_nets import QuantizationChain, covering_number_bounds, quantize

__all__ = [
    "BoundReport",
    "gamma_bar_linear",
    "chained_bound",
    "smooth_linear_bound",
    "entropy_integral_bound",
    "unit_ball_bound",
    "alpha_series_constant",
    "empirical_quantized_entropy",
]


@dataclass(frozen=True)
class BoundReport:
    formula_id: str
    rows: tuple  # (k, gamma_bar, H_k_nats, term)
    total: float
    tail_bound: float = 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["k", "gamma_bar", "H_k_nats", "term"])
        for k, g, h, term in self.rows:
            writer.writerow([k, repr(float(g)), repr(float(h)), repr(float(term))])
        writer.writerow(["TOTAL", "", "", repr(float(self.total))])
        return buf.getvalue()


def gamma_bar_linear(k: int, d: int, rho_k: Optional[float] = None) -> float:
    """Per-level information-ratio cap for d-dimensional linear bandits:
    2 * (6 * 2**-k)**2 * d, or 2 * rho_k**2 * d when rho_k is supplied."""
    if d < 1:
        raise ValueError("d must be >= 1")
    rho = 6.0 * 2.0 ** (-k) if rho_k is None else float(rho_k)
    if rho < 0:
        raise ValueError("rho_k must be nonnegative")
    return 2.0 * rho**2 * d


def chained_bound(T: int, rows: Sequence[tuple]) -> BoundReport:
    """Sum over levels of sqrt(2 * gamma_bar_k * T * H_k)."""
    if T < 1:
        raise ValueError("T must be >= 1")
    out = []
    for k, gamma_bar, h in rows:
        if gamma_bar < 0 or h < 0:
            raise ValueError("gamma_bar and H_k must be nonnegative")
        out.append((int(k), float(gamma_bar), float(h), math.sqrt(2.0 * gamma_bar * T * h)))
    total = sum(r[3] for r in out)
    return BoundReport("chained", tuple(out), total)


def smooth_linear_bound(
    d: int,
    T: int,
    entropies: Sequence[tuple],
    log_cover_upper: Optional[Callable[[int], float]] = None,
) -> BoundReport:
    """12 * sum over k of 2**-k * sqrt(d * T * H_k), for (k, H_k) rows.

    When log_cover_upper is given (k -> upper bound on log net cardinality),
    the report carries a certified tail for the truncated levels, using the
    geometric decay of 2**-k against the sqrt-log growth of the entropy cap.
    """
    if d < 1 or T < 1:
        raise ValueError("d and T must be >= 1")
    rows = []
    for k, h in entropies:
        if h < 0:
            raise ValueError("entropies must be nonnegative")
        term = 12.0 * 2.0 ** (-k) * math.sqrt(d * T * h)
        rows.append((int(k), gamma_bar_linear(k, d), float(h), term))
    total = sum(r[3] for r in rows)
    tail = 0.0
    if log_cover_upper is not None and rows:
        k_last = max(r[0] for r in rows)
        tail = _smooth_tail(d, T, k_last, log_cover_upper)
    return BoundReport("smooth_linear", tuple(rows), total, tail_bound=tail)


def _smooth_tail(d: int, T: int, k_last: int, log_cover_upper) -> float:
    """Certified bound on the levels dropped after k_last: caps H_k by the
    covering-number envelope and sums the geometric tail in closed form."""
    # H_k <= log N(2**-k) <= a + b*k with a, b from two envelope evaluations
    k1, k2 = k_last + 1, k_last + 2
    b = max(log_cover_upper(k2) - log_cover_upper(k1), 0.0)
    a = log_cover_upper(k1) - b * k1
    # sqrt(a + b k) <= sqrt(|a|) + sqrt(b) * k for k >= 1
    c0, c1 = math.sqrt(max(a, 0.0)), math.sqrt(b)
    x = 0.5
    k0 = k_last + 1
    geo = x**k0 / (1 - x)
    geo_k = x**k0 * (k0 - (k0 - 1) * x) / (1 - x) ** 2  # sum k x^k, k >= k0
    return 12.0 * math.sqrt(d * T) * (c0 * geo + c1 * geo_k)


def entropy_integral_bound(
    d: int,
    T: int,
    log_covering: Callable[[float], float],
    diam: float,
    rel_tol: float = 1e-6,
) -> float:
    """24 * sqrt(d*T) times the integral over (0, diam] of
    sqrt(log N(epsilon)); the integrand vanishes beyond the diameter."""
    if d < 1 or T < 1:
        raise ValueError("d and T must be >= 1")
    if diam <= 0:
        raise ValueError("diam must be positive")

    def integrand(eps: float) -> float:
        v = log_covering(eps)
        if v < 0:
            raise ValueError("log_covering must be nonnegative")
        return math.sqrt(v)

    value, err = quad(integrand, 0.0, diam, epsrel=rel_tol, epsabs=0.0, limit=200)
    if value > 0 and err / value > 100 * rel_tol:
        raise RuntimeError(f"quadrature did not converge (estimate {value}, error {err})")
    return 24.0 * math.sqrt(d * T) * value


def unit_ball_bound(d: int, T: int) -> float:
    """7 * d * sqrt(T) for unit-ball linear bandits."""
    if d < 1 or T < 1:
        raise ValueError("d and T must be >= 1")
    return 7.0 * d * math.sqrt(T)


def alpha_series_constant(alpha: float, tail_terms: int = 200) -> float:
    """2*(sqrt(2 log(2a+1)) + sum_{k>=2} (2a^-k + 2a^-(k-1)) sqrt(2 log(2a^k+1))).

    Computes the partial sum over `tail_terms` terms plus a rigorous
    geometric envelope on the remainder; raises if the certified tail
    exceeds 1e-6.
    """
    if alpha <= 1:
        raise ValueError("alpha must be > 1 for the series to converge")
    if tail_terms < 1:
        raise ValueError("tail_terms must be >= 1")
    total = math.sqrt(2.0 * math.log(2.0 * alpha + 1.0))
    K = tail_terms + 1
    for k in range(2, K + 1):
        weight = 2.0 * alpha ** (-k) + 2.0 * alpha ** (-(k - 1))
        total += weight * math.sqrt(2.0 * math.log(2.0 * alpha**k + 1.0))
    # tail: sqrt(2 log(2 a^k + 1)) <= sqrt(2)(sqrt(log 3) + sqrt(log a) * k)
    x = 1.0 / alpha
    c = 2.0 * (1.0 + alpha) * math.sqrt(2.0)
    s0, s1 = math.sqrt(math.log(3.0)), math.sqrt(math.log(alpha))
    k0 = K + 1
    geo = x**k0 / (1 - x)
    geo_k = x**k0 * (k0 - (k0 - 1) * x) / (1 - x) ** 2
    tail = c * (s0 * geo + s1 * geo_k)
    if tail > 1e-6:
        raise RuntimeError(f"tail bound {tail:.3e} not converged; raise tail_terms")
    return 2.0 * total


def empirical_quantized_entropy(
    chain: QuantizationChain,
    spec,
    k: int,
    samples: int,
    master_seed: int,
) -> float:
    """Plug-in entropy (nats) of the level-k quantized optimal action.

    Draws parameters from the prior, maps each to its optimal action over the
    chain's point set, projects to level k, and returns the empirical Shannon
    entropy of the resulting center distribution.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = trial_rng(master_seed, 0)
    pts = chain.space.points
    counts: dict = {}
    from .bandit_env import FiniteBanditSpec, LinearGaussianSpec

    thetas = [sample_parameter(spec, rng) for _ in range(samples)]
    if isinstance(spec, LinearGaussianSpec):
        theta_mat = np.vstack(thetas)
        best = np.argmax(theta_mat @ pts.T, axis=1)
        for idx in best:
            c = quantize(chain, int(idx), k)
            counts[c] = counts.get(c, 0) + 1
    else:
        for theta in thetas:
            a_star = optimal_action(spec, theta)
            c = quantize(chain, int(a_star), k)
            counts[c] = counts.get(c, 0) + 1
    p = np.array(list(counts.values()), dtype=float) / samples
    return float(-(p * np.log(p)).sum())


def unit_ball_log_cover_upper(d: int) -> Callable[[float], float]:
    """Upper envelope log N(eps) = d * log(1 + 2/eps) for eps < 1, else 0."""

    def log_cover(eps: float) -> float:
        if eps >= 1.0:
            return 0.0
        return math.log(covering_number_bounds(d, eps)[1])

    return log_cover
