"""Batched Thompson Sampling (m=1 vanilla, m=2 two-step) and the Monte-Carlo
Bayesian regret estimator.

Determinism contract: every trial uses an rng stream derived only from
(master_seed, trial_index) through numpy's SeedSequence, so results are
independent of evaluation order and of the number of parallel jobs.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from .bandit_env import (
    FiniteBanditSpec,
    History,
    LinearGaussianSpec,
    draw_reward,
    expected_reward,
    optimal_action,
    sample_parameter,
)
from .bayes import (
    DiscretePosterior,
    GaussianPosterior,
    discrete_update,
    gaussian_sample,
    gaussian_update,
)

__all__ = [
    "AgentConfig",
    "RegretCurve",
    "trial_rng",
    "run_episode",
    "estimate_bayes_regret",
    "scaling_experiment",
    "fit_loglog_slope",
]


@dataclass(frozen=True)
class AgentConfig:
    batch_size: int = 2  # m=2 is two-step TS, m=1 vanilla TS
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch size must be >= 1")


@dataclass(frozen=True)
class RegretCurve:
    per_round: np.ndarray  # (T,) mean per-round expected regret
    cumulative: np.ndarray  # (T,) prefix sums of per_round
    stderr: np.ndarray  # (T,) standard error of per-round means
    trials: int

    @property
    def horizon(self) -> int:
        return self.per_round.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["t", "mean_per_round", "mean_cumulative", "stderr"])
        for t in range(self.horizon):
            writer.writerow(
                [
                    t + 1,
                    repr(float(self.per_round[t])),
                    repr(float(self.cumulative[t])),
                    repr(float(self.stderr[t])),
                ]
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, trials: int = 0) -> "RegretCurve":
        rows = list(csv.reader(io.StringIO(text)))[1:]
        per = np.array([float(r[1]) for r in rows])
        cum = np.array([float(r[2]) for r in rows])
        err = np.array([float(r[3]) for r in rows])
        return cls(per, cum, err, trials)


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Stream for one trial, a pure function of (master_seed, trial_index).

    Test vector: trial_rng(0, 0).integers(2**32) == 3653403231."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(trial_index)]))


def _prior_posterior(spec):
    if isinstance(spec, LinearGaussianSpec):
        if spec.noise_sigma <= 0:
            raise ValueError("posterior updates need noise_sigma > 0")
        return GaussianPosterior.standard(spec.d, spec.noise_sigma)
    if isinstance(spec, FiniteBanditSpec):
        return DiscretePosterior(spec.prior_weights.copy())
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def _posterior_draw(spec, post, rng):
    if isinstance(post, GaussianPosterior):
        return gaussian_sample(post, rng)
    probs = post.weights / post.weights.sum()
    return int(rng.choice(post.n, p=probs))


def _commit(spec, post, pending):
    """Fold a batch of (action, reward) pairs into the posterior."""
    for a, r in pending:
        if isinstance(post, GaussianPosterior):
            post = gaussian_update(post, a, r)
        else:
            lik = np.empty(post.n)
            for j in range(post.n):
                support, probs = spec.pmf(int(a), j)
                hit = np.isclose(support, r)
                lik[j] = float(probs[hit].sum())
            post = discrete_update(post, lik)
    return post


def run_episode(spec, config: AgentConfig, T: int, theta, rng: np.random.Generator):
    """One episode against a fixed realized parameter.

    Each round samples a parameter estimate from the posterior conditioned
    on committed history only; the history commits whenever t is a multiple
    of the batch size.  Returns the history and the per-round expected
    regret under the realized theta.
    """
    m = config.batch_size
    if T < 1 or T % m != 0:
        raise ValueError("T must be a positive multiple of the batch size")
    post = _prior_posterior(spec)
    history = History(batch_size=m)
    a_star = optimal_action(spec, theta)
    best = expected_reward(spec, a_star, theta)
    pending = []
    regret = np.empty(T)
    for t in range(1, T + 1):
        theta_hat = _posterior_draw(spec, post, rng)
        action = optimal_action(spec, theta_hat)
        reward = draw_reward(spec, action, theta, rng)
        history.append(action, reward)
        pending.append((action, reward))
        regret[t - 1] = best - expected_reward(spec, action, theta)
        if t % m == 0:
            post = _commit(spec, post, pending)
            pending = []
            history.commit()
    return history, regret


def _one_trial(spec, config, T, master_seed, i):
    rng = trial_rng(master_seed, i)
    theta = sample_parameter(spec, rng)
    _, regret = run_episode(spec, config, T, theta, rng)
    return regret


def estimate_bayes_regret(
    spec,
    config: AgentConfig,
    T: int,
    trials: int,
    master_seed: int,
    jobs: int = 1,
) -> RegretCurve:
    """Monte-Carlo Bayesian expected regret: average per-round expected
    regret over trials, theta freshly drawn from the prior each trial."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if jobs == 1:
        rows = [_one_trial(spec, config, T, master_seed, i) for i in range(trials)]
    else:
        rows = Parallel(n_jobs=jobs)(
            delayed(_one_trial)(spec, config, T, master_seed, i) for i in range(trials)
        )
    mat = np.vstack(rows)
    per = mat.mean(axis=0)
    err = (
        mat.std(axis=0, ddof=1) / np.sqrt(trials) if trials > 1 else np.zeros(T)
    )
    return RegretCurve(per, np.cumsum(per), err, trials)


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    coeffs = np.polyfit(lx, ly, 1)
    return float(coeffs[0])


def scaling_experiment(
    spec_for_d,
    config: AgentConfig,
    d_grid: Sequence[int],
    T_grid: Sequence[int],
    trials: int,
    master_seed: int,
    jobs: int = 1,
) -> dict:
    """Grid of final cumulative regrets plus fitted log-log slopes in T and d.

    spec_for_d maps a dimension to a bandit spec.  Each cell also reports the
    ratio regret / (d * sqrt(T)).
    """
    if not d_grid or not T_grid:
        raise ValueError("grids must be nonempty")
    cells = []
    for d in d_grid:
        spec = spec_for_d(d)
        for T in T_grid:
            curve = estimate_bayes_regret(spec, config, T, trials, master_seed, jobs=jobs)
            final = float(curve.cumulative[-1])
            final_err = float(np.sqrt((curve.stderr**2).sum()))
            cells.append(
                {
                    "d": int(d),
                    "T": int(T),
                    "final_regret": final,
                    "stderr": final_err,
                    "ratio_d_sqrtT": final / (d * np.sqrt(T)),
                }
            )
    slope_T = slope_d = float("nan")
    if len(T_grid) > 1:
        d0 = d_grid[0]
        pts = [(c["T"], c["final_regret"]) for c in cells if c["d"] == d0]
        slope_T = fit_loglog_slope([p[0] for p in pts], [p[1] for p in pts])
    if len(d_grid) > 1:
        T0 = T_grid[-1]
        pts = [(c["d"], c["final_regret"]) for c in cells if c["T"] == T0]
        slope_d = fit_loglog_slope([p[0] for p in pts], [p[1] for p in pts])
    return {"cells": cells, "slope_T": slope_T, "slope_d": slope_d}
