"""Bandit environments: priors over the parameter, action sets, reward laws.

Two families are supported: the continuous linear-Gaussian model (unit ball
or finite action set, Gaussian or sphere prior, Gaussian observation noise)
and fully tabular finite bandits used for exact information-theoretic checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .metric_nets import PointSet

__all__ = [
    "LinearGaussianSpec",
    "FiniteBanditSpec",
    "History",
    "sample_parameter",
    "expected_reward",
    "draw_reward",
    "optimal_action",
]

_SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class LinearGaussianSpec:
    """Linear bandit: E[R(a, theta)] = <a, theta>, Gaussian observation noise.

    action_set is None for the closed unit ball (the optimal action then has
    the closed form theta / ||theta||), or a finite PointSet.
    """

    d: int
    action_set: Optional[PointSet] = None  # None = unit ball
    prior: str = "gaussian"  # "gaussian" N(0, I) or "sphere" (uniform unit sphere)
    noise_sigma: float = 1.0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.prior not in ("gaussian", "sphere"):
            raise ValueError(f"unknown prior {self.prior!r}")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be nonnegative")
        if self.action_set is not None:
            if self.action_set.dimension != self.d:
                raise ValueError("action set dimension mismatch")

    @property
    def is_ball(self) -> bool:
        return self.action_set is None


@dataclass(frozen=True)
class FiniteBanditSpec:
    """Tabular bandit: finite parameters with prior weights, finite actions,
    and a finite reward pmf for every (action, parameter) pair."""

    parameters: np.ndarray  # (n_params, d) parameter values
    prior_weights: np.ndarray  # (n_params,)
    actions: PointSet
    reward_support: dict  # (action_idx, param_idx) -> np.ndarray of values
    reward_probs: dict  # (action_idx, param_idx) -> np.ndarray of probabilities

    def __post_init__(self):
        params = np.atleast_2d(np.asarray(self.parameters, dtype=float))
        w = np.asarray(self.prior_weights, dtype=float)
        object.__setattr__(self, "parameters", params)
        object.__setattr__(self, "prior_weights", w)
        if w.shape != (params.shape[0],):
            raise ValueError("prior weight / parameter count mismatch")
        if np.any(w < 0) or abs(w.sum() - 1.0) > _SIMPLEX_TOL:
            raise ValueError("prior weights must be a probability vector")
        for i in range(self.actions.size):
            for j in range(params.shape[0]):
                p = np.asarray(self.reward_probs[(i, j)], dtype=float)
                s = np.asarray(self.reward_support[(i, j)], dtype=float)
                if p.shape != s.shape:
                    raise ValueError(f"pmf shape mismatch at action {i}, parameter {j}")
                if np.any(p < 0) or abs(p.sum() - 1.0) > _SIMPLEX_TOL:
                    raise ValueError(f"pmf at action {i}, parameter {j} is not a distribution")

    @property
    def n_params(self) -> int:
        return self.parameters.shape[0]

    @property
    def n_actions(self) -> int:
        return self.actions.size

    def pmf(self, action_idx: int, param_idx: int) -> tuple:
        return (
            np.asarray(self.reward_support[(action_idx, param_idx)], dtype=float),
            np.asarray(self.reward_probs[(action_idx, param_idx)], dtype=float),
        )

    def mean_reward(self, action_idx: int, param_idx: int) -> float:
        s, p = self.pmf(action_idx, param_idx)
        return float(np.dot(s, p))

    @classmethod
    def from_json(cls, text: str) -> "FiniteBanditSpec":
        """Load from {parameters:[{theta, weight}], actions:[[..]],
        reward_pmf:{"(i,j)": {support: [...], probs: [...]}}}."""
        data = json.loads(text)
        params = np.array([p["theta"] for p in data["parameters"]], dtype=float)
        weights = np.array([p["weight"] for p in data["parameters"]], dtype=float)
        actions = PointSet(np.array(data["actions"], dtype=float))
        support, probs = {}, {}
        for key, pmf in data["reward_pmf"].items():
            i, j = (int(x) for x in key.strip("() ").split(","))
            support[(i, j)] = np.asarray(pmf["support"], dtype=float)
            probs[(i, j)] = np.asarray(pmf["probs"], dtype=float)
        return cls(params, weights, actions, support, probs)


@dataclass
class History:
    """Ordered (action, reward) pairs with batched commit semantics.

    Only the first `committed_length` pairs are visible to the posterior;
    commits advance in multiples of the batch size m.
    """

    batch_size: int = 2
    pairs: list = field(default_factory=list)  # (action, reward)
    committed_length: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch size must be >= 1")
        self._check()

    def _check(self):
        if self.committed_length > len(self.pairs):
            raise ValueError("committed_length exceeds history length")
        if self.committed_length % self.batch_size != 0:
            raise ValueError("committed_length must be a multiple of the batch size")

    def append(self, action, reward: float):
        self.pairs.append((action, float(reward)))

    def commit(self):
        """Commit all full batches recorded so far."""
        self.committed_length = (len(self.pairs) // self.batch_size) * self.batch_size

    @property
    def committed(self) -> list:
        return self.pairs[: self.committed_length]

    def __len__(self) -> int:
        return len(self.pairs)


def sample_parameter(spec, rng: np.random.Generator):
    """Draw the environment parameter from the spec's prior."""
    if isinstance(spec, LinearGaussianSpec):
        if spec.prior == "gaussian":
            return rng.standard_normal(spec.d)
        z = rng.standard_normal(spec.d)
        return z / np.linalg.norm(z)
    if isinstance(spec, FiniteBanditSpec):
        idx = rng.choice(spec.n_params, p=spec.prior_weights)
        return int(idx)
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def expected_reward(spec, a, theta) -> float:
    """Mean reward of action a under parameter theta."""
    if isinstance(spec, LinearGaussianSpec):
        a = np.asarray(a, dtype=float)
        theta = np.asarray(theta, dtype=float)
        if a.shape != (spec.d,) or theta.shape != (spec.d,):
            raise ValueError("dimension mismatch")
        return float(a @ theta)
    if isinstance(spec, FiniteBanditSpec):
        return spec.mean_reward(int(a), int(theta))
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def draw_reward(spec, a, theta, rng: np.random.Generator) -> float:
    """Sample one reward for action a under parameter theta."""
    if isinstance(spec, LinearGaussianSpec):
        mean = expected_reward(spec, a, theta)
        return mean + spec.noise_sigma * rng.standard_normal()
    if isinstance(spec, FiniteBanditSpec):
        support, probs = spec.pmf(int(a), int(theta))
        return float(rng.choice(support, p=probs))
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def optimal_action(spec, theta):
    """Action maximizing the expected reward for theta (ties: lowest index)."""
    if isinstance(spec, LinearGaussianSpec) and spec.is_ball:
        theta = np.asarray(theta, dtype=float)
        norm = np.linalg.norm(theta)
        if norm == 0.0:
            return np.zeros(spec.d)  # degenerate: any action is optimal
        return theta / norm
    if isinstance(spec, LinearGaussianSpec):
        values = spec.action_set.points @ np.asarray(theta, dtype=float)
        return spec.action_set.points[int(np.argmax(values))]
    if isinstance(spec, FiniteBanditSpec):
        values = np.array([spec.mean_reward(i, int(theta)) for i in range(spec.n_actions)])
        return int(np.argmax(values))
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def optimal_action_index(spec: FiniteBanditSpec, param_idx: int) -> int:
    """Index form of optimal_action for finite specs."""
    return optimal_action(spec, param_idx)
