"""Exact enumeration checks of the information-theoretic machinery on small
finite bandits: the two-point reduction lemma, the per-cell construction of
the randomized sampling functions, disintegrated conditional mutual
information, and the chain-link information ratio against its closed-form
cap for linear rewards.

All expectations and mutual informations here are computed by exhaustive
enumeration over the finite joint space; there is no sampling error in this
module.  Mutual informations treat the realized actions as observed (they
are part of the bandit history), so mixtures over chosen actions decompose
exactly into per-action terms.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .bandit_env import FiniteBanditSpec, History, optimal_action
from .bayes import DiscretePosterior, discrete_update
from .metric_nets import PointSet, QuantizationChain, quantize

__all__ = [
    "InvariantViolation",
    "JointPMF",
    "SamplingFunctionFamily",
    "ChainLinkReport",
    "two_point_reduction",
    "mutual_information",
    "posterior_weights",
    "disintegrated_cmi",
    "build_sampling_functions",
    "chain_link_ratio",
    "telescoping_check",
    "circle_spec",
    "random_finite_spec",
]


class InvariantViolation(RuntimeError):
    """A property the theory guarantees failed; signals an implementation bug."""


# ---------------------------------------------------------------------------
# Joint pmfs and mutual information


@dataclass(frozen=True)
class JointPMF:
    """Probability tensor over named finite axes."""

    axes: tuple
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        object.__setattr__(self, "table", t)
        if t.ndim != len(self.axes):
            raise ValueError("axis count does not match tensor rank")
        if np.any(t < 0) or abs(t.sum() - 1.0) > 1e-12:
            raise ValueError("table must be a probability tensor")


def mutual_information(joint: JointPMF) -> float:
    """I(X; Y) in nats for a two-axis joint, with 0 log 0 = 0."""
    if len(joint.axes) != 2:
        raise ValueError("mutual_information expects a two-axis joint")
    return _mi_table(joint.table)


def _mi_table(p: np.ndarray) -> float:
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    mask = p > 0
    ratio = p[mask] / (px @ py)[mask]
    return float(np.sum(p[mask] * np.log(ratio)))


def _mi_from_dict(joint: dict) -> float:
    """I(X; Y) from {(x, y): p}; zero-probability entries are ignored."""
    px: dict = {}
    py: dict = {}
    for (x, y), p in joint.items():
        if p <= 0:
            continue
        px[x] = px.get(x, 0.0) + p
        py[y] = py.get(y, 0.0) + p
    total = 0.0
    for (x, y), p in joint.items():
        if p <= 0:
            continue
        total += p * math.log(p / (px[x] * py[y]))
    return max(total, 0.0)


# ---------------------------------------------------------------------------
# Two-point reduction (the finite search following the existence proof)


def two_point_reduction(Q: np.ndarray, f: np.ndarray, g: np.ndarray) -> tuple:
    """Find indices (a1, a2) and q in [0, 1] with
    q f(a1) + (1-q) f(a2) <= E_Q[f] and q g(a1) + (1-q) g(a2) <= E_Q[g].

    If the sublevel sets {f <= E_Q[f]} and {g <= E_Q[g]} intersect, any
    common point works with q = 1.  Otherwise pairs across the two sets are
    scanned lexicographically for a nonempty feasible q-interval and the
    midpoint is returned.
    """
    Q = np.asarray(Q, dtype=float)
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if Q.shape != f.shape or Q.shape != g.shape:
        raise ValueError("Q, f, g must have equal lengths")
    if np.any(Q < 0) or abs(Q.sum() - 1.0) > 1e-9:
        raise ValueError("Q must be a probability vector")
    if np.any(f < 0) or np.any(g < 0):
        raise ValueError("f and g must be nonnegative")
    fbar = float(Q @ f)
    gbar = float(Q @ g)
    slack_f = 1e-12 * max(1.0, abs(fbar))
    slack_g = 1e-12 * max(1.0, abs(gbar))
    in_f = f <= fbar + slack_f
    in_g = g <= gbar + slack_g
    both = np.flatnonzero(in_f & in_g)
    if both.size:
        i = int(both[0])
        return (i, i, 1.0)
    for i in np.flatnonzero(in_f):
        for j in np.flatnonzero(in_g):
            lo = (f[j] - fbar) / (f[j] - f[i])
            hi = (gbar - g[j]) / (g[i] - g[j])
            # the interval can round to empty when it is a single point
            if lo <= hi + 1e-10:
                q = 0.5 * (lo + max(hi, lo))
                return (int(i), int(j), float(min(max(q, 0.0), 1.0)))
    raise InvariantViolation("no two-point mixture found; this should be impossible")


# ---------------------------------------------------------------------------
# Posterior and enumeration plumbing for finite bandits


def posterior_weights(spec: FiniteBanditSpec, history) -> np.ndarray:
    """Exact posterior over parameter indices given the committed history."""
    pairs = history.committed if isinstance(history, History) else list(history)
    post = DiscretePosterior(spec.prior_weights.copy())
    for a, r in pairs:
        lik = np.empty(spec.n_params)
        for j in range(spec.n_params):
            support, probs = spec.pmf(int(a), j)
            lik[j] = float(probs[np.isclose(support, r)].sum())
        post = discrete_update(post, lik)
    return post.weights


class _Lab:
    """Shared enumeration state for one (spec, chain, history) triple."""

    def __init__(self, spec: FiniteBanditSpec, chain: QuantizationChain, history):
        if spec.n_actions != chain.space.size:
            raise ValueError("chain must be built over the spec's action set")
        self.spec = spec
        self.chain = chain
        self.w = posterior_weights(spec, history)
        self.a_star = np.array(
            [optimal_action(spec, j) for j in range(spec.n_params)], dtype=int
        )
        # Thompson law of the sampled action under this posterior
        self.q = np.zeros(spec.n_actions)
        for j in range(spec.n_params):
            self.q[self.a_star[j]] += self.w[j]
        self.means = np.array(
            [
                [spec.mean_reward(i, j) for j in range(spec.n_params)]
                for i in range(spec.n_actions)
            ]
        )
        self._labels: dict = {}
        self._mi_cache: dict = {}

    def labels(self, k) -> np.ndarray:
        """Level-k quantization label of the optimal action, per parameter.
        k=None means the unquantized optimal action itself."""
        if k not in self._labels:
            if k is None:
                self._labels[k] = self.a_star.copy()
            else:
                self._labels[k] = np.array(
                    [quantize(self.chain, int(a), k) for a in self.a_star], dtype=int
                )
        return self._labels[k]

    def cell_center(self, action_idx: int, k: int) -> int:
        return quantize(self.chain, int(action_idx), k)

    def cell_members(self, center_idx: int, k: int) -> list:
        assign = self.chain.levels[k].assignment
        return [i for i in range(self.spec.n_actions) if assign[i] == center_idx]

    def mi_pair(self, k, a: int, b: int) -> float:
        """I(label_k; R(a), R(b)) with rewards independent given the parameter."""
        key = (k, a, b)
        if key in self._mi_cache:
            return self._mi_cache[key]
        labels = self.labels(k)
        joint: dict = {}
        for j in range(self.spec.n_params):
            if self.w[j] <= 0:
                continue
            s1, p1 = self.spec.pmf(a, j)
            s2, p2 = self.spec.pmf(b, j)
            for r1, q1 in zip(s1, p1):
                if q1 <= 0:
                    continue
                for r2, q2 in zip(s2, p2):
                    if q2 <= 0:
                        continue
                    key2 = (int(labels[j]), (float(r1), float(r2)))
                    joint[key2] = joint.get(key2, 0.0) + self.w[j] * q1 * q2
        val = _mi_from_dict(joint)
        self._mi_cache[key] = val
        return val


# ---------------------------------------------------------------------------
# Sampling-function families


@dataclass(frozen=True)
class SamplingFunctionFamily:
    """Per-level randomized action representatives.

    At the root level the function draws from the posterior law of the
    optimal action.  At every finer level k, each level-k cell carries two
    representative actions and a mixing probability.
    """

    chain: QuantizationChain
    root_law: np.ndarray  # law over action indices at the root level
    levels: dict  # k -> {center_idx: (a1_idx, a2_idx, p)}

    def action_law(self, k: int, center_idx: int) -> list:
        """[(action_idx, prob)] for the level-k function applied at a center."""
        if k == self.chain.k0:
            return [(i, float(p)) for i, p in enumerate(self.root_law) if p > 0]
        a1, a2, p = self.levels[k][center_idx]
        if a1 == a2:
            return [(a1, 1.0)]
        return [(a1, p), (a2, 1.0 - p)]


@dataclass(frozen=True)
class ChainLinkReport:
    k: int
    numerator: float
    denominator_sampled_nats: float  # arguments pushed through the sampling maps
    denominator_quantized_nats: float  # raw quantized optimal actions as arguments
    gamma_sampled: Optional[float]
    gamma_quantized: Optional[float]
    bound: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "numerator": self.numerator,
                "denominator_sampled_nats": self.denominator_sampled_nats,
                "denominator_quantized_nats": self.denominator_quantized_nats,
                "gamma_sampled": self.gamma_sampled,
                "gamma_quantized": self.gamma_quantized,
                "bound": self.bound,
            }
        )


def _coin_functional(lab: _Lab, family, k_lower, parent_center, labels_level):
    """f(a) = expected I(label; R(a), R(B)) with B the lower-level function's
    output at the fixed parent center."""
    law = family.action_law(k_lower, parent_center)

    def f(a: int) -> float:
        return sum(p * lab.mi_pair(labels_level, a, b) for b, p in law)

    return f


def build_sampling_functions(
    spec: FiniteBanditSpec,
    chain: QuantizationChain,
    history,
    max_states: int = 10**6,
) -> SamplingFunctionFamily:
    """Construct the per-cell two-point sampling functions level by level.

    The root-level function draws from the posterior law of the optimal
    action.  Each finer level applies the two-point reduction per cell to the
    pair of mutual-information functionals tying it to the level below (the
    information passed downward) and the level above (the information ceiling
    of two independent posterior-optimal draws).  Construction fails loudly
    if the reduction ever finds no feasible mixture.
    """
    lab = _Lab(spec, chain, history)
    n_states = spec.n_params * spec.n_actions**2 * 9
    if n_states > max_states:
        raise ValueError("state space too large for exact enumeration")
    k0, K = chain.k0, chain.K_max
    levels: dict = {}
    family = SamplingFunctionFamily(chain=chain, root_law=lab.q.copy(), levels=levels)

    for k in range(k0 + 1, K + 1):
        upper = k + 1 if k + 1 <= K else None  # None = unquantized optimal action
        level_map: dict = {}
        for center in chain.centers(k):
            members = lab.cell_members(center, k)
            cell_q = np.array([lab.q[i] for i in members])
            total = cell_q.sum()
            if total <= 0:
                level_map[center] = (int(center), int(center), 1.0)
                continue
            cell_q = cell_q / total
            parent_center = (
                chain.parent_maps[k - 1][center] if k - 1 >= k0 else center
            )
            f_fun = _coin_functional(lab, family, k - 1, parent_center, k)
            f_vals = np.array([f_fun(a) for a in members])
            g_vals = np.array(
                [
                    sum(lab.q[b] * lab.mi_pair(upper, a, b) for b in range(spec.n_actions))
                    for a in members
                ]
            )
            i1, i2, p = two_point_reduction(cell_q, f_vals, g_vals)
            level_map[center] = (members[i1], members[i2], p)
        levels[k] = level_map

    _check_family(lab, family)
    return family


def _check_family(lab: _Lab, family: SamplingFunctionFamily, tol: float = 1e-9):
    """Construction-time checks: distance invariant and the two mutual
    information inequalities at every level."""
    chain = family.chain
    pts = chain.space.points
    for k in range(chain.k0 + 1, chain.K_max + 1):
        radius = chain.alpha ** (-k)
        for center, (a1, a2, p) in family.levels[k].items():
            for a in (a1, a2):
                if quantize(chain, a, k) != center:
                    raise InvariantViolation("representative escapes its cell")
                if np.linalg.norm(pts[a] - pts[center]) > radius + 1e-12:
                    raise InvariantViolation("representative too far from its center")
            if not 0.0 <= p <= 1.0:
                raise InvariantViolation("mixing probability outside [0, 1]")
        lhs1, rhs1 = information_inequality_terms(lab, family, k, which=1)
        if lhs1 > rhs1 + tol:
            raise InvariantViolation(f"downward information inequality fails at k={k}")
        lhs2, rhs2 = information_inequality_terms(lab, family, k, which=2)
        if lhs2 > rhs2 + tol:
            raise InvariantViolation(f"upward information inequality fails at k={k}")


def information_inequality_terms(lab: _Lab, family: SamplingFunctionFamily, k: int, which: int):
    """(lhs, rhs) of the two construction inequalities at level k.

    which=1: the sampled pair at levels (k, k-1) reveals no more about the
    level-k quantization than the raw sampled action paired with the lower
    level.  which=2: the level-k function's output paired with an
    independent posterior-optimal draw reveals no more about the
    level-(k+1) quantization than two independent posterior-optimal draws.
    """
    chain = family.chain
    spec = lab.spec
    q = lab.q
    if which == 1:
        lhs = rhs = 0.0
        for a in range(spec.n_actions):
            if q[a] <= 0:
                continue
            c_k = lab.cell_center(a, k)
            c_low = lab.cell_center(a, k - 1)
            law_k = family.action_law(k, c_k)
            law_low = family.action_law(k - 1, c_low)
            for b1, p1 in law_k:
                for b2, p2 in law_low:
                    lhs += q[a] * p1 * p2 * lab.mi_pair(k, b1, b2)
            for b2, p2 in law_low:
                rhs += q[a] * p2 * lab.mi_pair(k, a, b2)
        return lhs, rhs
    if which == 2:
        upper = k + 1 if k + 1 <= chain.K_max else None
        lhs = rhs = 0.0
        for a in range(spec.n_actions):
            if q[a] <= 0:
                continue
            c_k = lab.cell_center(a, k)
            # the companion action is an independent posterior-optimal draw
            for a2 in range(spec.n_actions):
                if q[a2] <= 0:
                    continue
                for b, p in family.action_law(k, c_k):
                    lhs += q[a] * q[a2] * p * lab.mi_pair(upper, b, a2)
                rhs += q[a] * q[a2] * lab.mi_pair(upper, a, a2)
        return lhs, rhs
    raise ValueError("which must be 1 or 2")


def _level_regret_gap(lab: _Lab, family: SamplingFunctionFamily, k: int) -> float:
    """E[R(f_k(optimal quantization)) - R(f_k(sampled quantization))] given
    the history, by exact enumeration."""
    spec = lab.spec
    if k == family.chain.k0:
        # both quantizations hit the single root center, so both terms pass
        # through the same root-level law and cancel identically
        return 0.0
    star = 0.0
    hat = 0.0
    labels = lab.labels(k)
    for j in range(spec.n_params):
        if lab.w[j] <= 0:
            continue
        for b, p in family.action_law(k, int(labels[j])):
            star += lab.w[j] * p * lab.means[b, j]
        for a in range(spec.n_actions):
            if lab.q[a] <= 0:
                continue
            c = lab.cell_center(a, k)
            for b, p in family.action_law(k, c):
                hat += lab.w[j] * lab.q[a] * p * lab.means[b, j]
    return star - hat


def link_term(spec, chain, family: SamplingFunctionFamily, history, k: int) -> float:
    """Regret-difference between consecutive approximation levels k and k-1."""
    lab = _Lab(spec, chain, history)
    return _link_term(lab, family, k)


def _link_term(lab: _Lab, family: SamplingFunctionFamily, k: int) -> float:
    if k == family.chain.k0:
        return 0.0  # both arguments coincide at the singleton root
    low = _level_regret_gap(lab, family, k - 1) if k - 1 > family.chain.k0 else 0.0
    return _level_regret_gap(lab, family, k) - low


def telescoping_check(spec, chain, family: SamplingFunctionFamily, history) -> tuple:
    """(sum of link terms, direct expected regret) given the history.

    When the finest level has singleton cells the two numbers agree exactly.
    """
    lab = _Lab(spec, chain, history)
    total = sum(_link_term(lab, family, k) for k in range(chain.k0 + 1, chain.K_max + 1))
    direct = 0.0
    for j in range(spec.n_params):
        gap = lab.means[lab.a_star[j], j] - float(lab.q @ lab.means[:, j])
        direct += lab.w[j] * gap
    return total, direct


# ---------------------------------------------------------------------------
# Disintegrated conditional mutual information


def disintegrated_cmi(
    spec: FiniteBanditSpec,
    history,
    observed_actions: Sequence[int],
    given_actions: Sequence[int] = (),
    target: Union[str, Sequence[int]] = "a_star",
) -> float:
    """I(target; rewards at observed_actions | rewards at given_actions, H^t).

    The target is "a_star" (the optimal action), "theta" (the parameter
    index), or an explicit per-parameter label array.  Rewards at distinct
    action slots are conditionally independent given the parameter.
    """
    w = posterior_weights(spec, history)
    if isinstance(target, str):
        if target == "a_star":
            labels = np.array([optimal_action(spec, j) for j in range(spec.n_params)])
        elif target == "theta":
            labels = np.arange(spec.n_params)
        else:
            raise ValueError(f"unknown target {target!r}")
    else:
        labels = np.asarray(target)
        if labels.shape != (spec.n_params,):
            raise ValueError("target labels must have one entry per parameter")

    actions = list(given_actions) + list(observed_actions)
    n_given = len(given_actions)
    joint: dict = {}
    for j in range(spec.n_params):
        if w[j] <= 0:
            continue
        combos = [((), w[j])]
        for a in actions:
            support, probs = spec.pmf(int(a), j)
            combos = [
                (rs + (float(r),), p * float(pr))
                for rs, p in combos
                for r, pr in zip(support, probs)
                if pr > 0
            ]
        for rs, p in combos:
            key = (int(labels[j]), rs[:n_given], rs[n_given:])
            joint[key] = joint.get(key, 0.0) + p

    # I(X; O | G) = sum_g p(g) * I(X; O | G=g)
    by_given: dict = {}
    for (x, g, o), p in joint.items():
        by_given.setdefault(g, {})[(x, o)] = by_given.setdefault(g, {}).get((x, o), 0.0) + p
    total = 0.0
    for g, sub in by_given.items():
        pg = sum(sub.values())
        cond = {key: p / pg for key, p in sub.items()}
        total += pg * _mi_from_dict(cond)
    return total


# ---------------------------------------------------------------------------
# Chain-link information ratio


def chain_link_ratio(
    spec: FiniteBanditSpec,
    chain: QuantizationChain,
    family: SamplingFunctionFamily,
    history,
    k: int,
) -> ChainLinkReport:
    """Exact numerator and denominators of the level-k chain-link ratio.

    The numerator is the squared link term.  Two denominators are reported:
    one with the sampled representatives of the optimal quantizations as the
    argument pair (the ratio's definition), one with the raw quantizations
    (the form used when the chained bound is assembled); neither is declared
    canonical.  Observations are the realized action/reward pairs of the two
    lower-level plays.  Gammas are reported only when the denominator
    exceeds 1e-12.
    """
    if not chain.k0 < k <= chain.K_max:
        raise ValueError(f"k must lie in ({chain.k0}, {chain.K_max}]")
    lab = _Lab(spec, chain, history)
    num = _link_term(lab, family, k) ** 2
    den_sampled = _link_denominator(lab, family, k, sampled_argument=True)
    den_quant = _link_denominator(lab, family, k, sampled_argument=False)
    d = chain.space.dimension
    bound = 2.0 * (6.0 * 2.0 ** (-k)) ** 2 * d
    return ChainLinkReport(
        k=k,
        numerator=num,
        denominator_sampled_nats=den_sampled,
        denominator_quantized_nats=den_quant,
        gamma_sampled=(num / den_sampled) if den_sampled > 1e-12 else None,
        gamma_quantized=(num / den_quant) if den_quant > 1e-12 else None,
        bound=bound,
    )


def _link_denominator(lab: _Lab, family: SamplingFunctionFamily, k: int, sampled_argument: bool):
    """I(argument pair; realized plays at levels k and k-1) by enumeration.

    The level-k and level-(k-1) sampling functions are single random
    functions: when the optimal and sampled quantizations land in the same
    cell they share the same coin flip.
    """
    spec = lab.spec
    chain = family.chain
    labels_k = lab.labels(k)
    labels_low = lab.labels(k - 1)
    joint: dict = {}

    def level_outcomes(level: int, c_star: int, c_hat: int) -> list:
        """[(x_action, b_action, prob)] for one level's shared random map."""
        if level == chain.k0:
            # both arguments are the root; one shared posterior-law draw
            return [(z, z, p) for z, p in family.action_law(chain.k0, c_star)]
        if c_star == c_hat:
            return [(b, b, p) for b, p in family.action_law(level, c_star)]
        star_law = family.action_law(level, c_star)
        hat_law = family.action_law(level, c_hat)
        return [(x, b, px * pb) for x, px in star_law for b, pb in hat_law]

    for j in range(spec.n_params):
        if lab.w[j] <= 0:
            continue
        for a in range(spec.n_actions):
            if lab.q[a] <= 0:
                continue
            base = lab.w[j] * lab.q[a]
            up = level_outcomes(k, int(labels_k[j]), lab.cell_center(a, k))
            low = level_outcomes(k - 1, int(labels_low[j]), lab.cell_center(a, k - 1))
            for x1, b1, p1 in up:
                for x2, b2, p2 in low:
                    if sampled_argument:
                        x = (x1, x2)
                    else:
                        x = (int(labels_k[j]), int(labels_low[j]))
                    s1, pr1 = spec.pmf(b1, j)
                    s2, pr2 = spec.pmf(b2, j)
                    for r1, q1 in zip(s1, pr1):
                        if q1 <= 0:
                            continue
                        for r2, q2 in zip(s2, pr2):
                            if q2 <= 0:
                                continue
                            key = (x, (b1, float(r1), b2, float(r2)))
                            joint[key] = joint.get(key, 0.0) + base * p1 * p2 * q1 * q2
    return _mi_from_dict(joint)


# ---------------------------------------------------------------------------
# Reference finite specs for verification suites


def circle_spec(
    n_actions: int = 8,
    n_params: int = 6,
    param_radius: float = 0.5,
    reward_scale: float = 0.5,
) -> FiniteBanditSpec:
    """Discrete linear-like bandit: actions on the unit circle, parameters on
    a smaller circle, two-point rewards {-s, +s} whose mean is the inner
    product.  Sharing the support across parameters keeps the posterior
    spread after observations."""
    angles_a = 2 * np.pi * np.arange(n_actions) / n_actions
    actions = np.column_stack([np.cos(angles_a), np.sin(angles_a)])
    angles_p = 2 * np.pi * (np.arange(n_params) + 0.5) / n_params
    params = param_radius * np.column_stack([np.cos(angles_p), np.sin(angles_p)])
    s = reward_scale
    if s < param_radius:
        raise ValueError("reward_scale must cover the largest mean reward")
    support, probs = {}, {}
    for i in range(n_actions):
        for j in range(n_params):
            mean = float(actions[i] @ params[j])
            support[(i, j)] = np.array([-s, s])
            probs[(i, j)] = np.array([0.5 - mean / (2 * s), 0.5 + mean / (2 * s)])
    weights = np.full(n_params, 1.0 / n_params)
    return FiniteBanditSpec(params, weights, PointSet(actions), support, probs)


def random_finite_spec(
    rng: np.random.Generator,
    max_actions: int = 8,
    max_params: int = 6,
    max_support: int = 3,
    d: int = 2,
) -> FiniteBanditSpec:
    """Random small tabular bandit with distinct actions in [-1, 1]^d.

    Each action has one reward support shared by all parameters, with
    parameter-dependent probabilities, so observations shift the posterior
    without collapsing it."""
    n_actions = int(rng.integers(2, max_actions + 1))
    n_params = int(rng.integers(2, max_params + 1))
    while True:
        actions = rng.uniform(-1.0, 1.0, size=(n_actions, d))
        diff = actions[:, None, :] - actions[None, :, :]
        gaps = np.linalg.norm(diff, axis=-1) + np.eye(n_actions)
        if gaps.min() > 1e-3:
            break
    params = rng.uniform(-1.0, 1.0, size=(n_params, d))
    weights = rng.uniform(0.2, 1.0, size=n_params)
    weights = weights / weights.sum()
    support, probs = {}, {}
    for i in range(n_actions):
        m = int(rng.integers(1, max_support + 1))
        vals = np.sort(rng.uniform(-1.0, 1.0, size=m))
        for j in range(n_params):
            p = rng.uniform(0.2, 1.0, size=m)
            support[(i, j)] = vals
            probs[(i, j)] = p / p.sum()
    return FiniteBanditSpec(params, weights, PointSet(actions), support, probs)
