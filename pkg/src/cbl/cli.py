"""Command-line entry point: nets, chains, simulation, bounds, verification.

Emits CSV for curves and tables, JSON for structured reports.  Exit codes:
0 success, 1 input error, 2 internal invariant violation.  CBL_LOG controls
diagnostics on stderr (error, info, debug).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import bounds as bounds_mod
from .agents import AgentConfig, estimate_bayes_regret, scaling_experiment, trial_rng
from .bandit_env import FiniteBanditSpec, LinearGaussianSpec
from .info_lab import (
    InvariantViolation,
    build_sampling_functions,
    chain_link_ratio,
    circle_spec,
    random_finite_spec,
    telescoping_check,
    two_point_reduction,
)
from .metric_nets import (
    PointSet,
    build_quantization_chain,
    compute_k0,
    covering_number_bounds,
    greedy_epsilon_net,
)

log = logging.getLogger("cbl")


def ball_discretization(d: int, n: int, seed: int) -> PointSet:
    """Quasi-uniform sample of the closed unit ball, origin included first."""
    rng = trial_rng(seed, 0)
    z = rng.standard_normal((n - 1, d))
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    radii = rng.uniform(0.0, 1.0, size=(n - 1, 1)) ** (1.0 / d)
    pts = np.vstack([np.zeros((1, d)), z * radii])
    return PointSet(pts)


def _load_points(args) -> PointSet:
    if args.points:
        with open(args.points) as fh:
            return PointSet(np.array(json.load(fh), dtype=float))
    return ball_discretization(args.d, args.n_points, args.seed)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_net(args) -> int:
    space = _load_points(args)
    net = greedy_epsilon_net(space, args.epsilon)
    payload = {
        "epsilon": net.epsilon,
        "center_indices": list(net.center_indices),
        "assignment": list(net.assignment),
        "covering_radius": net.covering_radius(space),
    }
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_chain(args) -> int:
    space = _load_points(args)
    chain = build_quantization_chain(space, args.alpha, args.k_max, unit_ball=args.unit_ball)
    _emit(args, chain.to_json() + "\n")
    return 0


def _make_linear_spec(args) -> LinearGaussianSpec:
    return LinearGaussianSpec(d=args.d, prior=args.prior, noise_sigma=args.sigma)


def _cmd_simulate(args) -> int:
    if args.T % args.m != 0:
        raise ValueError("T must be a multiple of batch size")
    spec = _make_linear_spec(args)
    config = AgentConfig(batch_size=args.m, seed=args.seed)
    curve = estimate_bayes_regret(spec, config, args.T, args.trials, args.seed, jobs=args.jobs)
    if args.format == "csv":
        _emit(args, curve.to_csv())
    else:
        _emit(
            args,
            json.dumps(
                {
                    "t": list(range(1, curve.horizon + 1)),
                    "mean_per_round": curve.per_round.tolist(),
                    "mean_cumulative": curve.cumulative.tolist(),
                    "stderr": curve.stderr.tolist(),
                    "trials": curve.trials,
                },
                indent=2,
            )
            + "\n",
        )
    return 0


def _cmd_scaling(args) -> int:
    config = AgentConfig(batch_size=args.m, seed=args.seed)
    result = scaling_experiment(
        lambda d: LinearGaussianSpec(d=d, prior=args.prior, noise_sigma=args.sigma),
        config,
        args.d_grid,
        args.T_grid,
        args.trials,
        args.seed,
        jobs=args.jobs,
    )
    _emit(args, json.dumps(result, indent=2) + "\n")
    return 0


def _cmd_bounds(args) -> int:
    d, T = args.d, args.T
    report = {
        "unit_ball_bound": bounds_mod.unit_ball_bound(d, T),
        "alpha_series_constant_20": bounds_mod.alpha_series_constant(20.0),
        "entropy_integral_bound": bounds_mod.entropy_integral_bound(
            d, T, bounds_mod.unit_ball_log_cover_upper(d), diam=1.0
        ),
    }
    space = ball_discretization(d, args.n_points, args.seed)
    chain = build_quantization_chain(space, 2.0, args.k_max, unit_ball=args.unit_ball)
    spec = _make_linear_spec(args)
    rows = []
    for k in range(chain.k0 + 1, chain.K_max + 1):
        h = bounds_mod.empirical_quantized_entropy(chain, spec, k, args.entropy_samples, args.seed)
        rows.append((k, h))
    chained = bounds_mod.chained_bound(
        T, [(k, bounds_mod.gamma_bar_linear(k, d), h) for k, h in rows]
    )
    smooth = bounds_mod.smooth_linear_bound(
        d,
        T,
        rows,
        log_cover_upper=lambda k: math.log(covering_number_bounds(d, 2.0 ** (-k))[1]),
    )
    report["empirical_entropies_nats"] = {str(k): h for k, h in rows}
    report["chained_bound"] = chained.total
    report["smooth_linear_bound"] = smooth.total
    report["smooth_linear_tail_bound"] = smooth.tail_bound
    report["k0"] = chain.k0
    _emit(args, json.dumps(report, indent=2) + "\n")
    return 0


def _rollout_history(spec: FiniteBanditSpec, rounds: int, rng) -> list:
    from .agents import run_episode
    from .bandit_env import sample_parameter

    theta = sample_parameter(spec, rng)
    history, _ = run_episode(spec, AgentConfig(batch_size=2), rounds, theta, rng)
    return history.committed


def _verify_lemma(args) -> dict:
    rng = trial_rng(args.seed, 0)
    failures = 0
    for _ in range(args.instances):
        n = int(rng.integers(1, 13))
        Q = rng.dirichlet(np.ones(n))
        f = rng.uniform(0.0, 10.0, size=n)
        g = rng.uniform(0.0, 10.0, size=n)
        i, j, q = two_point_reduction(Q, f, g)
        tol = 1e-12 * max(1.0, float(Q @ f), float(Q @ g))
        if q * f[i] + (1 - q) * f[j] > Q @ f + tol:
            failures += 1
        if q * g[i] + (1 - q) * g[j] > Q @ g + tol:
            failures += 1
    return {"suite": "lemma", "instances": args.instances, "failures": failures}


def _verify_construction(args) -> dict:
    rng = trial_rng(args.seed, 1)
    checked = 0
    worst_gap = 0.0
    for _ in range(args.instances):
        spec = random_finite_spec(rng)
        history = _rollout_history(spec, 4, rng)
        chain = _fine_chain(spec)
        family = build_sampling_functions(spec, chain, history)
        total, direct = telescoping_check(spec, chain, family, history)
        worst_gap = max(worst_gap, abs(total - direct))
        checked += 1
    return {
        "suite": "construction",
        "instances": checked,
        "worst_telescoping_gap": worst_gap,
    }


def _fine_chain(spec: FiniteBanditSpec):
    pts = spec.actions.points
    diff = pts[:, None, :] - pts[None, :, :]
    gaps = np.linalg.norm(diff, axis=-1)
    gaps = gaps[gaps > 0]
    K = max(1, math.ceil(-math.log2(gaps.min())) + 1)
    k0 = compute_k0(spec.actions, 2.0)
    return build_quantization_chain(spec.actions, 2.0, max(K, k0 + 1))


def _verify_chainlink(args) -> dict:
    rng = trial_rng(args.seed, 2)
    spec = circle_spec()
    chain = _fine_chain(spec)
    rows = []
    violations = 0
    for _ in range(args.instances):
        history = _rollout_history(spec, 4, rng)
        family = build_sampling_functions(spec, chain, history)
        for k in range(chain.k0 + 1, chain.K_max + 1):
            rep = chain_link_ratio(spec, chain, family, history, k)
            for gamma in (rep.gamma_sampled, rep.gamma_quantized):
                if gamma is not None and gamma > rep.bound:
                    violations += 1
            rows.append(json.loads(rep.to_json()))
    return {"suite": "chainlink", "violations": violations, "reports": rows}


def _verify_telescoping(args) -> dict:
    rng = trial_rng(args.seed, 3)
    worst = 0.0
    for _ in range(args.instances):
        spec = random_finite_spec(rng, max_actions=6, max_params=4)
        history = _rollout_history(spec, 4, rng)
        chain = _fine_chain(spec)
        family = build_sampling_functions(spec, chain, history)
        total, direct = telescoping_check(spec, chain, family, history)
        worst = max(worst, abs(total - direct))
    return {"suite": "telescoping", "instances": args.instances, "worst_gap": worst}


def _cmd_verify(args) -> int:
    suites = {
        "lemma": _verify_lemma,
        "construction": _verify_construction,
        "chainlink": _verify_chainlink,
        "telescoping": _verify_telescoping,
    }
    result = suites[args.suite](args)
    _emit(args, json.dumps(result, indent=2, sort_keys=True) + "\n")
    bad = result.get("failures", 0) or result.get("violations", 0)
    return 0 if not bad else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--jobs", type=int, default=1)

    def points_opts(p):
        p.add_argument("--points", type=str, default=None, help="JSON file with point coords")
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--n-points", type=int, default=256)

    p = sub.add_parser("net", help="greedy epsilon-net over a point set")
    shared(p)
    points_opts(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.set_defaults(func=_cmd_net)

    p = sub.add_parser("chain", help="nested quantization chain")
    shared(p)
    points_opts(p)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--unit-ball", action="store_true")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("simulate", help="Monte-Carlo Bayesian regret curve")
    shared(p)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--prior", choices=["gaussian", "sphere"], default="gaussian")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("scaling", help="regret scaling grid in d and T")
    shared(p)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--prior", choices=["gaussian", "sphere"], default="gaussian")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--d-grid", type=int, nargs="+", required=True)
    p.add_argument("--T-grid", type=int, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("bounds", help="all closed-form bounds plus empirical entropies")
    shared(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--unit-ball", action="store_true")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--prior", choices=["gaussian", "sphere"], default="gaussian")
    p.add_argument("--n-points", type=int, default=256)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--entropy-samples", type=int, default=20000)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="exact enumeration verification suites")
    shared(p)
    p.add_argument(
        "--suite",
        choices=["lemma", "construction", "chainlink", "telescoping"],
        required=True,
    )
    p.add_argument("--instances", type=int, default=50)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("CBL_LOG", "error").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.ERROR))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        sys.stderr.write(f"error: invariant-violation: {exc}\n")
        return 2
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: input: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
