"""Harness semantics: batching, determinism, regret estimation, scaling fits."""
import numpy as np
import pytest

from cbl.agents import (
    AgentConfig,
    RegretCurve,
    estimate_bayes_regret,
    fit_loglog_slope,
    run_episode,
    scaling_experiment,
    trial_rng,
)
from cbl.bandit_env import FiniteBanditSpec, LinearGaussianSpec
from cbl.metric_nets import PointSet

from test_bandit_env import two_armed_spec


def test_trial_rng_vector_and_independence():
    assert int(trial_rng(0, 0).integers(2**32)) == 3653403231
    a = trial_rng(42, 3).standard_normal(4)
    b = trial_rng(42, 3).standard_normal(4)
    assert np.array_equal(a, b)
    c = trial_rng(42, 4).standard_normal(4)
    assert not np.array_equal(a, c)


def test_config_validation():
    with pytest.raises(ValueError):
        AgentConfig(batch_size=0)
    spec = LinearGaussianSpec(d=1)
    with pytest.raises(ValueError):
        run_episode(spec, AgentConfig(batch_size=2), 3, np.array([1.0]), trial_rng(0, 0))
    with pytest.raises(ValueError):
        estimate_bayes_regret(spec, AgentConfig(), 2, 0, 0)


def test_two_armed_round_one_regret():
    """Theta uniform on {-1,+1}, noiseless: the first draw is a prior coin,
    so round-1 expected regret is (1/2) * reward gap 2 = 1, and the first
    commit identifies theta, so every later round has regret 0."""
    spec = two_armed_spec()
    curve = estimate_bayes_regret(spec, AgentConfig(batch_size=1, seed=0), 4, 4000, 0)
    assert abs(curve.per_round[0] - 1.0) <= 3 * curve.stderr[0]
    assert np.all(curve.per_round[1:] == 0.0)


def test_point_mass_prior_zero_regret():
    spec = two_armed_spec()
    point = FiniteBanditSpec(
        spec.parameters,
        np.array([1.0, 0.0]),
        spec.actions,
        spec.reward_support,
        spec.reward_probs,
    )
    curve = estimate_bayes_regret(point, AgentConfig(batch_size=2), 6, 20, 0)
    assert np.all(curve.cumulative == 0.0)


def test_singleton_action_set_zero_regret():
    support = {(0, j): np.array([float(j)]) for j in range(2)}
    probs = {(0, j): np.array([1.0]) for j in range(2)}
    spec = FiniteBanditSpec(
        np.array([[0.0], [1.0]]),
        np.array([0.5, 0.5]),
        PointSet(np.array([[0.0]])),
        support,
        probs,
    )
    _, regret = run_episode(spec, AgentConfig(batch_size=1), 5, 0, trial_rng(0, 0))
    assert np.all(regret == 0.0)


def test_batch_commit_boundaries():
    """With m=2 the committed prefix grows only at even rounds."""
    spec = two_armed_spec()
    history, _ = run_episode(spec, AgentConfig(batch_size=2), 6, 0, trial_rng(1, 0))
    assert len(history) == 6
    assert history.committed_length == 6
    history3, _ = run_episode(spec, AgentConfig(batch_size=3), 6, 0, trial_rng(1, 0))
    assert history3.committed_length == 6


def test_parallel_matches_sequential():
    spec = LinearGaussianSpec(d=2)
    seq = estimate_bayes_regret(spec, AgentConfig(), 20, 8, 123, jobs=1)
    par = estimate_bayes_regret(spec, AgentConfig(), 20, 8, 123, jobs=2)
    assert np.array_equal(seq.per_round, par.per_round)
    assert np.array_equal(seq.stderr, par.stderr)


def test_regret_curve_properties_and_csv():
    spec = LinearGaussianSpec(d=2)
    curve = estimate_bayes_regret(spec, AgentConfig(), 40, 30, 7)
    assert np.allclose(curve.cumulative, np.cumsum(curve.per_round))
    assert np.all(curve.per_round >= -3 * curve.stderr)
    # weak concavity: learning shrinks the per-round regret over the horizon
    combined = 3 * (curve.stderr[0] + curve.stderr[-1])
    assert curve.per_round[-1] <= curve.per_round[0] + combined

    back = RegretCurve.from_csv(curve.to_csv(), trials=curve.trials)
    assert np.array_equal(back.per_round, curve.per_round)
    assert np.array_equal(back.cumulative, curve.cumulative)
    assert np.array_equal(back.stderr, curve.stderr)


def test_fit_loglog_slope_exact_powers():
    T = np.array([100.0, 200.0, 400.0, 800.0])
    assert fit_loglog_slope(T, 3.0 * np.sqrt(T)) == pytest.approx(0.5, abs=1e-9)
    d = np.array([1.0, 2.0, 4.0, 8.0])
    assert fit_loglog_slope(d, 2.5 * d) == pytest.approx(1.0, abs=1e-9)


def test_scaling_experiment_shape():
    result = scaling_experiment(
        lambda d: LinearGaussianSpec(d=d),
        AgentConfig(),
        [1, 2],
        [10, 20],
        trials=5,
        master_seed=0,
    )
    assert len(result["cells"]) == 4
    for cell in result["cells"]:
        expected = cell["final_regret"] / (cell["d"] * np.sqrt(cell["T"]))
        assert cell["ratio_d_sqrtT"] == pytest.approx(expected)
    assert np.isfinite(result["slope_T"])
    assert np.isfinite(result["slope_d"])
    with pytest.raises(ValueError):
        scaling_experiment(lambda d: LinearGaussianSpec(d=d), AgentConfig(), [], [10], 1, 0)
