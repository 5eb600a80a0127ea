"""Bound calculators against closed-form constants and brute-force oracles."""
import math

import numpy as np
import pytest

from cbl.bounds import (
    alpha_series_constant,
    chained_bound,
    empirical_quantized_entropy,
    entropy_integral_bound,
    gamma_bar_linear,
    smooth_linear_bound,
    unit_ball_bound,
    unit_ball_log_cover_upper,
)
from cbl.bandit_env import FiniteBanditSpec, LinearGaussianSpec
from cbl.metric_nets import PointSet, build_quantization_chain, covering_number_bounds

from test_bandit_env import two_armed_spec


def test_gamma_bar_linear_values():
    assert gamma_bar_linear(1, 1) == pytest.approx(18.0)
    assert gamma_bar_linear(3, 2) == pytest.approx(2.25)
    assert gamma_bar_linear(5, 3, rho_k=0.0) == 0.0
    assert gamma_bar_linear(0, 2, rho_k=0.5) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        gamma_bar_linear(1, 0)
    with pytest.raises(ValueError):
        gamma_bar_linear(1, 1, rho_k=-1.0)


def test_chained_bound_values():
    assert chained_bound(10, [(1, 2.0, 0.0)]).total == 0.0
    assert chained_bound(8, [(1, 2.0, 1.0)]).total == pytest.approx(math.sqrt(32.0))
    base = chained_bound(100, [(1, 2.0, 1.0), (2, 0.5, 0.3)])
    doubled = chained_bound(200, [(1, 2.0, 1.0), (2, 0.5, 0.3)])
    assert doubled.total == pytest.approx(base.total * math.sqrt(2.0), rel=1e-12)
    with pytest.raises(ValueError):
        chained_bound(0, [(1, 1.0, 1.0)])
    with pytest.raises(ValueError):
        chained_bound(10, [(1, -1.0, 1.0)])


def test_chained_report_totals_and_csv():
    report = chained_bound(50, [(1, 2.0, 1.0), (2, 0.5, 0.3)])
    assert report.total == pytest.approx(sum(r[3] for r in report.rows), rel=1e-12)
    assert all(r[3] >= 0 for r in report.rows)
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "k,gamma_bar,H_k_nats,term"
    assert lines[-1].startswith("TOTAL")
    assert float(lines[-1].split(",")[-1]) == report.total


def test_smooth_linear_single_term():
    assert smooth_linear_bound(1, 1, [(1, 1.0)]).total == pytest.approx(6.0)
    assert smooth_linear_bound(2, 100, [(1, 0.0), (2, 0.0)]).total == 0.0


def test_smooth_equals_chained_with_linear_gamma():
    rows = [(k, 0.2 + 0.15 * k) for k in range(1, 7)]
    for d in (1, 2, 4):
        for T in (100, 10_000):
            smooth = smooth_linear_bound(d, T, rows)
            chained = chained_bound(T, [(k, gamma_bar_linear(k, d), h) for k, h in rows])
            for rs, rc in zip(smooth.rows, chained.rows):
                assert rs[3] == pytest.approx(rc[3], rel=1e-12)
            assert smooth.total == pytest.approx(chained.total, rel=1e-12)


def test_smooth_tail_certificate():
    log_cover = lambda k: math.log(covering_number_bounds(2, 2.0 ** (-k))[1])
    report = smooth_linear_bound(2, 1000, [(k, 0.5) for k in range(1, 5)], log_cover)
    assert report.tail_bound > 0
    # the certificate dominates the true dropped terms under the envelope cap
    dropped = sum(
        12.0 * 2.0 ** (-k) * math.sqrt(2 * 1000 * log_cover(k)) for k in range(5, 60)
    )
    assert report.tail_bound >= dropped


def test_entropy_integral_values_and_oracle():
    step = lambda eps: 1.0 if eps <= 1.0 else 0.0
    assert entropy_integral_bound(1, 1, step, 1.0) == pytest.approx(24.0, rel=1e-6)
    assert entropy_integral_bound(2, 9, lambda eps: 0.0, 1.0) == 0.0

    n = 1_000_000
    eps = (np.arange(n) + 0.5) / n
    for d in (1, 2, 4):
        f = unit_ball_log_cover_upper(d)
        value = entropy_integral_bound(d, 1, f, 1.0)
        integrand = np.sqrt(d * np.log1p(2.0 / eps))
        oracle = 24.0 * math.sqrt(d) * integrand.mean()
        assert value == pytest.approx(oracle, rel=1e-4)

    with pytest.raises(ValueError):
        entropy_integral_bound(1, 1, step, 0.0)


def test_unit_ball_bound_values():
    assert unit_ball_bound(1, 1) == 7.0
    assert unit_ball_bound(2, 10_000) == 1400.0
    assert unit_ball_bound(3, 100) == 210.0
    with pytest.raises(ValueError):
        unit_ball_bound(0, 10)


def test_alpha_series_constant():
    c = alpha_series_constant(20.0)
    assert 6.26 <= c <= 6.28
    assert math.ceil(c) == 7
    assert np.isfinite(alpha_series_constant(2.0, tail_terms=300))
    with pytest.raises(ValueError):
        alpha_series_constant(1.0)


def test_sqrt_T_homogeneity():
    rows = [(k, 0.4) for k in range(1, 5)]
    for fn in (
        lambda T: unit_ball_bound(3, T),
        lambda T: smooth_linear_bound(2, T, rows).total,
        lambda T: entropy_integral_bound(2, T, unit_ball_log_cover_upper(2), 1.0),
    ):
        assert fn(400) == pytest.approx(2.0 * fn(100), rel=1e-9)


def circle_points(n=16):
    angles = 2 * np.pi * np.arange(n) / n
    return PointSet(np.column_stack([np.cos(angles), np.sin(angles)]))


def test_empirical_entropy_root_zero_and_cap():
    space = circle_points()
    chain = build_quantization_chain(space, 2.0, 3)
    spec = LinearGaussianSpec(d=2, action_set=space)
    assert empirical_quantized_entropy(chain, spec, chain.k0, 1000, 0) == 0.0
    for k in range(chain.k0, chain.K_max + 1):
        h = empirical_quantized_entropy(chain, spec, k, 5000, 0)
        assert h <= math.log(len(chain.centers(k))) + 1e-12


def test_empirical_entropy_symmetric_coin():
    spec = two_armed_spec()
    chain = build_quantization_chain(spec.actions, 2.0, 2)
    h = empirical_quantized_entropy(chain, spec, 2, 100_000, 0)
    assert h == pytest.approx(math.log(2.0), abs=0.01)


def test_empirical_entropy_monotone_in_k():
    space = circle_points()
    chain = build_quantization_chain(space, 2.0, 3)
    spec = LinearGaussianSpec(d=2, action_set=space)
    hs = [
        empirical_quantized_entropy(chain, spec, k, 20_000, 0)
        for k in range(chain.k0, chain.K_max + 1)
    ]
    mc_slack = 2.0 * math.log(space.size) / math.sqrt(20_000)
    for lo, hi in zip(hs, hs[1:]):
        assert lo <= hi + mc_slack
