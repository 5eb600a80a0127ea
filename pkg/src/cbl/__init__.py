"""Two-step Thompson Sampling laboratory: metric nets, bandit simulation,
regret bound calculators, and exact information-theoretic verification."""

from .agents import AgentConfig, RegretCurve, estimate_bayes_regret, run_episode
from .bandit_env import FiniteBanditSpec, History, LinearGaussianSpec
from .bayes import DiscretePosterior, GaussianPosterior
from .metric_nets import (
    PointSet,
    QuantizationChain,
    build_quantization_chain,
    compute_k0,
    covering_number_bounds,
    greedy_epsilon_net,
    quantize,
)

__version__ = "0.1.0"
