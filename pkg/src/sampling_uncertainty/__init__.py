"""Sampling-based entropic uncertainty: bounds, QRNG rates and small-system checks."""
from .bounds import (
    BoundParams,
    BoundResult,
    extractable_length,
    failure_probability,
    pa_distance,
    smoothing_parameter,
    theorem_bound,
)
from .entropy import (
    binary_entropy,
    extended_binary_entropy,
    hamming_ball_log_volume,
    log2_binomial,
    min_entropy_classical,
    shannon_entropy,
)
from .qrng import (
    QrngParams,
    RatePoint,
    asymptotic_rate,
    epsilon_pa,
    qrng_length,
    rate_curve,
    rate_point,
)
from .sampling import (
    delta_from_epsilon,
    error_prob_bound,
    error_prob_exact,
    error_prob_monte_carlo,
    estimate,
    is_good_word,
    relative_hamming_weight,
    sample_subset,
)

__version__ = "0.1.0"
