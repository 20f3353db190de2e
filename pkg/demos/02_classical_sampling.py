"""
How often does a random sample misjudge the rest of a string?
=============================================================

Pick ``k`` of ``N`` positions at random, count how many differ from ``a``,
and use that fraction as a guess for the unsampled part. The worst-case
failure probability is computed three ways: exactly, by Monte Carlo, and
from the closed-form exponential bound.
"""

import numpy as np

from sampling_uncertainty import (
    delta_from_epsilon,
    error_prob_bound,
    error_prob_exact,
    error_prob_monte_carlo,
    relative_hamming_weight,
    sample_subset,
)

rng = np.random.default_rng(1)

# one draw by hand
q = rng.integers(0, 2, size=20)
tau = sample_subset(20, 6, rng)
rest = np.setdiff1d(np.arange(20), tau)
print("word      ", "".join(map(str, q)))
print("sample    ", tau.tolist())
print("estimate  ", relative_hamming_weight(q[tau]), " true rest", relative_hamming_weight(q[rest]))

# exact vs simulated vs analytic
print(f"\n{'N':>4} {'k':>3} {'delta':>6} {'exact':>9} {'MC':>9} {'bound':>9}")
for N in (8, 16, 32, 64):
    k = N // 2
    for delta in (0.1, 0.25):
        mc, _ = error_prob_monte_carlo(N, k, delta, trials=5000, rng=rng)
        print(f"{N:4d} {k:3d} {delta:6.2f} {error_prob_exact(N, k, delta):9.5f} {mc:9.5f} "
              f"{error_prob_bound(N, k, delta):9.5f}")

# the bound becomes useful for long strings; pick delta for a target epsilon
m, n, eps = 10_000, 90_000, 1e-10
delta = delta_from_epsilon(m, n, eps)
print(f"\nm={m}, n={n}, eps={eps}: delta={delta:.4f}, bound={error_prob_bound(m + n, m, delta):.3e} = eps**2")
