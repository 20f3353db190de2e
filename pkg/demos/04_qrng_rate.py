"""
Certified output rate of a source-independent QRNG
==================================================

With the default protocol parameters (observed error 0.2, a test fraction
of 7 %, eps = 1e-36) the cost of the random test-subset seed,
``log2 C(N, m)``, is larger than the certified entropy. The net length is
negative at every size shown, so the reported rate is clamped to 0. A
lower-noise, smaller-test configuration does certify bits.
"""

import numpy as np

from sampling_uncertainty import QrngParams, asymptotic_rate, rate_curve, rate_point
from sampling_uncertainty.entropy import log2_binomial

Ns = np.geomspace(1e3, 1e7, 5).astype(int)
print(f"{'N':>9} {'delta':>7} {'ell/N':>8} {'seed/N':>8} {'rate':>6}")
for p in rate_curve(Ns, 0.07, 1e-36, 0.33, 0.2):
    print(f"{p.N_total:9d} {p.delta:7.4f} {p.ell / p.N_total:8.4f} "
          f"{log2_binomial(p.N_total, p.m) / p.N_total:8.4f} {p.rate:6.3f}")
print(f"asymptote 1 - h(0.2) = {asymptotic_rate(0.2):.5f}")

# a regime with positive output
p = rate_point(QrngParams(10**7, epsilon=1e-10, beta=0.3, w_obs=0.01, m=50_000))
print(f"\nN=1e7, m=5e4, w=0.01: ell={p.ell:.0f} bits, rate={p.rate:.4f} (asymptote {asymptotic_rate(0.01):.4f})")
