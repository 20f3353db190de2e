"""
Shannon entropy versus min-entropy of a biased bit
==================================================

The min-entropy never exceeds the Shannon entropy. They agree only for a
deterministic bit and a fair one.
"""

import numpy as np

from sampling_uncertainty import binary_entropy, min_entropy_classical

ps = np.linspace(0, 1, 11)
print(f"{'p':>5} {'Shannon':>9} {'min-ent':>9}")
for p in ps:
    print(f"{p:5.2f} {binary_entropy(p):9.4f} {min_entropy_classical([p, 1 - p]):9.4f}")

# The same table as CSV: sampling-uncertainty fig1 --grid 0:1:11
