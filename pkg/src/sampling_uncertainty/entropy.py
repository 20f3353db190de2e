"""Scalar entropy functions and combinatorial log-volumes.

All values are in bits. The convention ``0 * log(0) = 0`` is used throughout.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

#: Tolerance on ``sum(p) == 1`` when validating a distribution.
DIST_TOL = 1e-9

_LN2 = math.log(2.0)

# Below this size the Hamming-ball volume is summed with exact integers.
_EXACT_BALL_MAX_N = 4096


def _check_distribution(probs: Sequence[float] | np.ndarray) -> np.ndarray:
    p = np.asarray(probs, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("distribution is empty")
    if np.any(p < -DIST_TOL) or not np.all(np.isfinite(p)):
        raise ValueError("distribution has negative or non-finite entries")
    total = p.sum()
    if abs(total - 1.0) > DIST_TOL:
        raise ValueError(f"distribution sums to {total!r}, not 1")
    return np.clip(p, 0.0, None)


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy ``h(x) = -x log2 x - (1-x) log2 (1-x)``.

    >>> binary_entropy(0.5)
    1.0
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy needs x in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def extended_binary_entropy(x: float) -> float:
    """Binary entropy clamped outside ``[0, 1/2]``.

    Returns 0 for ``x < 0`` and 1 for ``x > 1/2``, so the function is
    nondecreasing on the whole real line.
    """
    if x < 0.0:
        return 0.0
    if x > 0.5:
        return 1.0
    return binary_entropy(x)


def shannon_entropy(probs: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy of a finite distribution, in bits."""
    p = _check_distribution(probs)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def min_entropy_classical(probs: Sequence[float] | np.ndarray) -> float:
    """Min-entropy ``-log2 max_i p_i`` of a finite distribution."""
    p = _check_distribution(probs)
    return -math.log2(float(p.max())) + 0.0


def log2_binomial(N: int, m: int) -> float:
    """``log2 C(N, m)`` computed in the log domain.

    Sums ``log2(1 + (N - k)/i)`` for ``i = 1..k`` with ``k = min(m, N - m)``.
    Every term is positive, so the pairwise sum keeps the relative error near
    machine precision even for ``N`` in the millions.
    """
    N = int(N)
    m = int(m)
    if N < 0 or m < 0 or m > N:
        raise ValueError(f"log2_binomial needs 0 <= m <= N, got N={N}, m={m}")
    k = min(m, N - m)
    if k == 0:
        return 0.0
    i = np.arange(1, k + 1, dtype=float)
    return float(np.sum(np.log1p((N - k) / i))) / _LN2


def hamming_ball_log_volume(n: int, r: float) -> float:
    """``log2 sum_{w=0}^{floor(r n)} C(n, w)``, the log-volume of a Hamming ball.

    Returns ``-inf`` when the ball is empty (``r < 0``) and ``n`` when
    ``r >= 1``. A relative slack of 1e-9 is applied before flooring so that
    e.g. ``r = 0.29, n = 100`` gives radius 29, not 28.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"hamming_ball_log_volume needs n >= 1, got {n}")
    if r < 0:
        return -math.inf
    if r >= 1:
        return float(n)
    radius = min(n, math.floor(r * n + 1e-9))
    if n <= _EXACT_BALL_MAX_N:
        total = 0
        term = 1
        for w in range(radius + 1):
            total += term
            term = term * (n - w) // (w + 1)
        return math.log2(total)
    w = np.arange(radius + 1, dtype=float)
    logs = gammaln(n + 1.0) - gammaln(w + 1.0) - gammaln(n - w + 1.0)
    return float(np.logaddexp.reduce(logs)) / _LN2
