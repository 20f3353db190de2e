"""Classical sampling strategy: uniform test subsets and weight estimation.

A word ``q`` of length ``N`` over an alphabet of size ``d`` is sampled on a
uniformly random subset ``tau`` of ``k`` positions. The relative
``a``-Hamming weight of the sample is used as the estimate of the weight of
the unsampled remainder. Positions are 0-indexed.

The error probability of the strategy is the worst case, over words, of the
chance that the estimate misses the remainder's weight by more than
``delta``. It is available three ways here: exact (hypergeometric per weight
class, or brute-force enumeration for tiny instances), Monte Carlo, and the
closed-form upper bound ``2 exp(-delta^2 k N / (N + 2))``.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Sequence

import numpy as np

#: Slack when comparing an estimation gap against ``delta``; keeps
#: ``delta = 0.3`` (stored as 0.29999...) from rejecting a gap of exactly 3/10.
GAP_TOL = 1e-12

#: Largest ``N`` handled by the exact weight-class path.
EXACT_MAX_N = 64

#: Largest ``N`` handled by brute-force enumeration over words.
ENUMERATE_MAX_N = 16

# Work cap (words x subsets) for brute-force enumeration.
_ENUMERATE_MAX_WORK = 2 ** 25


def as_word(q: str | Sequence[int] | np.ndarray, d: int | None = None) -> np.ndarray:
    """Coerce ``q`` to an int array over ``{0, ..., d-1}``.

    Strings are read one symbol per character (``"0120"``). With ``d=None``
    only non-negativity is checked.
    """
    if isinstance(q, str):
        arr = np.array([int(ch) for ch in q], dtype=np.int64)
    else:
        arr = np.asarray(q, dtype=np.int64).ravel()
    if arr.size == 0:
        raise ValueError("word is empty")
    if arr.min() < 0:
        raise ValueError("word has negative symbols")
    if d is not None:
        if d < 2:
            raise ValueError(f"alphabet size must be >= 2, got {d}")
        if arr.max() >= d:
            raise ValueError(f"word has symbols outside 0..{d - 1}")
    return arr


def _as_subset(tau: Sequence[int] | np.ndarray, N: int) -> np.ndarray:
    idx = np.asarray(tau, dtype=np.int64).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= N):
        raise ValueError(f"subset indices must lie in 0..{N - 1}")
    idx = np.sort(idx)
    if np.any(np.diff(idx) == 0):
        raise ValueError("subset indices must be distinct")
    return idx


def relative_hamming_weight(q, a: int = 0, d: int | None = None) -> float:
    """Fraction of positions of ``q`` that differ from the symbol ``a``."""
    arr = as_word(q, d)
    if d is not None and not 0 <= a < d:
        raise ValueError(f"reference symbol {a} outside alphabet of size {d}")
    return float(np.count_nonzero(arr != a)) / arr.size


def estimate(q_tau, a: int = 0) -> float:
    """Estimator of the remainder's weight: the weight of the sample itself."""
    return relative_hamming_weight(q_tau, a)


def sample_subset(N: int, k: int, rng=None) -> np.ndarray:
    """Draw a uniformly random size-``k`` subset of ``range(N)``, sorted.

    ``rng`` may be a seed or a :class:`numpy.random.Generator`.
    """
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= N, got N={N}, k={k}")
    rng = np.random.default_rng(rng)
    return np.sort(rng.choice(N, size=k, replace=False))


def _gap(ones_in_sample, k: int, ones_total, N: int):
    return np.abs(ones_in_sample / k - (ones_total - ones_in_sample) / (N - k))


def is_good_word(q, tau, a: int = 0, delta: float = 0.0) -> bool:
    """True when the sample on ``tau`` estimates the remainder within ``delta``."""
    arr = as_word(q)
    idx = _as_subset(tau, arr.size)
    if idx.size == 0 or idx.size >= arr.size:
        raise ValueError("subset must be nonempty and leave a nonempty remainder")
    mask = np.zeros(arr.size, dtype=bool)
    mask[idx] = True
    est = np.count_nonzero(arr[mask] != a) / idx.size
    rem = np.count_nonzero(arr[~mask] != a) / (arr.size - idx.size)
    return bool(abs(est - rem) <= delta + GAP_TOL)


def _check_instance(N: int, k: int, d: int, a: int) -> None:
    if not 1 <= k < N:
        raise ValueError(f"need 1 <= k < N, got N={N}, k={k}")
    if d < 2 or not 0 <= a < d:
        raise ValueError(f"invalid alphabet size {d} / reference symbol {a}")


@lru_cache(maxsize=4096)
def _weight_class_table(N: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    # C[w, j]: number of subsets holding j of the w off-symbols (exact ints)
    # G[w, j]: |estimate - remainder weight| for those subsets
    C = np.zeros((N + 1, k + 1), dtype=object)
    G = np.full((N + 1, k + 1), -np.inf)
    for w in range(N + 1):
        for j in range(max(0, k - (N - w)), min(k, w) + 1):
            C[w, j] = math.comb(w, j) * math.comb(N - w, k - j)
            G[w, j] = abs(j / k - (w - j) / (N - k))
    C.setflags(write=False)
    G.setflags(write=False)
    return C, G


def weight_class_failure(N: int, k: int, delta: float) -> np.ndarray:
    """Exact failure probability for each number ``w = 0..N`` of off-symbols.

    The chance that a uniformly random subset misjudges a word depends only on
    how many positions differ from ``a``; the count of those in the sample is
    hypergeometric, so the failure probability is a finite hypergeometric sum.
    Counts are summed as exact integers before the single division.
    """
    C, G = _weight_class_table(N, k)
    bad = np.sum(np.where(G > delta + GAP_TOL, C, 0), axis=1)
    total = math.comb(N, k)
    return np.array([int(b) / total for b in bad])


def _error_prob_enumerate(N: int, k: int, delta: float, d: int, a: int) -> float:
    words = np.array(list(itertools.product(range(d), repeat=N)), dtype=np.int8)
    off = (words != a).astype(np.int32)
    subsets = np.array(list(itertools.combinations(range(N), k)), dtype=np.int64)
    masks = np.zeros((len(subsets), N), dtype=np.int32)
    np.put_along_axis(masks, subsets, 1, axis=1)
    in_sample = off @ masks.T
    ones = off.sum(axis=1, keepdims=True)
    bad = _gap(in_sample, k, ones, N) > delta + GAP_TOL
    return float(bad.mean(axis=1).max())


def error_prob_exact(
    N: int, k: int, delta: float, d: int = 2, a: int = 0, method: str = "auto"
) -> float:
    """Exact error probability of the uniform sampling strategy.

    Parameters
    ----------
    N, k : int
        Word length and sample size.
    delta : float
        Accuracy threshold.
    d, a : int
        Alphabet size and reference symbol.
    method : {"auto", "weight-class", "enumerate"}
        ``"weight-class"`` maximizes the hypergeometric failure probability
        over the ``N + 1`` weight classes (``N <= 64``). ``"enumerate"``
        walks every word and every subset (``N <= 16`` and bounded work) and
        serves as an independent check of the first. ``"auto"`` picks
        ``"weight-class"``.
    """
    _check_instance(N, k, d, a)
    if method in ("auto", "weight-class"):
        if N > EXACT_MAX_N:
            raise ValueError(
                f"exact error probability is limited to N <= {EXACT_MAX_N}, got N={N}"
            )
        return float(weight_class_failure(N, k, delta).max())
    if method == "enumerate":
        work = d**N * math.comb(N, k)
        if N > ENUMERATE_MAX_N or work > _ENUMERATE_MAX_WORK:
            raise ValueError(f"instance too large to enumerate (N={N}, d={d}, k={k})")
        return _error_prob_enumerate(N, k, delta, d, a)
    raise ValueError(f"unknown method {method!r}")


def _mc_lane(N: int, k: int, delta: float, trials: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    w = np.arange(N + 1)
    failures = np.zeros(N + 1, dtype=np.int64)
    # chunk to bound memory at large N
    chunk = max(1, 2_000_000 // (N + 1))
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        hits = rng.hypergeometric(
            np.broadcast_to(w[:, None], (N + 1, size)),
            np.broadcast_to((N - w)[:, None], (N + 1, size)),
            k,
        )
        failures += np.count_nonzero(_gap(hits, k, w[:, None], N) > delta + GAP_TOL, axis=1)
        done += size
    return failures


def error_prob_monte_carlo(
    N: int,
    k: int,
    delta: float,
    d: int = 2,
    a: int = 0,
    trials: int = 10_000,
    rng=None,
    lanes: int = 1,
) -> tuple[float, float]:
    """Monte Carlo estimate of the error probability and its standard error.

    Each of the ``N + 1`` weight classes gets ``trials`` random subsets; the
    number of off-symbols landing in a subset is drawn from the matching
    hypergeometric law. The worst class's failure fraction is returned with
    its binomial standard error.

    Trials are split across ``lanes`` independent substreams spawned from the
    master seed, so results are reproducible for a fixed ``(seed, lanes)``.
    Lanes run on a thread pool.
    """
    _check_instance(N, k, d, a)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if lanes < 1:
        raise ValueError("lanes must be >= 1")
    if isinstance(rng, np.random.Generator):
        children = rng.spawn(lanes)
    else:
        children = np.random.SeedSequence(rng).spawn(lanes)
    shares = [trials // lanes + (1 if i < trials % lanes else 0) for i in range(lanes)]
    jobs = [(N, k, delta, t, c) for t, c in zip(shares, children) if t > 0]
    if len(jobs) == 1:
        parts = [_mc_lane(*jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(lambda j: _mc_lane(*j), jobs))
    failures = np.sum(parts, axis=0)
    worst = int(np.argmax(failures))
    p = failures[worst] / trials
    return float(p), math.sqrt(p * (1.0 - p) / trials)


def error_prob_bound(N: int, k: int, delta: float, check: bool = True) -> float:
    """Analytic upper bound ``min(1, 2 exp(-delta^2 k N / (N + 2)))``.

    The bound is only guaranteed for ``k <= N/2``; pass ``check=False`` to
    evaluate it outside that regime.
    """
    if k < 1 or N < 1:
        raise ValueError(f"need N, k >= 1, got N={N}, k={k}")
    if check and 2 * k > N:
        raise ValueError(f"bound requires k <= N/2, got N={N}, k={k}")
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    log_val = math.log(2.0) - delta * delta * k * N / (N + 2)
    return math.exp(min(0.0, log_val))


def delta_from_epsilon(m: int, n: int, epsilon: float, enforce_m_le_n: bool = True) -> float:
    """Sampling accuracy ``delta`` at which the bound above equals ``epsilon**2``.

    ``delta = sqrt((m + n + 2) ln(2 / epsilon^2) / (m (m + n)))`` for a test
    sample of ``m`` out of ``m + n`` positions.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got m={m}, n={n}")
    if enforce_m_le_n and m > n:
        raise ValueError(f"need m <= n, got m={m}, n={n}")
    log_term = math.log(2.0) - 2.0 * math.log(epsilon)
    return math.sqrt((m + n + 2) * log_term / (m * (m + n)))
