"""Source-independent QRNG: extractable length and bit-generation rate.

An untrusted source emits ``N`` qubits. A random test subset of ``m`` is
measured in the X basis (observed error weight ``w``) and the other ``n``
in the Z basis, so the overlap is ``c = 1/2``. The certified output length
after privacy amplification and after paying back the seed used to pick the
test subset is

    ell = n (1 - Hbar(w + delta)) - log2(1/eps) - log2 C(N, m)

(``length_formula="paper_final"``). Carrying the privacy-amplification
penalty ``2 log2(1/(eps_PA - 2 eps'))`` through with ``eps_PA = 5 eps +
4 eps**beta`` and ``eps' = 2 eps + 2 eps**beta`` gives ``2 log2(1/eps)``
instead; that variant is ``length_formula="two_log"``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .bounds import _pow, failure_probability
from .entropy import binary_entropy, extended_binary_entropy, log2_binomial
from .sampling import delta_from_epsilon

log = logging.getLogger(__name__)

LENGTH_FORMULAS = ("paper_final", "two_log")


def epsilon_pa(epsilon: float, beta: float) -> float:
    """Privacy-amplification distance ``5 eps + 4 eps**beta``."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not 0.0 < beta < 0.5:
        raise ValueError(f"beta must lie in (0, 1/2), got {beta!r}")
    return 5.0 * epsilon + 4.0 * _pow(epsilon, beta)


def split_sample(N_total: int, m_fraction: float) -> tuple[int, int]:
    """Split ``N_total`` into ``(n, m)`` with ``m ~ m_fraction * n``.

    ``n = round(N_total / (1 + m_fraction))`` and ``m = N_total - n``.
    """
    if m_fraction <= 0:
        raise ValueError(f"m_fraction must be positive, got {m_fraction!r}")
    n = round(N_total / (1.0 + m_fraction))
    return n, N_total - n


@dataclass(frozen=True)
class QrngParams:
    """QRNG protocol parameters; give either ``m`` or ``m_fraction``."""

    N_total: int
    epsilon: float
    beta: float
    w_obs: float
    m: int | None = None
    m_fraction: float | None = None
    length_formula: str = "paper_final"

    def __post_init__(self):
        if (self.m is None) == (self.m_fraction is None):
            raise ValueError("give exactly one of m and m_fraction")
        if self.m is None:
            object.__setattr__(self, "m", split_sample(self.N_total, self.m_fraction)[1])
        n = self.N_total - self.m
        if self.m < 1 or n < self.m:
            raise ValueError(f"need 1 <= m <= n, got N={self.N_total}, m={self.m}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not 0.0 < self.beta < 0.5:
            raise ValueError(f"beta must lie in (0, 1/2), got {self.beta!r}")
        if not 0.0 <= self.w_obs <= 1.0:
            raise ValueError(f"w_obs must lie in [0, 1], got {self.w_obs!r}")
        if self.length_formula not in LENGTH_FORMULAS:
            raise ValueError(f"length_formula must be one of {LENGTH_FORMULAS}")

    @property
    def n(self) -> int:
        return self.N_total - self.m


@dataclass(frozen=True)
class RatePoint:
    N_total: int
    n: int
    m: int
    delta: float
    ell: float
    rate: float
    eps_pa: float
    failure_prob: float
    feasible: bool = True

    @property
    def vacuous(self) -> bool:
        return not self.feasible or self.ell <= 0.0


def qrng_length(p: QrngParams) -> float:
    """Certified number of output bits ``ell``; negative when nothing is certified."""
    delta = delta_from_epsilon(p.m, p.n, p.epsilon)
    penalty = -math.log2(p.epsilon)
    if p.length_formula == "two_log":
        penalty *= 2.0
    return p.n * (1.0 - extended_binary_entropy(p.w_obs + delta)) - penalty - log2_binomial(p.N_total, p.m)


def rate_point(p: QrngParams) -> RatePoint:
    ell = qrng_length(p)
    return RatePoint(
        N_total=p.N_total,
        n=p.n,
        m=p.m,
        delta=delta_from_epsilon(p.m, p.n, p.epsilon),
        ell=ell,
        rate=max(0.0, ell / p.N_total),
        eps_pa=epsilon_pa(p.epsilon, p.beta),
        failure_prob=failure_probability(p.epsilon, p.beta),
    )


def asymptotic_rate(w: float) -> float:
    """Asymptotic rate ``1 - h(w)``; zero for ``w > 1/2``."""
    if w < 0:
        raise ValueError(f"w must be non-negative, got {w!r}")
    if w > 0.5:
        return 0.0
    return 1.0 - binary_entropy(w)


def rate_curve(
    N_values: Iterable[int],
    m_fraction: float,
    epsilon: float,
    beta: float,
    w_obs: float,
    length_formula: str = "paper_final",
    skip_infeasible: bool = True,
) -> list[RatePoint]:
    """One :class:`RatePoint` per total length ``N``, with ``m ~ m_fraction * n``.

    Lengths that cannot hold a test sample (``m < 1`` or ``m > n``) are
    logged and skipped, or kept as ``feasible=False`` rows with
    ``skip_infeasible=False``.
    """
    out = []
    for N in N_values:
        N = int(N)
        n, m = split_sample(N, m_fraction)
        try:
            p = QrngParams(N, epsilon, beta, w_obs, m=m, length_formula=length_formula)
        except ValueError as exc:
            if "m <= n" not in str(exc):
                raise
            log.warning("skipping N=%d: %s", N, exc)
            if not skip_infeasible:
                nan = math.nan
                out.append(RatePoint(N, n, m, nan, nan, 0.0, nan, nan, feasible=False))
            continue
        out.append(rate_point(p))
    return out
