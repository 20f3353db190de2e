"""Closed-form min-entropy bound from sampling, and privacy amplification.

After measuring a random test subset of ``m`` qubits with ``M`` and
observing relative weight ``w``, the remaining ``n`` qubits measured with
``N`` carry smooth min-entropy at least

    -n log2 c - n Hbar(w + delta)

with smoothing ``2 eps + 2 eps**beta``, except with probability
``eps_hat**(1 - 2 beta)`` over subsets and outcomes. ``delta`` comes from
:func:`~sampling_uncertainty.sampling.delta_from_epsilon`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import extended_binary_entropy
from .sampling import delta_from_epsilon


def _pow(base: float, exponent: float) -> float:
    # log-space power, safe for base ~ 1e-36 raised to fractional exponents
    return math.exp(exponent * math.log(base))


@dataclass(frozen=True)
class BoundParams:
    """Inputs of the sampling bound.

    ``epsilon_hat`` defaults to ``epsilon``. ``a`` is the reference symbol
    for the observed weight; it does not enter the arithmetic.
    """

    m: int
    n: int
    epsilon: float
    beta: float
    c: float
    w_obs: float
    epsilon_hat: float | None = None
    a: int = 0

    def __post_init__(self):
        if self.epsilon_hat is None:
            object.__setattr__(self, "epsilon_hat", self.epsilon)
        if self.m < 1 or self.n < 1 or self.m > self.n:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not self.epsilon <= self.epsilon_hat <= 1.0:
            raise ValueError("need epsilon <= epsilon_hat <= 1")
        if not 0.0 < self.beta < 0.5:
            raise ValueError(f"beta must lie in (0, 1/2), got {self.beta!r}")
        if not 0.5 - 1e-12 <= self.c <= 1.0 + 1e-12:
            raise ValueError(f"overlap c must lie in [1/2, 1], got {self.c!r}")
        if not 0.0 <= self.w_obs <= 1.0:
            raise ValueError(f"observed weight must lie in [0, 1], got {self.w_obs!r}")
        if self.a not in (0, 1):
            raise ValueError(f"reference symbol must be 0 or 1, got {self.a!r}")


@dataclass(frozen=True)
class BoundResult:
    delta: float
    smoothing: float
    entropy_lower_bound: float
    failure_prob: float

    @property
    def vacuous(self) -> bool:
        """True when the bound certifies no entropy at all."""
        return self.entropy_lower_bound <= 0.0


def smoothing_parameter(epsilon: float, beta: float) -> float:
    """``2 eps + 2 eps**beta``."""
    return 2.0 * epsilon + 2.0 * _pow(epsilon, beta)


def failure_probability(epsilon_hat: float, beta: float) -> float:
    """``eps_hat**(1 - 2 beta)``, the chance the bound does not apply."""
    if not 0.0 < epsilon_hat <= 1.0:
        raise ValueError(f"epsilon_hat must lie in (0, 1], got {epsilon_hat!r}")
    if not 0.0 <= beta < 0.5:
        raise ValueError(f"beta must lie in [0, 1/2), got {beta!r}")
    return _pow(epsilon_hat, 1.0 - 2.0 * beta)


def theorem_bound(p: BoundParams) -> BoundResult:
    """Evaluate the sampling min-entropy bound.

    Negative ``entropy_lower_bound`` values are returned unclamped; see
    :attr:`BoundResult.vacuous`.
    """
    delta = delta_from_epsilon(p.m, p.n, p.epsilon)
    h = -p.n * math.log2(p.c) - p.n * extended_binary_entropy(p.w_obs + delta)
    return BoundResult(
        delta=delta,
        smoothing=smoothing_parameter(p.epsilon, p.beta),
        entropy_lower_bound=h,
        failure_prob=failure_probability(p.epsilon_hat, p.beta),
    )


def pa_distance(h_min: float, ell: float, eps_smooth: float = 0.0) -> float:
    """Distance from uniform after hashing to ``ell`` bits.

    ``2**(-(h_min - ell) / 2) + 2 eps_smooth``; with ``eps_smooth = 0`` this
    is the unsmoothed leftover-hash bound.
    """
    if ell < 0:
        raise ValueError(f"output length must be >= 0, got {ell!r}")
    return 2.0 ** (-0.5 * (h_min - ell)) + 2.0 * eps_smooth


def extractable_length(h_min: float, eps_pa: float, eps_smooth: float = 0.0) -> float:
    """Output length reaching distance ``eps_pa``: ``h_min - 2 log2(1/(eps_pa - 2 eps'))``.

    May be negative, meaning nothing can be extracted. The difference
    ``eps_pa - 2 eps'`` is taken in floating point, so inputs whose
    difference is below the resolution of ``eps_pa`` lose accuracy.
    """
    slack = eps_pa - 2.0 * eps_smooth
    if slack <= 0.0:
        raise ValueError("eps_pa must exceed twice the smoothing parameter")
    return h_min - 2.0 * math.log2(1.0 / slack)
