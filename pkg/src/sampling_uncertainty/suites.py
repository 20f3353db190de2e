"""Randomized and exhaustive verification suites.

Each suite returns a :class:`SuiteResult` with the number of instances
checked, the number of violations, and the first violating instance in a
JSON-serializable form so that it can be replayed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .qsim import (
    ATOL,
    HADAMARD,
    ProjectiveMeasurement2,
    good_word_mask,
    ideal_state_check,
    lemma1_check,
    maassen_uffink_check,
    random_density_matrix,
    random_measurement,
    random_unitary,
)
from .sampling import EXACT_MAX_N, error_prob_bound, error_prob_exact

SUITE_NAMES = ("lemma2", "lemma1", "ideal", "mu")

DEFAULT_TRIALS = {"lemma2": None, "lemma1": 1000, "ideal": 1000, "mu": 100_000}

LEMMA2_DELTAS = tuple(round(0.05 * i, 2) for i in range(1, 11))


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: int = 0
    first_violation: dict[str, Any] | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, ok: bool, instance: Callable[[], dict[str, Any]]) -> None:
        self.checked += 1
        if not ok:
            self.violations += 1
            if self.first_violation is None:
                self.first_violation = instance()


def _cplx(a) -> list:
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def lemma2_suite(max_N: int = EXACT_MAX_N, deltas=LEMMA2_DELTAS) -> SuiteResult:
    """Exact error probability against the analytic bound, every ``k <= N/2``."""
    res = SuiteResult("lemma2")
    for N in range(2, max_N + 1):
        for k in range(1, N // 2 + 1):
            for delta in deltas:
                exact = error_prob_exact(N, k, delta)
                bound = error_prob_bound(N, k, delta)
                res.record(
                    exact <= bound,
                    lambda: {"N": N, "k": k, "delta": delta, "exact": exact, "bound": bound},
                )
    return res


def lemma1_suite(trials: int, rng=None, max_qubits: int = 6) -> SuiteResult:
    """Random superpositions on up to ``max_qubits`` qubits (dimension <= 64)."""
    rng = np.random.default_rng(rng)
    res = SuiteResult("lemma1")
    for _ in range(trials):
        s = int(rng.integers(1, max_qubits + 1))
        size = int(rng.integers(1, 2**s + 1))
        idx = rng.choice(2**s, size=size, replace=False)
        words = [[(int(i) >> (s - 1 - b)) & 1 for b in range(s)] for i in idx]
        alpha = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        alpha /= np.linalg.norm(alpha)
        basis = ProjectiveMeasurement2.from_unitary(random_unitary(2, rng))
        N = random_measurement(rng)
        env = "orthogonal" if rng.random() < 0.5 else "trivial"
        lhs, rhs = lemma1_check(alpha, words, N, basis=basis, environment=env)
        ok = lhs >= rhs - ATOL and (size > 1 or abs(lhs - rhs) <= ATOL)
        res.record(
            ok,
            lambda: {
                "environment": env,
                "words": words,
                "coeffs": _cplx(alpha),
                "basis": _cplx(basis.matrix),
                "N": _cplx(N.matrix),
                "lhs": lhs,
                "rhs": rhs,
            },
        )
    return res


def ideal_suite(trials: int, rng=None, max_qubits: int = 10, bound_offset: float = 0.0) -> SuiteResult:
    """Good-word states measured on their subset obey the with-certainty bound.

    A quarter of the instances pair the sampling basis with an unbiased second
    measurement and a third use ``delta = 0``, so that tight cases occur.
    """
    rng = np.random.default_rng(rng)
    res = SuiteResult("ideal")
    for _ in range(trials):
        s = int(rng.integers(2, max_qubits + 1))
        m = int(rng.integers(1, s // 2 + 1))
        tau = np.sort(rng.choice(s, size=m, replace=False))
        a = int(rng.integers(0, 2))
        delta = 0.0 if rng.random() < 1 / 3 else float(rng.uniform(0.0, 0.5))
        if not good_word_mask(s, tau, a, delta).any():
            continue
        U = random_unitary(2, rng)
        if rng.random() < 0.25:
            N = ProjectiveMeasurement2.from_unitary(U @ HADAMARD)
        else:
            N = random_measurement(rng)
        out = ideal_state_check(s, tau, a, delta, U, N, rng, bound_offset=bound_offset)
        res.record(
            out.holds,
            lambda: {
                "s": s,
                "tau": tau.tolist(),
                "a": a,
                "delta": delta,
                "U": _cplx(U),
                "N": _cplx(N.matrix),
                "outcome": out.record.outcome.tolist(),
                "measured": out.measured,
                "bound": out.bound,
            },
        )
    return res


def mu_suite(trials: int, rng=None) -> SuiteResult:
    """Random qubit states and measurement pairs; includes the tight Z/X case first."""
    rng = np.random.default_rng(rng)
    res = SuiteResult("mu")
    if trials <= 0:
        return res
    from .qsim import X_BASIS, Z_BASIS

    lhs, rhs = maassen_uffink_check(np.diag([1.0, 0.0]), Z_BASIS, X_BASIS)
    res.record(abs(lhs - rhs) <= ATOL and abs(lhs - 1.0) <= ATOL, lambda: {"case": "tight", "lhs": lhs, "rhs": rhs})
    for _ in range(trials - 1):
        rank = 1 if rng.random() < 0.5 else 2
        rho = random_density_matrix(2, rng, rank=rank)
        M = random_measurement(rng)
        N = random_measurement(rng)
        lhs, rhs = maassen_uffink_check(rho, M, N)
        res.record(
            lhs >= rhs - ATOL,
            lambda: {"rho": _cplx(rho), "M": _cplx(M.matrix), "N": _cplx(N.matrix), "lhs": lhs, "rhs": rhs},
        )
    return res


def run_suite(name: str, trials: int | None, seed: int, bound_offset: float = 0.0) -> SuiteResult:
    """Run one suite by name. ``trials=None`` uses the suite default."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}")
    rng = np.random.default_rng([seed, SUITE_NAMES.index(name)])
    n = DEFAULT_TRIALS[name] if trials is None else trials
    if name == "lemma2":
        return lemma2_suite() if n is None or n > 0 else SuiteResult(name)
    if name == "lemma1":
        return lemma1_suite(n, rng)
    if name == "ideal":
        return ideal_suite(n, rng, bound_offset=bound_offset)
    return mu_suite(n, rng)
