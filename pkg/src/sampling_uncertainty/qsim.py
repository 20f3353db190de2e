"""Dense state-vector simulator for a handful of qubits.

States on ``s`` qubits are complex vectors of length ``2**s`` (or ``2**s``
square density matrices). Qubit 0 is the leftmost tensor factor, so basis
index ``i`` corresponds to the big-endian bit string of ``i``. Measurement
outcomes over a subset of qubits are big-endian over the measured indices in
ascending order.

Besides the plumbing (product bases, subset measurement, Born
distributions), this module carries the numerical checks of the sampling
based uncertainty relation on explicitly constructed states:

* :func:`lemma1_check` -- min-entropy of a superposition versus the
  matching mixture, less ``log2 |J|``;
* :func:`ideal_state_check` -- a state supported on the good words of a
  subset, measured on that subset, obeys the with-certainty bound
  ``-n log2 c - n Hbar(w + delta)`` on the remainder;
* :func:`maassen_uffink_check` -- ``H(M) + H(N) >= -log2 c`` for a qubit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .entropy import extended_binary_entropy, min_entropy_classical, shannon_entropy
from .linalg import hermitian_eigvalsh
from .sampling import GAP_TOL, _as_subset

#: Desk-scale qubit cap; the full outcome distribution is materialized.
MAX_QUBITS = 14

ATOL = 1e-9


def _check_unitary(U) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {U.shape}")
    if np.max(np.abs(U.conj().T @ U - np.eye(2))) > ATOL:
        raise ValueError("matrix is not unitary")
    return U


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement2:
    """Qubit projective measurement given by an orthonormal pair of vectors."""

    vec0: np.ndarray
    vec1: np.ndarray
    #: Unitary whose columns are the basis vectors.
    matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v0 = np.asarray(self.vec0, dtype=complex).reshape(2)
        v1 = np.asarray(self.vec1, dtype=complex).reshape(2)
        mat = np.column_stack([v0, v1])
        if np.max(np.abs(mat.conj().T @ mat - np.eye(2))) > ATOL:
            raise ValueError("measurement vectors must be orthonormal")
        mat.setflags(write=False)
        object.__setattr__(self, "vec0", v0)
        object.__setattr__(self, "vec1", v1)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_unitary(cls, U) -> "ProjectiveMeasurement2":
        U = _check_unitary(U)
        return cls(U[:, 0], U[:, 1])

    @classmethod
    def from_angle(cls, theta: float, phase: float = 0.0) -> "ProjectiveMeasurement2":
        """Basis ``cos t|0> + e^{i phi} sin t|1>`` and its orthogonal partner."""
        c, s = math.cos(theta), math.sin(theta)
        e = complex(math.cos(phase), math.sin(phase))
        return cls(np.array([c, e * s]), np.array([-e.conjugate() * s, c]))


Z_BASIS = ProjectiveMeasurement2(np.array([1, 0]), np.array([0, 1]))
X_BASIS = ProjectiveMeasurement2(np.array([1, 1]) / math.sqrt(2), np.array([1, -1]) / math.sqrt(2))
HADAMARD = X_BASIS.matrix


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    subset: np.ndarray
    outcome: np.ndarray
    post_state: np.ndarray
    probability: float


# -- random objects -----------------------------------------------------------

def random_unitary(dim: int = 2, rng=None) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_measurement(rng=None) -> ProjectiveMeasurement2:
    """Haar-random qubit basis: a uniform unit vector and its orthogonal partner."""
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    v /= np.linalg.norm(v)
    return ProjectiveMeasurement2(v, np.array([-v[1].conjugate(), v[0].conjugate()]))


def random_density_matrix(dim: int = 2, rng=None, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^dag / tr`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    rng = np.random.default_rng(rng)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def check_density(rho) -> np.ndarray:
    """Validate a density matrix (Hermitian, unit trace, PSD within 1e-9)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > ATOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1) > ATOL:
        raise ValueError("density matrix does not have unit trace")
    if hermitian_eigvalsh(rho)[0] < -ATOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


# -- state plumbing -----------------------------------------------------------

def _n_qubits(dim: int) -> int:
    s = dim.bit_length() - 1
    if dim < 2 or 1 << s != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if s > MAX_QUBITS:
        raise ValueError(f"{s} qubits exceeds the cap of {MAX_QUBITS}")
    return s


def _check_pure(state) -> tuple[np.ndarray, int]:
    psi = np.asarray(state, dtype=complex).ravel()
    s = _n_qubits(psi.size)
    if abs(np.linalg.norm(psi) - 1) > ATOL:
        raise ValueError("state vector is not normalized")
    return psi, s


def _apply_local(tensor: np.ndarray, op: np.ndarray, axes) -> np.ndarray:
    for ax in axes:
        tensor = np.moveaxis(np.tensordot(op, tensor, axes=([1], [ax])), 0, ax)
    return tensor


def all_words(s: int) -> np.ndarray:
    """All ``2**s`` bit strings as rows, in big-endian index order."""
    idx = np.arange(2**s)
    return ((idx[:, None] >> np.arange(s - 1, -1, -1)) & 1).astype(np.int8)


def product_basis_state(U, word) -> np.ndarray:
    """``U|b_1> (x) ... (x) U|b_s>`` for a bit string ``word``."""
    U = _check_unitary(U)
    bits = [int(b) for b in (word if not isinstance(word, str) else list(word))]
    if not bits or len(bits) > MAX_QUBITS:
        raise ValueError(f"word length must be 1..{MAX_QUBITS}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("word must be binary")
    return reduce(np.kron, (U[:, b] for b in bits))


def apply_product(state, U) -> np.ndarray:
    """Apply ``U`` to every qubit of a pure state."""
    psi = np.asarray(state, dtype=complex).ravel()
    s = _n_qubits(psi.size)
    U = _check_unitary(U)
    return _apply_local(psi.reshape((2,) * s), U, range(s)).reshape(-1)


def measure_subset(state, tau, M: ProjectiveMeasurement2, rng=None) -> MeasurementRecord:
    """Measure the qubits in ``tau`` with ``M`` and collapse.

    The outcome is drawn with its Born probability; the returned post state
    lives on the unmeasured qubits, kept in ascending order.
    """
    psi, s = _check_pure(state)
    idx = _as_subset(tau, s)
    k = idx.size
    if not 1 <= k < s:
        raise ValueError("must measure a nonempty proper subset of the qubits")
    rng = np.random.default_rng(rng)
    t = _apply_local(psi.reshape((2,) * s), M.matrix.conj().T, idx)
    rest = [i for i in range(s) if i not in set(idx.tolist())]
    t = np.transpose(t, list(idx) + rest).reshape(2**k, 2 ** (s - k))
    probs = np.sum(np.abs(t) ** 2, axis=1)
    probs = probs / probs.sum()
    r = int(rng.choice(2**k, p=probs))
    post = t[r] / math.sqrt(probs[r])
    outcome = ((r >> np.arange(k - 1, -1, -1)) & 1).astype(np.int8)
    return MeasurementRecord(idx, outcome, post, float(probs[r]))


def outcome_distribution(state, N: ProjectiveMeasurement2) -> np.ndarray:
    """Born distribution of measuring every qubit with ``N``.

    Accepts a state vector or a density matrix; entry ``j`` is the probability
    of the big-endian outcome string of ``j``.
    """
    arr = np.asarray(state, dtype=complex)
    Vh = N.matrix.conj().T
    if arr.ndim == 1 or 1 in arr.shape:
        psi, s = _check_pure(arr)
        amp = _apply_local(psi.reshape((2,) * s), Vh, range(s)).reshape(-1)
        p = np.abs(amp) ** 2
    else:
        rho = np.asarray(arr)
        s = _n_qubits(rho.shape[0])
        if rho.shape != (2**s, 2**s):
            raise ValueError("density matrix must be square")
        t = rho.reshape((2,) * (2 * s))
        t = _apply_local(t, Vh, range(s))
        t = _apply_local(t, Vh.conj(), range(s, 2 * s))
        p = np.diagonal(t.reshape(2**s, 2**s)).real
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1) > ATOL:
        raise ValueError(f"outcome distribution sums to {total!r}; state not normalized")
    return p / total


def min_entropy_of_measurement(state, N: ProjectiveMeasurement2) -> float:
    """``-log2 max_j p(j)`` for measuring every qubit of ``state`` with ``N``."""
    return min_entropy_classical(outcome_distribution(state, N))


def overlap_c(M: ProjectiveMeasurement2, N: ProjectiveMeasurement2) -> float:
    """Largest squared overlap ``max_{x,y} |<mu_x|nu_y>|^2``."""
    return float(np.max(np.abs(M.matrix.conj().T @ N.matrix) ** 2))


def conditional_outcome_probs(M: ProjectiveMeasurement2, N: ProjectiveMeasurement2, word) -> np.ndarray:
    """``p(j|i) = prod_l |<nu_{j_l}|mu_{i_l}>|^2`` over all ``j``, for input word ``i``."""
    O = np.abs(N.matrix.conj().T @ M.matrix) ** 2  # O[y, x] = |<nu_y|mu_x>|^2
    return reduce(np.kron, (O[:, int(b)] for b in word))


# -- good-word supports -------------------------------------------------------

def good_word_mask(s: int, tau, a: int, delta: float) -> np.ndarray:
    """Boolean mask over ``all_words(s)`` of words whose ``tau``-sample is ``delta``-accurate."""
    idx = _as_subset(tau, s)
    if not 1 <= idx.size < s:
        raise ValueError("tau must be a nonempty proper subset")
    words = all_words(s)
    off = words != a
    mask = np.zeros(s, dtype=bool)
    mask[idx] = True
    est = off[:, mask].mean(axis=1)
    rem = off[:, ~mask].mean(axis=1)
    return np.abs(est - rem) <= delta + GAP_TOL


def random_span_B_state(s: int, tau, a: int, delta: float, U, rng=None) -> np.ndarray:
    """Random pure state supported on ``{U^(x)s |q> : q good for tau}``.

    Coefficients on the good words are independent standard complex Gaussians,
    normalized.
    """
    if not 1 <= s <= MAX_QUBITS:
        raise ValueError(f"qubit count must be 1..{MAX_QUBITS}")
    U = _check_unitary(U)
    mask = good_word_mask(s, tau, a, delta)
    if not mask.any():
        raise ValueError("no good words for this subset and delta")
    rng = np.random.default_rng(rng)
    coeffs = np.zeros(2**s, dtype=complex)
    m = int(mask.sum())
    coeffs[mask] = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    coeffs /= np.linalg.norm(coeffs)
    return apply_product(coeffs, U)


# -- checks -------------------------------------------------------------------

def lemma1_check(
    coeffs,
    basis_words,
    N: ProjectiveMeasurement2,
    basis: ProjectiveMeasurement2 = Z_BASIS,
    environment: str = "trivial",
) -> tuple[float, float]:
    """Superposition versus mixture min-entropy, ``(lhs, rhs)``.

    The superposition is ``sum_i alpha_i |i>`` with ``|i>`` the product basis
    state of ``basis`` labelled by ``basis_words[i]``; the mixture puts weight
    ``|alpha_i|^2`` on each ``|i>``. The expected relation is
    ``lhs >= rhs``, with equality for a single term.

    ``environment="trivial"``
        ``lhs`` is the min-entropy of measuring the superposition with ``N``;
        ``rhs`` is the mixture's min-entropy, from the product formula, minus
        ``log2 |J|``.
    ``environment="orthogonal"``
        Each term carries an orthonormal environment state ``|phi_i>``. The
        mixture is classical on the environment, so ``rhs`` uses the guessing
        probability ``sum_i |alpha_i|^2 max_j p(j|i)``. ``lhs`` is the
        certified lower bound ``H_min(N)`` of the reduced state minus
        ``log2 dim(E)``, with ``dim(E) = |J|``.
    """
    words = [tuple(int(b) for b in w) for w in basis_words]
    if len(set(words)) != len(words):
        raise ValueError("basis words must be distinct")
    if not words or len({len(w) for w in words}) != 1:
        raise ValueError("basis words must be nonempty and of equal length")
    alpha = np.asarray(coeffs, dtype=complex).ravel()
    if alpha.size != len(words):
        raise ValueError("one coefficient per basis word is required")
    if abs(np.linalg.norm(alpha) - 1) > ATOL:
        raise ValueError("coefficients must be normalized")
    weights = np.abs(alpha) ** 2
    log_j = math.log2(len(words))
    cond = np.array([conditional_outcome_probs(basis, N, w) for w in words])

    if environment == "trivial":
        psi = sum(a * product_basis_state(basis.matrix, w) for a, w in zip(alpha, words))
        lhs = min_entropy_of_measurement(psi, N)
        rhs = min_entropy_classical(weights @ cond) - log_j
    elif environment == "orthogonal":
        dim = 2 ** len(words[0])
        rho_a = np.zeros((dim, dim), dtype=complex)
        for wt, w in zip(weights, words):
            v = product_basis_state(basis.matrix, w)
            rho_a += wt * np.outer(v, v.conj())
        lhs = min_entropy_of_measurement(rho_a, N) - log_j
        rhs = -math.log2(float(weights @ cond.max(axis=1))) - log_j
    else:
        raise ValueError(f"unknown environment {environment!r}")
    return lhs, rhs


@dataclass(frozen=True, eq=False)
class IdealStateOutcome:
    record: MeasurementRecord
    n: int
    w_obs: float
    c: float
    measured: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.measured >= self.bound - ATOL


def ideal_state_check(
    s: int, tau, a: int, delta: float, U, N: ProjectiveMeasurement2, rng=None, bound_offset: float = 0.0
) -> IdealStateOutcome:
    """Draw a good-word state, sample ``tau`` in the ``U`` basis, test the bound.

    The remainder of ``n = s - |tau|`` qubits is measured with ``N``; its
    min-entropy is compared against ``-n log2 c - n Hbar(w_a(q) + delta)``.
    ``bound_offset`` is added to the bound (a hook for detector tests).
    """
    rng = np.random.default_rng(rng)
    psi = random_span_B_state(s, tau, a, delta, U, rng)
    M = ProjectiveMeasurement2.from_unitary(U)
    record = measure_subset(psi, tau, M, rng)
    n = s - record.subset.size
    w_obs = float(np.count_nonzero(record.outcome != a)) / record.outcome.size
    c = overlap_c(M, N)
    bound = -n * math.log2(c) - n * extended_binary_entropy(w_obs + delta) + bound_offset
    measured = min_entropy_of_measurement(record.post_state, N)
    return IdealStateOutcome(record, n, w_obs, c, measured, bound)


def trace_distance(rho, sigma) -> float:
    """``(1/2) sum |eig(rho - sigma)|`` via Jacobi eigenvalues."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    check_density(rho)
    check_density(sigma)
    return 0.5 * float(np.sum(np.abs(hermitian_eigvalsh(rho - sigma))))


def maassen_uffink_check(rho, M: ProjectiveMeasurement2, N: ProjectiveMeasurement2) -> tuple[float, float]:
    """``(H(M) + H(N), -log2 c)`` for a single-qubit density matrix."""
    rho = check_density(rho)
    if rho.shape != (2, 2):
        raise ValueError("expected a single-qubit density matrix")
    p_m = np.clip(np.real(np.diagonal(M.matrix.conj().T @ rho @ M.matrix)), 0.0, None)
    p_n = np.clip(np.real(np.diagonal(N.matrix.conj().T @ rho @ N.matrix)), 0.0, None)
    lhs = shannon_entropy(p_m / p_m.sum()) + shannon_entropy(p_n / p_n.sum())
    return lhs, -math.log2(overlap_c(M, N))
