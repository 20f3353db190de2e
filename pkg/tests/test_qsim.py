import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sampling_uncertainty.qsim import (
    HADAMARD,
    MAX_QUBITS,
    X_BASIS,
    Z_BASIS,
    ProjectiveMeasurement2,
    all_words,
    apply_product,
    check_density,
    conditional_outcome_probs,
    good_word_mask,
    ideal_state_check,
    lemma1_check,
    maassen_uffink_check,
    measure_subset,
    min_entropy_of_measurement,
    outcome_distribution,
    overlap_c,
    product_basis_state,
    random_density_matrix,
    random_measurement,
    random_span_B_state,
    random_unitary,
    trace_distance,
)
from sampling_uncertainty.sampling import is_good_word

BELL = np.array([1, 0, 0, 1]) / math.sqrt(2)


def test_measurement_validation():
    with pytest.raises(ValueError):
        ProjectiveMeasurement2(np.array([1, 0]), np.array([1, 0]))
    with pytest.raises(ValueError):
        ProjectiveMeasurement2.from_unitary(np.ones((2, 2)))
    M = ProjectiveMeasurement2.from_angle(0.3, 1.1)
    np.testing.assert_allclose(M.matrix.conj().T @ M.matrix, np.eye(2), atol=1e-15)
    assert not M.matrix.flags.writeable


@pytest.mark.parametrize(
    "M, N, c",
    [
        (Z_BASIS, Z_BASIS, 1.0),
        (Z_BASIS, X_BASIS, 0.5),
        # cos^2(pi/8), mpmath
        (Z_BASIS, ProjectiveMeasurement2.from_angle(math.pi / 8), 0.85355339059327376),
    ],
)
def test_overlap_c(M, N, c):
    assert overlap_c(M, N) == pytest.approx(c, abs=1e-12)


def test_overlap_c_range():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        c = overlap_c(random_measurement(rng), random_measurement(rng))
        assert 0.5 - 1e-12 <= c <= 1 + 1e-12


def test_all_words_big_endian():
    assert all_words(2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


def test_product_basis_state_ordering():
    e01 = product_basis_state(np.eye(2), "01")
    assert np.argmax(np.abs(e01)) == 1
    plus_zero = product_basis_state(HADAMARD, [0, 0])
    np.testing.assert_allclose(plus_zero, np.full(4, 0.5), atol=1e-15)
    with pytest.raises(ValueError):
        product_basis_state(np.eye(2), "0" * (MAX_QUBITS + 1))


def test_qubit_cap():
    with pytest.raises(ValueError):
        outcome_distribution(np.ones(2 ** (MAX_QUBITS + 1)) / 2 ** ((MAX_QUBITS + 1) / 2), Z_BASIS)
    with pytest.raises(ValueError):
        outcome_distribution(np.ones(3) / math.sqrt(3), Z_BASIS)


def test_bell_state():
    assert outcome_distribution(BELL, Z_BASIS).tolist() == pytest.approx([0.5, 0, 0, 0.5], abs=1e-15)
    assert outcome_distribution(BELL, X_BASIS).tolist() == pytest.approx([0.5, 0, 0, 0.5], abs=1e-15)
    assert min_entropy_of_measurement(BELL, Z_BASIS) == pytest.approx(1.0, abs=1e-12)
    for seed in range(20):
        rec = measure_subset(BELL, [0], Z_BASIS, seed)
        assert rec.probability == pytest.approx(0.5)
        np.testing.assert_allclose(np.abs(rec.post_state), np.eye(2)[rec.outcome[0]], atol=1e-12)


def test_outcome_distribution_pure_matches_density():
    rng = np.random.default_rng(1)
    for s in (1, 2, 3, 5):
        psi = rng.standard_normal(2**s) + 1j * rng.standard_normal(2**s)
        psi /= np.linalg.norm(psi)
        N = random_measurement(rng)
        np.testing.assert_allclose(
            outcome_distribution(psi, N), outcome_distribution(np.outer(psi, psi.conj()), N), atol=1e-12
        )


def test_outcome_distribution_against_kron_oracle():
    rng = np.random.default_rng(2)
    s = 3
    psi = rng.standard_normal(2**s) + 1j * rng.standard_normal(2**s)
    psi /= np.linalg.norm(psi)
    N = random_measurement(rng)
    full = N.matrix
    for _ in range(s - 1):
        full = np.kron(full, N.matrix)
    np.testing.assert_allclose(outcome_distribution(psi, N), np.abs(full.conj().T @ psi) ** 2, atol=1e-12)


def test_unnormalized_state_rejected():
    with pytest.raises(ValueError):
        outcome_distribution(np.array([1.0, 1.0]), Z_BASIS)


def test_born_frequencies():
    rng = np.random.default_rng(3)
    psi = np.array([math.sqrt(0.1), 0, math.sqrt(0.3), math.sqrt(0.6)], dtype=complex)
    draws = 20_000
    counts = np.zeros(2)
    for _ in range(draws):
        counts[measure_subset(psi, [0], Z_BASIS, rng).outcome[0]] += 1
    freq = counts / draws
    sigma = math.sqrt(0.1 * 0.9 / draws)
    assert abs(freq[0] - 0.1) <= 4 * sigma


def test_measure_subset_post_state_oracle():
    rng = np.random.default_rng(4)
    s = 4
    psi = rng.standard_normal(2**s) + 1j * rng.standard_normal(2**s)
    psi /= np.linalg.norm(psi)
    M = random_measurement(rng)
    rec = measure_subset(psi, [3, 1], M, rng)
    assert rec.subset.tolist() == [1, 3]
    # projector oracle with explicit Kronecker products, qubits 0 and 2 remain
    proj = [np.eye(2)] * s
    proj[1] = np.outer(M.matrix[:, rec.outcome[0]], M.matrix[:, rec.outcome[0]].conj())
    proj[3] = np.outer(M.matrix[:, rec.outcome[1]], M.matrix[:, rec.outcome[1]].conj())
    P = proj[0]
    for op in proj[1:]:
        P = np.kron(P, op)
    collapsed = P @ psi
    assert rec.probability == pytest.approx(np.vdot(collapsed, collapsed).real, abs=1e-12)
    t = collapsed.reshape((2,) * s)
    bra1 = M.matrix[:, rec.outcome[0]].conj()
    bra3 = M.matrix[:, rec.outcome[1]].conj()
    reduced = np.einsum("abcd,b,d->ac", t, bra1, bra3).reshape(-1) / math.sqrt(rec.probability)
    assert abs(abs(np.vdot(reduced, rec.post_state)) - 1) < 1e-10


def test_measure_subset_errors():
    with pytest.raises(ValueError):
        measure_subset(BELL, [0, 1], Z_BASIS, 0)
    with pytest.raises(ValueError):
        measure_subset(BELL, [2], Z_BASIS, 0)


def test_conditional_probs_product_formula():
    rng = np.random.default_rng(5)
    for _ in range(20):
        M, N = random_measurement(rng), random_measurement(rng)
        word = rng.integers(0, 2, size=3)
        direct = outcome_distribution(product_basis_state(M.matrix, word), N)
        np.testing.assert_allclose(conditional_outcome_probs(M, N, word), direct, atol=1e-12)
        assert np.max(conditional_outcome_probs(M, N, word)) <= overlap_c(M, N) ** 3 + 1e-12


def test_span_B_state_support():
    rng = np.random.default_rng(6)
    for _ in range(50):
        s = int(rng.integers(2, 8))
        tau = np.sort(rng.choice(s, size=int(rng.integers(1, s)), replace=False))
        delta = float(rng.uniform(0, 0.5))
        if not good_word_mask(s, tau, 0, delta).any():
            continue
        U = random_unitary(2, rng)
        psi = random_span_B_state(s, tau, 0, delta, U, rng)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
        coeffs = apply_product(psi, U.conj().T)
        for word, amp in zip(all_words(s), coeffs):
            if abs(amp) > 1e-10:
                assert is_good_word(word, tau, 0, delta)


def test_good_word_mask_matches_is_good_word():
    words = all_words(5)
    mask = good_word_mask(5, [0, 3], 1, 0.2)
    assert mask.tolist() == [is_good_word(w, [0, 3], 1, 0.2) for w in words]


def test_ideal_state_example_z_x():
    # |00> sampled on qubit 0 in Z, remainder measured in X: one fully random bit
    out = ideal_state_check(2, [0], 0, 0.0, np.eye(2), X_BASIS, rng=0)
    assert out.w_obs == 0.0 and out.c == pytest.approx(0.5)
    assert out.bound == pytest.approx(1.0)
    assert out.measured == pytest.approx(1.0, abs=1e-12)
    assert out.holds


def test_ideal_state_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(200):
        s = int(rng.integers(2, 9))
        tau = np.sort(rng.choice(s, size=int(rng.integers(1, s // 2 + 1)), replace=False))
        delta = float(rng.uniform(0, 0.5))
        if not good_word_mask(s, tau, 0, delta).any():
            continue
        assert ideal_state_check(s, tau, 0, delta, random_unitary(2, rng), random_measurement(rng), rng).holds


def test_lemma1_single_term_equality():
    rng = np.random.default_rng(8)
    for env in ("trivial", "orthogonal"):
        lhs, rhs = lemma1_check([1.0], ["010"], random_measurement(rng), environment=env)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_lemma1_plus_state_example():
    # (|0> + |1>)/sqrt2 measured in X: deterministic, lhs 0; mixture side 1 - 1 = 0
    lhs, rhs = lemma1_check(np.array([1, 1]) / math.sqrt(2), ["0", "1"], X_BASIS)
    assert lhs == pytest.approx(0.0, abs=1e-12)
    assert rhs == pytest.approx(0.0, abs=1e-12)


def test_lemma1_random():
    rng = np.random.default_rng(9)
    for _ in range(200):
        s = int(rng.integers(1, 5))
        size = int(rng.integers(1, 2**s + 1))
        idx = rng.choice(2**s, size=size, replace=False)
        words = [all_words(s)[i] for i in idx]
        alpha = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        alpha /= np.linalg.norm(alpha)
        for env in ("trivial", "orthogonal"):
            lhs, rhs = lemma1_check(alpha, words, random_measurement(rng), environment=env)
            assert lhs >= rhs - 1e-9


def test_lemma1_errors():
    with pytest.raises(ValueError):
        lemma1_check([1, 0], ["0", "0"], X_BASIS)
    with pytest.raises(ValueError):
        lemma1_check([1.0], ["0"], X_BASIS, environment="other")
    with pytest.raises(ValueError):
        lemma1_check([1.0, 1.0], ["0", "1"], X_BASIS)


def test_trace_distance_examples():
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(zero, np.eye(2) / 2) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        trace_distance(zero, np.eye(4) / 4)


def test_trace_distance_is_metric():
    rng = np.random.default_rng(10)
    for _ in range(100):
        r, s, t = (random_density_matrix(4, rng, rank=int(rng.integers(1, 5))) for _ in range(3))
        d_rs = trace_distance(r, s)
        assert 0 <= d_rs <= 1 + 1e-12
        assert d_rs == pytest.approx(trace_distance(s, r), abs=1e-12)
        assert d_rs <= trace_distance(r, t) + trace_distance(t, s) + 1e-12


def test_check_density_rejects():
    with pytest.raises(ValueError):
        check_density(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        check_density(np.diag([0.5, 0.4]))
    with pytest.raises(ValueError):
        check_density(np.array([[0.5, 0.1], [0.2, 0.5]]))


def test_maassen_uffink_tight_case():
    lhs, rhs = maassen_uffink_check(np.diag([1.0, 0.0]), Z_BASIS, X_BASIS)
    assert lhs == pytest.approx(1.0, abs=1e-12) and rhs == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2]))
def test_maassen_uffink_property(seed, rank):
    rng = np.random.default_rng(seed)
    lhs, rhs = maassen_uffink_check(random_density_matrix(2, rng, rank), random_measurement(rng), random_measurement(rng))
    assert lhs >= rhs - 1e-9
