import logging
import math

import numpy as np
import pytest

from sampling_uncertainty.entropy import extended_binary_entropy
from sampling_uncertainty.qrng import (
    QrngParams,
    asymptotic_rate,
    epsilon_pa,
    qrng_length,
    rate_curve,
    rate_point,
    split_sample,
)

OP = dict(epsilon=1e-36, beta=0.33, w_obs=0.2)


def test_split_sample():
    assert split_sample(10**6, 0.07) == (934579, 65421)
    n, m = split_sample(1000, 0.07)
    assert n + m == 1000 and abs(m - 0.07 * n) <= 1
    with pytest.raises(ValueError):
        split_sample(100, 0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        QrngParams(1000, **OP)
    with pytest.raises(ValueError):
        QrngParams(1000, **OP, m=10, m_fraction=0.07)
    with pytest.raises(ValueError):
        QrngParams(1000, **OP, m=600)
    with pytest.raises(ValueError):
        QrngParams(1000, **{**OP, "beta": 0.5}, m=10)
    with pytest.raises(ValueError):
        QrngParams(1000, **OP, m=10, length_formula="other")


def test_operating_point_frozen():
    # mpmath oracle, 50 digits
    p = QrngParams(10**6, **OP, m_fraction=0.07)
    pt = rate_point(p)
    assert (pt.n, pt.m) == (934579, 65421)
    assert pt.delta == pytest.approx(0.050445441997706208, rel=1e-12)
    assert pt.ell == pytest.approx(-172992.46599752351, rel=1e-9)
    assert pt.rate == 0.0 and pt.vacuous
    assert pt.eps_pa == pytest.approx(5.2730269542256284e-12, rel=1e-12)
    assert pt.failure_prob == pytest.approx(5.7543993733715693e-13, rel=1e-12)


def test_epsilon_pa_components():
    assert epsilon_pa(1e-6, 0.25) == pytest.approx(5e-6 + 4 * 10**-1.5, rel=1e-12)
    with pytest.raises(ValueError):
        epsilon_pa(0.0, 0.3)


def test_two_log_penalty_difference():
    for N in (10**3, 10**4, 10**5, 10**6):
        a = qrng_length(QrngParams(N, **OP, m_fraction=0.07))
        b = qrng_length(QrngParams(N, **OP, m_fraction=0.07, length_formula="two_log"))
        assert a - b == pytest.approx(-math.log2(1e-36), rel=1e-9)


def test_length_below_rate_ceiling():
    for N in np.geomspace(1e3, 1e7, 15).astype(int):
        pt = rate_point(QrngParams(int(N), **OP, m_fraction=0.07))
        assert pt.ell / pt.N_total <= pt.n / pt.N_total * (1 - extended_binary_entropy(0.2 + pt.delta))
        assert pt.rate <= asymptotic_rate(0.2)


def test_length_monotone_in_w_and_epsilon():
    ells = [qrng_length(QrngParams(10**5, epsilon=1e-10, beta=0.3, w_obs=float(w), m=1000)) for w in np.linspace(0, 0.5, 26)]
    assert np.all(np.diff(ells) <= 1e-9)
    ells = [qrng_length(QrngParams(10**5, epsilon=float(e), beta=0.3, w_obs=0.05, m=1000)) for e in np.logspace(-40, -2, 20)]
    assert np.all(np.diff(ells) > 0)


def test_positive_length_regime_exists():
    # a small test fraction and low noise certify output bits
    pt = rate_point(QrngParams(10**6, epsilon=1e-10, beta=0.3, w_obs=0.01, m=20_000))
    assert pt.ell > 0 and 0 < pt.rate < asymptotic_rate(0.01)


def test_asymptotic_rate():
    assert asymptotic_rate(0.2) == pytest.approx(0.27807190511263765, abs=1e-12)
    assert asymptotic_rate(0.0) == 1.0
    assert asymptotic_rate(0.7) == 0.0
    with pytest.raises(ValueError):
        asymptotic_rate(-0.1)


def test_rate_curve_raw_ratio_increases():
    pts = rate_curve(np.geomspace(1e3, 1e6, 31).astype(int), 0.07, **OP)
    rates = [p.rate for p in pts]
    raw = [p.ell / p.N_total for p in pts]
    assert np.all(np.diff(rates) >= 0)
    assert np.all(np.diff(raw) > 0)


def test_rate_curve_infeasible_rows(caplog):
    with caplog.at_level(logging.WARNING):
        skipped = rate_curve([5, 1000], 0.07, **OP)
        kept = rate_curve([5, 1000], 0.07, **OP, skip_infeasible=False)
    assert [p.N_total for p in skipped] == [1000]
    assert len(kept) == 2 and not kept[0].feasible and kept[0].vacuous and math.isnan(kept[0].ell)
    assert "skipping N=5" in caplog.text
