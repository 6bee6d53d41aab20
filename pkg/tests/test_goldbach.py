import math

import numpy as np
import pytest

import glab
from glab.sieve import LambdaTable

LOG2 = math.log(2)
LOG3 = math.log(3)


def test_g_direct_hand_values(lam2000):
    assert glab.g_direct(4, lam2000) == pytest.approx(LOG2**2, rel=1e-12)
    assert glab.g_direct(5, lam2000) == pytest.approx(2 * LOG2 * LOG3, rel=1e-12)
    assert glab.g_direct(3, lam2000) == 0.0
    assert glab.g_direct(4, lam2000) == pytest.approx(0.480453, abs=1e-6)
    assert glab.g_direct(5, lam2000) == pytest.approx(1.523000, abs=1e-6)


def test_g_direct_range(lam2000):
    with pytest.raises(glab.RangeError):
        glab.g_direct(1, lam2000)
    with pytest.raises(glab.RangeError):
        glab.g_direct(2002, lam2000)
    assert glab.g_direct(2001, lam2000) > 0


def test_g_table_small_values():
    t = glab.build_lambda(6)
    gt = glab.g_table_fft(t)
    expected = [0.0, 0.0, LOG2**2, 2 * LOG2 * LOG3, 2 * LOG2**2 + LOG3**2]
    assert np.allclose(gt.g[2:7], expected, atol=1e-12)
    assert gt.g[2] == 0.0 and gt.g[3] == 0.0


def test_g_table_all_zero_coefficients():
    synthetic = LambdaTable(8, np.zeros(9))
    gt = glab.g_table_fft(synthetic)
    assert np.all(gt.g == 0.0)
    assert np.all(gt.gprefix == 0.0)


def test_g_table_capacity():
    with pytest.raises(glab.CapacityError):
        glab.g_table_fft(glab.build_lambda(1000), fft_cap=1024)


def test_oracle_equivalence_sweep(lam2000):
    """Fast path vs direct oracle on a stride through the unrestricted range."""
    gt = glab.g_table_fft(lam2000)
    for n in range(2, 2002, 7):
        direct = glab.g_direct(n, lam2000)
        assert abs(gt.g[n] - direct) <= 1e-9 * (1 + direct)


def test_g_partial_sum(gt2000):
    assert glab.g_partial_sum(6.5, gt2000) == pytest.approx(4.171308, abs=1e-6)
    assert glab.g_partial_sum(3.9, gt2000) == 0.0
    assert glab.g_partial_sum(2.0, gt2000) == 0.0
    with pytest.raises(glab.RangeError):
        glab.g_partial_sum(2002.5, gt2000)


def test_gprefix_nondecreasing_and_consistent(gt2000):
    assert np.all(np.diff(gt2000.gprefix) >= 0)
    diffs = gt2000.gprefix[1:] - gt2000.gprefix[:-1]
    assert np.all(np.abs(diffs - gt2000.g[1:]) <= 1e-9 * (1 + gt2000.gprefix[1:]))


def test_parity_structure(gt10k):
    """Odd n contribute only through powers of two, so their mean is small."""
    n = np.arange(1000, 10_001)
    vals = gt10k.g[n]
    odd_mean = vals[n % 2 == 1].mean()
    even_mean = vals[n % 2 == 0].mean()
    assert odd_mean < 0.1 * even_mean


def test_max_g_scan_basic(gt2000):
    n_star, g_star, density = glab.max_g_scan(2, 5, gt2000)
    assert n_star == 5
    assert g_star == pytest.approx(1.523000, abs=1e-6)
    assert density == pytest.approx(g_star / 5)


def test_max_g_scan_tie_prefers_smaller(gt2000):
    assert glab.max_g_scan(2, 3, gt2000) == (2, 0.0, 0.0)


def test_max_g_scan_modulus(gt2000):
    n_star, g_star, _ = glab.max_g_scan(2, 2000, gt2000, modulus=210)
    assert n_star % 210 == 0
    with pytest.raises(glab.DomainError):
        glab.max_g_scan(2, 100, gt2000, modulus=300)
    with pytest.raises(glab.RangeError):
        glab.max_g_scan(2, 4001, gt2000)
    with pytest.raises(glab.DomainError):
        glab.max_g_scan(2, 100, gt2000, modulus=0)


def test_unrestricted_matches_direct_at_modulus_argmax(lam2000, gt2000):
    n_star, g_star, _ = glab.max_g_scan(2, 2001, gt2000, modulus=210)
    assert g_star == pytest.approx(glab.g_direct(n_star, lam2000), rel=1e-9)
