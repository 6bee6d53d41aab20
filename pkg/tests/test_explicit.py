import cmath
import math

import numpy as np
import pytest

import glab

# Single-zero value of the folded H sum at x=100, T=15, frozen from a
# 40-digit complex-arithmetic evaluation of -2 sum over rho = 1/2 +- i*gamma_1.
H_SINGLE_TERM_X100 = -14.699207526264589


def _h_complex_two_sided(x, gammas):
    """Direct two-sided complex sum, the pairing-identity oracle."""
    total = 0j
    for g in gammas:
        for rho in (complex(0.5, g), complex(0.5, -g)):
            total += x ** (1 + rho) / (rho * (1 + rho))
    return -2 * total


def test_h_below_first_zero(builtin):
    r = glab.h_term(50.0, builtin, 10.0)
    assert r.value == 0.0
    assert r.terms_used == 0
    assert math.isfinite(r.tail_estimate)


def test_h_single_zero_pinned(builtin):
    r = glab.h_term(100.0, builtin, 15.0)
    assert r.terms_used == 1
    assert r.value == pytest.approx(H_SINGLE_TERM_X100, rel=1e-9)


def test_h_pairing_identity(builtin):
    for x in (7.5, 100.5, 5000.5):
        r = glab.h_term(x, builtin, 100.0)
        direct = _h_complex_two_sided(x, builtin.gammas[builtin.gammas <= 100.0])
        assert abs(direct.imag) < 1e-9 * abs(direct.real)
        assert r.value == pytest.approx(direct.real, rel=1e-9)


def test_h_ascending_vs_descending(builtin):
    r = glab.h_term(1000.5, builtin, float(builtin.gammas[-1]))
    gammas = builtin.gammas[::-1].copy()
    rho = 0.5 + 1j * gammas
    terms = (np.exp(1j * (gammas * math.log(1000.5))) / (rho * (1 + rho))).real
    descending = -4.0 * 1000.5**1.5 * math.fsum(terms.tolist())
    assert abs(r.value - descending) <= 1e-9 * abs(descending)


def test_h_parallel_matches_serial_bitwise(builtin):
    top = float(builtin.gammas[-1])
    serial = glab.h_term(4321.5, builtin, top, chunk_size=16, threads=1)
    threaded = glab.h_term(4321.5, builtin, top, chunk_size=16, threads=4)
    assert serial.value == threaded.value
    assert serial.terms_used == threaded.terms_used


def test_h_domain_and_range(builtin):
    with pytest.raises(glab.DomainError):
        glab.h_term(0.5, builtin, 15.0)
    with pytest.raises(glab.RangeError):
        glab.h_term(10.0, builtin, 1e9)


def test_h_tail_estimate_infinite_below_2pi(builtin):
    assert glab.h_term(10.0, builtin, 1.0).tail_estimate == math.inf
    assert math.isfinite(glab.h_term(10.0, builtin, 10.0).tail_estimate)


def test_h_truncation_differences_within_tail(builtin):
    for x in (1000.0, 10_000.0):
        t1 = builtin.height_of_prefix(50)
        t2 = builtin.height_of_prefix(100)
        h1 = glab.h_term(x, builtin, t1)
        h2 = glab.h_term(x, builtin, t2)
        assert abs(h2.value - h1.value) <= glab.tail_bound(t1, x)


def test_h_scale_bound(builtin):
    """|H_T(x)|/x^{3/2} stays under 4 * sum 1/gamma^2 over the table."""
    top = float(builtin.gammas[-1])
    coeff = 4.0 * float(np.add.reduce(builtin.gammas**-2.0))
    for x in np.logspace(1, 6, 200):
        r = glab.h_term(float(x), builtin, top)
        assert abs(r.value) / x**1.5 <= coeff


def test_psi_explicit_main_terms(builtin):
    assert glab.psi_explicit(10.0, builtin, 0.0) == pytest.approx(8.167148, abs=1e-6)


def test_psi_explicit_errors(builtin):
    with pytest.raises(glab.DomainError):
        glab.psi_explicit(1.0, builtin, 15.0)
    with pytest.raises(glab.RangeError):
        glab.psi_explicit(10.0, builtin, 1e9)


def test_psi_explicit_approaches_sieved_psi(builtin, lam2000):
    pt = glab.build_psi(lam2000)
    top = float(builtin.gammas[-1])
    err = abs(glab.psi_explicit(10.0, builtin, top) - glab.psi(10.0, pt))
    assert err < 0.5


def test_psi_explicit_error_decreases_with_height(builtin, lam10k):
    """Mean |truncated formula - sieved psi| at midpoints shrinks as the
    truncation height climbs through longer zero prefixes."""
    pt = glab.build_psi(lam10k)
    ns = np.arange(1000, 10_000, 37)
    means = []
    for count in (10, 40, 100):
        top = builtin.height_of_prefix(count)
        errs = [
            abs(glab.psi_explicit(n + 0.5, builtin, top) - glab.psi(n + 0.5, pt))
            for n in ns
        ]
        means.append(np.mean(errs))
    assert means[2] < means[1] < means[0]
