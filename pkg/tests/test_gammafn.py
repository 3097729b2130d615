"""Gamma bedrock: Lanczos log-gamma, ratios, Pochhammer, bicomplex gamma.

The Gamma(1+i) anchor is checked against an oracle built here from
scratch (Euler's product with a zeta-tail correction, plus a Stirling
series cross-check), so no library gamma enters that comparison.
"""

import cmath
import math

import numpy as np
import pytest

from fwstates.bicomplex import Bicomplex
from fwstates.errors import PoleError
from fwstates.gammafn import (
    gamma,
    gamma_bicomplex,
    is_gamma_pole,
    log_gamma,
    log_gamma_ratio,
    log_gamma_vec,
    pochhammer,
)

# mpmath gamma at 50 digits, rounded to float64 pairs
GAMMA_GRID = [
    (0.5 + 0j, 1.7724538509055160273 + 0j, 1e-13),
    (2.0 + 0j, 1.0 + 0j, 1e-13),
    (5.0 + 0j, 24.0 + 0j, 1e-13),
    (0.1 + 0j, 9.5135076986687318363 + 0j, 1e-13),
    (1 + 1j, 0.49801566811835604271 - 0.15494982830181068512j, 1e-13),
    (3.7 - 2.2j, -1.8850260130418723166 - 0.84979094159458996452j, 1e-13),
    (8 + 3j, 2774.1582375598594894 - 448.08176438224159241j, 1e-13),
    (20 + 10j, 2741188744832832.6152 - 10006853062146087.759j, 1e-13),
    # left half plane goes through the reflection formula
    (-2.5 + 0.5j, -0.3338752035224323374 - 0.20645730796360841492j, 1e-12),
    (-0.5 - 1.5j, -0.13920273326162969236 + 0.056553073037431998148j, 1e-12),
]


def _gamma_product_oracle(z: complex, n_terms: int = 10**6) -> complex:
    """Euler's product, log domain, with the zeta-tail correction.

    log Gamma(z) = -log z + sum_n [z log(1+1/n) - log(1+z/n)]; the tail
    past n_terms is summed analytically from the cubic expansion of
    log(1+x), which brings the truncation error below 1e-18 at 1e6 terms.
    """
    n = np.arange(1, n_terms + 1, dtype=float)
    log_g = -np.log(complex(z)) + np.sum(z * np.log1p(1.0 / n) - np.log1p(z / n))
    N = float(n_terms)
    s2 = 1.0 / N - 1.0 / (2 * N**2) + 1.0 / (6 * N**3)
    s3 = 1.0 / (2 * N**2) - 1.0 / (2 * N**3)
    s4 = 1.0 / (3 * N**3)
    log_g += (z * z - z) / 2.0 * s2 + (z - z**3) / 3.0 * s3 + (z**4 - z) / 4.0 * s4
    return cmath.exp(log_g)


def _gamma_stirling_oracle(z: complex, shift: int = 9) -> complex:
    # Stirling series at z+shift, then divide the recurrence back down
    w = z + shift
    log_g = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi)
    for coeff, pw in [
        (1 / 12, 1),
        (-1 / 360, 3),
        (1 / 1260, 5),
        (-1 / 1680, 7),
        (1 / 1188, 9),
    ]:
        log_g += coeff / w**pw
    g = cmath.exp(log_g)
    for m in range(shift):
        g /= z + m
    return g


def test_gamma_one_plus_i_against_independent_oracles():
    z = 1 + 1j
    by_product = _gamma_product_oracle(z)
    by_stirling = _gamma_stirling_oracle(z)
    # the two constructions agree with each other first
    assert abs(by_product - by_stirling) <= 1e-11 * abs(by_stirling)
    got = gamma(z)
    assert abs(got - by_product) <= 1e-11 * abs(by_product)
    assert abs(got - by_stirling) <= 1e-12 * abs(by_stirling)


@pytest.mark.parametrize("w,expected,tol", GAMMA_GRID)
def test_gamma_validation_grid(w, expected, tol):
    assert abs(gamma(w) - expected) <= tol * abs(expected)


def test_log_gamma_anchors():
    assert abs(log_gamma(5.0) - math.log(24.0)) < 1e-14
    assert abs(log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-14


def test_log_gamma_exponentiates_to_gamma():
    for w, expected, _ in GAMMA_GRID[:8]:
        lg = log_gamma(w)
        assert abs(cmath.exp(lg) - expected) <= 1e-13 * abs(expected)
        # standard continuation is conjugate-symmetric
        assert log_gamma(complex(w).conjugate()) == lg.conjugate()


def test_recurrence_random():
    rng = np.random.default_rng(71)
    for _ in range(1000):
        w = complex(rng.uniform(0.1, 50.0), rng.uniform(-20.0, 20.0))
        lhs = log_gamma(w + 1)
        rhs = log_gamma(w) + cmath.log(w)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_reflection():
    rng = np.random.default_rng(73)
    checked = 0
    while checked < 300:
        w = complex(rng.uniform(-5.0, 5.0), rng.uniform(-3.0, 3.0))
        if min(abs(w - round(w.real)), abs(1 - w - round(1 - w.real))) < 0.05:
            continue
        if abs(w.imag) < 0.05 and (w.real <= 0 or w.real >= 1):
            # keep the guard simple: stay off the real axis near poles
            continue
        lhs = gamma(w) * gamma(1 - w)
        rhs = math.pi / cmath.sin(math.pi * w)
        assert abs(lhs - rhs) <= 1e-11 * abs(rhs)
        checked += 1


def test_poles():
    for w in (0.0, -1.0, -7.0, -3.0 + 1e-13j):
        assert is_gamma_pole(w)
        with pytest.raises(PoleError):
            log_gamma(w)
    assert not is_gamma_pole(-3.0 + 1e-9)
    assert not is_gamma_pole(0.5)


def test_log_gamma_vec_matches_scalar():
    ws = np.array([0.3, 1.0, 4.2 + 1.1j, 12.0 - 3.0j, 0.5 + 9.0j])
    vec = log_gamma_vec(ws)
    for i, w in enumerate(ws):
        assert abs(vec[i] - log_gamma(complex(w))) <= 1e-13 * max(1.0, abs(vec[i]))


def test_gamma_bicomplex():
    got = gamma_bicomplex(Bicomplex(2, 3))
    assert abs(got.z1 - 1.0) < 1e-14 and abs(got.z2 - 2.0) < 1e-14
    # real embedding: both components identical to the complex value
    emb = gamma_bicomplex(Bicomplex.from_scalar(0.5))
    assert emb.z1 == emb.z2 == gamma(0.5)
    with pytest.raises(PoleError, match="component 1"):
        gamma_bicomplex(Bicomplex(-1, 2))


def test_pochhammer():
    assert abs(pochhammer(2.3, 0.0) - 1.0) < 1e-14
    assert abs(pochhammer(1.0, 6.0) - 720.0) < 1e-11
    assert abs(pochhammer(0.5, 2.0) - 0.75) < 1e-14


def test_log_gamma_ratio_small_k():
    for k in (0, 1, 5, 40):
        assert abs(log_gamma_ratio(1.0, 1.0, k) - math.log(k + 1)) < 1e-13
    assert abs(log_gamma_ratio(1.0, 2.0, 0) - math.log(2.0)) < 1e-14
    direct = log_gamma(0.5 + 4 * 1.5) - log_gamma(0.5 + 3 * 1.5)
    assert abs(log_gamma_ratio(0.5, 1.5, 3) - direct) <= 1e-13 * abs(direct)


def test_log_gamma_ratio_large_k_is_stable():
    # direct differencing at k=1e4 still has ~1e-12 headroom; check agreement
    k = 10**4
    direct = log_gamma(0.7 + 1.1 * (k + 1)) - log_gamma(0.7 + 1.1 * k)
    assert abs(log_gamma_ratio(0.7, 1.1, k) - direct) <= 5e-12 * abs(direct)
    # at k=1e8 differencing is hopeless in float64; frozen 40-digit value
    frozen = 20.36759002363235933904
    assert abs(log_gamma_ratio(0.7, 1.1, 10**8).real - frozen) <= 1e-13 * frozen


def test_stirling_modulus_at_100():
    # |Gamma(w)| against the leading Stirling envelope on the real axis
    w = 100.0
    envelope = 0.5 * math.log(2 * math.pi) + (w - 0.5) * math.log(w) - w
    assert abs(math.expm1(log_gamma(w).real - envelope)) <= 1e-3
