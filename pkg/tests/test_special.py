"""Tests for the complex special functions.

Reference values marked "frozen" were computed beforehand with a 40-digit
arbitrary-precision evaluation (mpmath); wide sweeps recompute references
with mpmath at test time.
"""

import math

import mpmath as mp
import numpy as np
import pytest

from matball.errors import DegenerateConnection, DomainError, PoleError
from matball.special import (SpectralParams, c_function, digamma,
                             euler_transform_check, gamma, gauss_2f1,
                             gindikin_gamma, pochhammer, reciprocal_gamma)

mp.mp.dps = 30


def rel(a, b):
    return abs(a - b) / abs(b)


class TestGamma:
    def test_known_values(self):
        assert rel(gamma(1.0), 1.0) < 1e-14
        assert rel(gamma(0.5), math.sqrt(math.pi)) < 1e-14
        # frozen 40-digit reference
        assert rel(gamma(2 + 3j),
                   -0.082395272665611883674 + 0.091774287435259314596j) < 1e-13

    def test_accuracy_sweep_against_mpmath(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(800):
            z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
            if abs(z) > 50:
                continue
            if abs(z.imag) < 1e-3 and z.real < 0.5 \
                    and abs(z.real - round(z.real)) < 1e-3:
                continue
            ref = complex(mp.gamma(mp.mpc(z.real, z.imag)))
            worst = max(worst, rel(gamma(z), ref))
        assert worst <= 1e-12

    def test_functional_equation(self):
        rng = np.random.default_rng(7)
        for _ in range(10_000):
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if abs(z) > 20 or abs(z.imag) < 1e-6:
                continue
            assert rel(gamma(z + 1), z * gamma(z)) <= 1e-10

    def test_poles(self):
        for z in (0.0, -1.0, -7.0, -3 + 1e-13j):
            with pytest.raises(PoleError):
                gamma(z)
        assert reciprocal_gamma(-4.0) == 0.0

    def test_digamma_against_mpmath(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if abs(z.imag) < 1e-3 and z.real < 0.5 \
                    and abs(z.real - round(z.real)) < 1e-3:
                continue
            ref = complex(mp.digamma(mp.mpc(z.real, z.imag)))
            assert abs(digamma(z) - ref) / max(abs(ref), 1.0) < 1e-13


class TestPochhammer:
    def test_basic(self):
        assert pochhammer(5 + 2j, 0) == 1
        assert pochhammer(2, 3) == 24
        assert pochhammer(1j, 2) == -1 + 1j

    def test_against_gamma_ratio(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            a = complex(rng.uniform(0.5, 6), rng.uniform(-3, 3))
            k = int(rng.integers(0, 12))
            ref = gamma(a + k) / gamma(a)
            assert rel(pochhammer(a, k), ref) <= 1e-10

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)


class TestGauss2F1:
    def test_trivial(self):
        assert gauss_2f1(0.7, -1.3j, 2.2, 0.0) == 1.0
        # 2F1(1,1;2;x) = -log(1-x)/x; frozen 40-digit value at x = 1/2
        assert rel(gauss_2f1(1, 1, 2, 0.5), 1.3862943611198906188) < 1e-13

    def test_derived_frozen_value(self):
        # frozen 40-digit reference for a connection-formula evaluation
        got = gauss_2f1(0.3 + 0.7j, 1.2 - 0.4j, 2.5, 0.9)
        assert rel(got, 1.3038390717565551197 + 0.60868348082171862986j) < 1e-10

    def test_parameter_symmetry(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            a = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
            b = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
            c = complex(rng.uniform(0.5, 3), rng.uniform(0.2, 2))
            for x in (0.2, 0.7):
                v1 = gauss_2f1(a, b, c, x)
                v2 = gauss_2f1(b, a, c, x)
                assert abs(v1 - v2) <= 1e-12 * max(abs(v1), 1.0)

    def test_connection_matches_long_direct_series(self):
        # direct series with an extended iteration budget as the oracle
        def direct(a, b, c, x, terms=120_000):
            term = mp.mpc(1)
            total = mp.mpc(1)
            for k in range(terms):
                term *= (a + k) * (b + k) * x / ((c + k) * (k + 1))
                total += term
                if abs(term) < 1e-25 * abs(total):
                    break
            return complex(total)

        rng = np.random.default_rng(17)
        for _ in range(25):
            a = complex(rng.uniform(-1.5, 2), rng.uniform(-1, 1))
            b = complex(rng.uniform(-1.5, 2), rng.uniform(-1, 1))
            c = complex(rng.uniform(0.6, 3), rng.uniform(0.3, 1.5))
            x = rng.uniform(0.55, 0.9)
            assert rel(gauss_2f1(a, b, c, x), direct(a, b, c, x)) <= 1e-8

    def test_terminating_polynomial(self):
        # a = -3 terminates; valid at any x including x > 1/2
        for x in (0.25, 0.85):
            got = gauss_2f1(-3.0, 1.5 + 0.5j, 2.25, x)
            ref = complex(mp.hyp2f1(-3, mp.mpc(1.5, 0.5), 2.25, x))
            assert rel(got, ref) < 1e-13

    def test_log_case_integer_difference(self):
        a, b = 1.25 + 0.5j, 0.75 - 0.25j
        # frozen 40-digit references
        got = gauss_2f1(a, b, a + b - 3, 0.75)
        assert rel(got, -8.0326752120416920155 + 295.4579603525299264j) < 1e-11
        got0 = gauss_2f1(a, b, a + b, 0.9)
        assert rel(got0, 2.6723510223479277266 - 0.11590465381635070068j) < 1e-11

    def test_log_case_sweep(self):
        rng = np.random.default_rng(21)
        for _ in range(40):
            a = complex(rng.uniform(-2, 3), rng.uniform(-1.5, 1.5))
            b = complex(rng.uniform(-2, 3), rng.uniform(-1.5, 1.5))
            d = int(rng.integers(-4, 4))
            c = a + b + d
            x = rng.uniform(0.55, 0.9995)
            ref = complex(mp.hyp2f1(a, b, c, x))
            if abs(ref) == 0:
                continue
            assert rel(gauss_2f1(a, b, c, x), ref) <= 1e-8

    def test_degenerate_ring_raises(self):
        # within 1e-9 of an integer but not an exact integer
        with pytest.raises(DegenerateConnection):
            gauss_2f1(0.5, 0.7, 0.5 + 0.7 - 2.0 + 3e-10, 0.8)

    def test_c_pole_raises(self):
        with pytest.raises(PoleError):
            gauss_2f1(0.5, 0.7, -2.0, 0.3)

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, 2, 1.0)
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, 2, -0.1)


class TestEulerTransform:
    def test_examples(self):
        assert euler_transform_check(1, 1, 2, 0.5).passed
        rep0 = euler_transform_check(0.3 + 1j, -0.7, 1.9, 0.0)
        assert rep0.computed == 1.0 and rep0.reference == 1.0

    def test_random_draws(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            a = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            b = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            c = complex(rng.uniform(0.5, 3), rng.uniform(0.2, 1.5))
            assert euler_transform_check(a, b, c, 0.3).passed


class TestGindikinGamma:
    def test_reductions(self):
        assert rel(gindikin_gamma(2.5 + 1j, 1), gamma(2.5 + 1j)) < 1e-15
        assert rel(gindikin_gamma(3.0, 2), 2.0) < 1e-14
        # frozen 40-digit reference
        assert rel(gindikin_gamma(2.5 + 1j, 3),
                   0.31731215609915730315 - 0.019928954484349815007j) < 1e-12

    def test_pole_names_factor(self):
        with pytest.raises(PoleError, match="j=3"):
            gindikin_gamma(2.0, 3)


class TestSpectralParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            SpectralParams(0, 0, 1.0)
        with pytest.raises(DomainError):
            SpectralParams(2, 0.5, 1.0)

    def test_generic_set(self):
        # excluded lattice n-2 +/- nu - 2k
        assert not SpectralParams(2, 1, 1.0).in_generic_set   # n-2+nu
        assert not SpectralParams(2, 1, -1.0).in_generic_set  # n-2-nu
        assert not SpectralParams(2, 1, -3.0).in_generic_set  # shifted by -2
        assert SpectralParams(2, 1, 2.0).in_generic_set
        assert SpectralParams(2, 1, 1.0 + 1e-6j).in_generic_set

    def test_asymptotic_range(self):
        assert SpectralParams(2, 0, 1.5).in_asymptotic_range
        assert not SpectralParams(2, 0, 1.0).in_asymptotic_range
        assert not SpectralParams(2, 0, 1.0 + 5j).in_asymptotic_range


class TestCFunction:
    def test_disk_trivial(self):
        assert rel(c_function(SpectralParams(1, 0, 1.0)), 1.0) < 1e-14

    def test_disk_reduction(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            s = complex(rng.uniform(0.3, 4), rng.uniform(-2, 2))
            got = c_function(SpectralParams(1, 0, s))
            ref = gamma(s) / gamma((s + 1) / 2.0) ** 2
            assert rel(got, ref) <= 1e-12
