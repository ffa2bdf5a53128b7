"""Tests for the Wirtinger finite differences, the matrix operator blocks
and the kernel eigen-equation."""

import numpy as np
import pytest

from matball.boundary import poisson_kernel
from matball.errors import DomainError, MarginError
from matball.hua import (hua_apply, hua_eigenvalue, hua_residual,
                         kernel_dbar_shifted_analytic, kernel_grad_analytic,
                         wirtinger_grad)
from matball.special import SpectralParams


def random_interior_point(rng, n, scale=0.15):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_unitary(rng, n, special=False):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n))
                        + 1j * rng.standard_normal((n, n)))
    if special:
        Q = Q / np.linalg.det(Q) ** (1.0 / n)
    return Q


class TestWirtingerGrad:
    def test_holomorphic_coordinate(self):
        rng = np.random.default_rng(0)
        Z = random_interior_point(rng, 2)
        dF, dbarF = wirtinger_grad(lambda W: W[0, 0], Z, 1e-4)
        expect = np.zeros((2, 2)); expect[0, 0] = 1.0
        assert np.allclose(dF, expect, atol=1e-9)
        assert np.allclose(dbarF, 0.0, atol=1e-9)

    def test_antiholomorphic_coordinate(self):
        rng = np.random.default_rng(1)
        Z = random_interior_point(rng, 2)
        dF, dbarF = wirtinger_grad(lambda W: np.conj(W[0, 1]), Z, 1e-4)
        expect = np.zeros((2, 2)); expect[0, 1] = 1.0
        assert np.allclose(dbarF, expect, atol=1e-9)
        assert np.allclose(dF, 0.0, atol=1e-9)

    def test_determinant_field(self):
        # F(Z) = det(I - Z Z*):  dF/dz_{ij} = -det(A) (Z* A^{-1})_{ji}
        rng = np.random.default_rng(2)
        Z = random_interior_point(rng, 2)
        A = np.eye(2) - Z @ Z.conj().T
        ref = -np.linalg.det(A) * (Z.conj().T @ np.linalg.inv(A)).T

        def F(W):
            return np.linalg.det(np.eye(2) - W @ W.conj().T)

        dF, _ = wirtinger_grad(F, Z, 1e-3)
        assert np.linalg.norm(dF - ref) <= 1e-10

    def test_richardson_order_on_polynomial_field(self):
        # a monomial mixing z and conj(z) in one entry has surviving
        # third-order truncation, so halving h shrinks the error by ~4
        # (for entrywise-holomorphic monomials the Wirtinger combination
        # cancels the truncation exactly)
        rng = np.random.default_rng(2)
        Z = random_interior_point(rng, 2, scale=0.3)

        def F(W):
            z = W[0, 0]
            return z ** 3 * np.conj(z) ** 2 + W[1, 1] * np.conj(W[1, 0])

        def exact_dz(W):
            out = np.zeros((2, 2), dtype=complex)
            out[0, 0] = 3 * W[0, 0] ** 2 * np.conj(W[0, 0]) ** 2
            out[1, 1] = np.conj(W[1, 0])
            return out

        errs = []
        for h in (2e-2, 1e-2):
            dF, _ = wirtinger_grad(F, Z, h)
            errs.append(np.linalg.norm(dF - exact_dz(Z)))
        assert 3.0 <= errs[0] / errs[1] <= 5.0

    def test_margin_error(self):
        with pytest.raises(MarginError):
            wirtinger_grad(lambda W: W[0, 0], 0.995 * np.eye(2), 1e-2)


class TestHuaApply:
    def test_rank_one_squared_modulus(self):
        # n=1, nu=0: top = (1-|z|^2)^2 d2F/dzbar dz; for F = |z|^2 this is
        # (1-|z|^2)^2
        p = SpectralParams(1, 0, 1.0)
        z = 0.3 + 0.2j
        Z = np.array([[z]])
        res = hua_apply(p, lambda W: (W[0, 0] * np.conj(W[0, 0])), Z, 1e-4)
        expect = (1 - abs(z) ** 2) ** 2
        assert abs(res.top[0, 0] - expect) <= 1e-7

    def test_constant_field(self):
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(3)
        Z = random_interior_point(rng, 2)
        res = hua_apply(p, lambda W: 1.0 + 0.0j, Z, 1e-3)
        assert np.allclose(res.top, 0.0, atol=1e-10)
        assert np.allclose(res.bottom, 0.0, atol=1e-10)

    def test_margin_and_convention_validation(self):
        p = SpectralParams(2, 1, 3.0)
        with pytest.raises(MarginError):
            hua_apply(p, lambda W: 1.0, 0.999 * np.eye(2), 1e-2)
        with pytest.raises(DomainError):
            hua_apply(p, lambda W: 1.0, 0.1 * np.eye(2), 1e-3,
                      bottom_nu_convention="sideways")


class TestKernelGradients:
    def test_transposed_gradient_at_zero(self):
        # d'P at Z = 0 is ((s+n+nu)/2) U*
        p = SpectralParams(2, 1, 2.5 + 0.5j)
        rng = np.random.default_rng(5)
        U = random_unitary(rng, 2)
        got = kernel_grad_analytic(p, np.zeros((2, 2)), U)
        assert np.allclose(got, (p.s + 2 + 1) / 2.0 * U.conj().T, atol=1e-12)

    def test_matches_finite_differences(self):
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(6)
        Z = random_interior_point(rng, 2)
        U = random_unitary(rng, 2)
        an = kernel_grad_analytic(p, Z, U)
        dF, _ = wirtinger_grad(lambda W: poisson_kernel(p, W, U), Z, 1e-4)
        assert np.linalg.norm(an - dF.T) <= 1e-6 * np.linalg.norm(an)

    def test_rank_one_log_derivative(self):
        # n=1 the transposed gradient is the scalar logarithmic derivative
        p = SpectralParams(1, 2, 1.5)
        z, phi = 0.4 + 0.1j, 0.8
        Z = np.array([[z]])
        U = np.array([[np.exp(1j * phi)]])
        got = kernel_grad_analytic(p, Z, U)[0, 0]
        P = poisson_kernel(p, Z, U)
        u = np.exp(1j * phi)
        ref = P * ((p.s + 1 + p.nu) / 2 * np.conj(u) / (1 - z * np.conj(u))
                   - (p.s + 1 - p.nu) / 2 * np.conj(z) / (1 - abs(z) ** 2))
        assert abs(got - ref) <= 1e-12 * abs(ref)

    def test_dbar_shifted_requires_kernel_factor(self):
        # the closed form carries an overall factor P; dropping it breaks
        # the finite-difference cross-check
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(7)
        Z = random_interior_point(rng, 2)
        U = random_unitary(rng, 2)
        _, dbarF = wirtinger_grad(lambda W: poisson_kernel(p, W, U), Z, 1e-4)
        fd = dbarF @ Z.conj().T
        an = kernel_dbar_shifted_analytic(p, Z, U)
        P = poisson_kernel(p, Z, U)
        assert np.linalg.norm(fd - an) <= 1e-6 * np.linalg.norm(an)
        assert np.linalg.norm(fd - an / P) > 1e-2 * np.linalg.norm(an)


class TestHuaResidual:
    def test_disk_harmonic(self):
        p = SpectralParams(1, 0, 1.0)
        rep = hua_residual(p, np.array([[0.3 + 0.2j]]), np.eye(1), h=1e-3)
        assert hua_eigenvalue(p) == 0.0
        assert rep.rel_error <= 1e-5

    def test_disk_weighted(self):
        # truncation constant grows with the weight; a smaller step keeps
        # the residual at the 1e-5 scale
        p = SpectralParams(1, 2, 2.5)
        rep = hua_residual(p, np.array([[0.4 + 0.0j]]), np.eye(1), h=1e-4)
        assert rep.rel_error <= 1e-5

    def test_rank_two(self):
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(8)
        Z = random_interior_point(rng, 2)
        rep = hua_residual(p, Z, np.eye(2), h=1e-3)
        assert rep.extras["top_residual"] <= 1e-4
        assert rep.extras["bottom_residual"] <= 1e-4

    def test_residual_decays_like_h_squared(self):
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(9)
        Z = random_interior_point(rng, 2)
        U = random_unitary(rng, 2)
        res = [hua_residual(p, Z, U, h=h, tol=1.0).rel_error
               for h in (2e-3, 1e-3, 5e-4)]
        assert 3.0 <= res[0] / res[1] <= 5.0
        assert 3.0 <= res[1] / res[2] <= 5.0

    def test_eigenvalue_at_scalar_points(self):
        # applying the top block to the kernel at Z = rI reproduces mu P I
        for r in (0.2, 0.5):
            p = SpectralParams(2, 1, 3.0)
            rng = np.random.default_rng(10)
            U = random_unitary(rng, 2)
            Z = r * np.eye(2)
            res = hua_apply(p, lambda W: poisson_kernel(p, W, U), Z, 1e-3)
            P = poisson_kernel(p, Z, U)
            mu = hua_eigenvalue(p)
            assert np.linalg.norm(res.top - mu * P * np.eye(2)) / abs(P) <= 1e-4

    def test_invariance_under_boundary_rotations(self):
        # (Z, U) -> (V1 Z V2*, V1 U V2*) with det(V1 V2) = 1 leaves the
        # residual unchanged up to finite-difference noise
        p = SpectralParams(2, 1, 3.0)
        rng = np.random.default_rng(11)
        Z = random_interior_point(rng, 2)
        U = random_unitary(rng, 2)
        V1 = random_unitary(rng, 2, special=True)
        V2 = random_unitary(rng, 2, special=True)
        r1 = hua_residual(p, Z, U, h=1e-3, tol=1.0)
        r2 = hua_residual(p, V1 @ Z @ V2.conj().T, V1 @ U @ V2.conj().T,
                          h=1e-3, tol=1.0)
        assert abs(r1.rel_error - r2.rel_error) <= 1e-4

    def test_printed_bottom_convention_fails_for_nonzero_weight(self):
        # the discriminating experiment: with nu != 0 and n >= 2 the variant
        # carrying right factor I - Z Z* in the first-order term leaves an
        # O(1) eigen-residual where the resolved variant is at FD accuracy
        p = SpectralParams(2, 2, 3.5)
        rng = np.random.default_rng(12)
        Z = random_interior_point(rng, 2)
        U = random_unitary(rng, 2)
        good = hua_residual(p, Z, U, h=1e-3, tol=1.0)
        bad = hua_residual(p, Z, U, h=1e-3, tol=1.0,
                           bottom_nu_convention="printed")
        assert good.rel_error <= 2e-4
        assert bad.extras["bottom_residual"] > 50 * good.rel_error
        # the top block does not depend on the flag
        assert abs(bad.extras["top_residual"]
                   - good.extras["top_residual"]) <= 1e-12
