"""Boundary machinery: the Poisson kernel on the matrix ball, Schur
characters on the unitary-group boundary, torus quadrature for class
functions (Weyl integration) and weighted Hardy norms.

Class functions are integrated on a midpoint-offset product grid against
the squared-Vandermonde weight; the quadrature is normalized so that the
constant function integrates to 1 (probability Haar measure).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CoincidentAnglesError, DomainError, SingularError
from .report import CheckReport, make_report
from .special import SpectralParams
from .spherical import phi_scalar_core, validate_radius, validate_signature, weyl_dimension

MIN_ANGLE_GAP = 1e-8


def validate_ball_point(Z: np.ndarray) -> np.ndarray:
    """Check that I - Z Z* is positive definite (Cholesky succeeds)."""
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise DomainError(f"ball point must be a square matrix, got shape {Z.shape}")
    n = Z.shape[0]
    A = np.eye(n) - Z @ Z.conj().T
    try:
        np.linalg.cholesky((A + A.conj().T) / 2.0)
    except np.linalg.LinAlgError:
        raise DomainError("I - Z Z* is not positive definite") from None
    return Z


def ball_margin(Z: np.ndarray) -> float:
    """1 - ||Z||_op, the operator-norm distance to the boundary."""
    Z = np.asarray(Z, dtype=complex)
    return 1.0 - float(np.linalg.norm(Z, 2))


@dataclass(frozen=True)
class TorusGrid:
    """Midpoint-offset uniform product grid on [0, 2pi)^n.

    Nodes are theta_j = 2 pi (j + 1/2) / N per dimension; the trapezoidal
    weight (2 pi / N)^n integrates trigonometric polynomials of per-variable
    degree < N exactly.
    """

    n: int
    points_per_dim: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"rank must be >= 1, got {self.n}")
        if self.points_per_dim < 8:
            raise DomainError(
                f"grid needs N >= 8 points per dimension, got {self.points_per_dim}")

    @cached_property
    def angles(self) -> np.ndarray:
        """All grid nodes, shape (N^n, n)."""
        N, n = self.points_per_dim, self.n
        axis = 2.0 * np.pi * (np.arange(N) + 0.5) / N
        idx = np.indices((N,) * n).reshape(n, -1).T
        return axis[idx]

    @cached_property
    def vandermonde_sq(self) -> np.ndarray:
        """Squared Vandermonde weight prod_{i<j} |e^{i th_i} - e^{i th_j}|^2
        at each node; exactly zero on coincident-angle nodes."""
        ang = self.angles
        n = self.n
        out = np.ones(ang.shape[0])
        for i in range(n):
            for j in range(i + 1, n):
                out *= 4.0 * np.sin((ang[:, i] - ang[:, j]) / 2.0) ** 2
        return out

    def refined(self) -> "TorusGrid":
        return TorusGrid(self.n, 2 * self.points_per_dim)


_CHUNK = 1 << 18


def weyl_integrate(f, grid: TorusGrid) -> complex:
    """Probability-Haar integral of a class function over the boundary:

        (1/n!) (2 pi)^{-n} sum_nodes f(theta) prod_{i<j}|e^{i th_i}-e^{i th_j}|^2 (2pi/N)^n

    ``f`` receives an (M, n) array of angle rows and must return (M,) values.
    Nodes with vanishing Vandermonde weight are skipped (their contribution
    is exactly zero), so ``f`` is never evaluated at coincident angles.
    Evaluation is chunked to bound memory on refined grids.
    """
    w = grid.vandermonde_sq
    mask = w != 0.0
    angles = grid.angles[mask]
    weights = w[mask]
    total = 0.0 + 0.0j
    for start in range(0, angles.shape[0], _CHUNK):
        block = slice(start, start + _CHUNK)
        vals = np.asarray(f(angles[block]))
        total += complex(np.sum(vals * weights[block]))
    return total / (math.factorial(grid.n) * grid.points_per_dim ** grid.n)


def require_kernel_resolution(r: float, grid: TorusGrid) -> None:
    """Kernel quadrature needs N to grow like 1/(1-r): the kernel at radius
    r concentrates on an angular scale ~ (1-r)."""
    if r >= 0.9 and grid.points_per_dim < 16.0 / (1.0 - r):
        raise DomainError(
            f"grid with N={grid.points_per_dim} too coarse for kernel "
            f"quadrature at r={r}; need N >= {16.0 / (1.0 - r):.0f}")


def poisson_kernel(p: SpectralParams, Z: np.ndarray, U: np.ndarray) -> complex:
    """Poisson kernel on the matrix ball:

        P(Z, U) = [det(I - Z Z*) / |det(I - Z U*)|^2]^((s+n-nu)/2)
                  det(I - Z U*)^(-nu)

    with s = i*lambda.  The first factor is a positive-real base raised to a
    complex power (principal logarithm); the second is an integer power.
    ``U`` may be an n x n unitary matrix or a length-n vector of torus angles.
    """
    Z = validate_ball_point(Z)
    n, nu, s = p.n, p.nu, p.s
    if Z.shape[0] != n:
        raise DomainError(f"ball point has size {Z.shape[0]}, params have n={n}")
    U = np.asarray(U)
    if U.ndim == 1:
        if U.shape[0] != n:
            raise DomainError(f"angle vector has length {U.shape[0]}, expected {n}")
        U = np.diag(np.exp(1j * U.astype(float)))
    else:
        U = U.astype(complex)
        if U.shape != (n, n):
            raise DomainError(f"boundary matrix must be {n}x{n}, got {U.shape}")
        if np.max(np.abs(U @ U.conj().T - np.eye(n))) > 1e-12:
            raise DomainError("boundary matrix is not unitary to 1e-12")
    detA = np.linalg.det(np.eye(n) - Z @ Z.conj().T).real
    detW = complex(np.linalg.det(np.eye(n) - Z @ U.conj().T))
    if detW == 0.0:
        raise SingularError("det(I - Z U*) = 0")
    base = detA / abs(detW) ** 2
    return cmath.exp((s + n - nu) / 2.0 * math.log(base)) * detW ** (-nu)


def poisson_kernel_torus(p: SpectralParams, z: complex, angles: np.ndarray) -> np.ndarray:
    """Vectorized kernel values P(z I, diag(e^{i theta})) for a scalar ball
    point z I, |z| < 1.  ``angles`` has shape (M, n); returns (M,) values.

    Per angle the kernel factorizes:
       [(1-|z|^2)/|1 - z e^{-i th}|^2]^((s+n-nu)/2) (1 - z e^{-i th})^(-nu).
    """
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"scalar ball point needs |z| < 1, got |z|={abs(z)}")
    angles = np.atleast_2d(np.asarray(angles, dtype=float))
    n, nu, s = p.n, p.nu, p.s
    if angles.shape[1] != n:
        raise DomainError(f"angle rows have length {angles.shape[1]}, expected {n}")
    w = 1.0 - z * np.exp(-1j * angles)
    sigma = (s + n - nu) / 2.0
    log_base = n * math.log1p(-abs(z) ** 2) - 2.0 * np.sum(np.log(np.abs(w)), axis=1)
    out = np.exp(sigma * log_base)
    if nu != 0:
        out = out * np.prod(w ** (-nu), axis=1)
    return out


def _check_angle_gaps(angles: np.ndarray) -> None:
    n = angles.shape[1]
    for i in range(n):
        for j in range(i + 1, n):
            d = np.abs(np.exp(1j * angles[:, i]) - np.exp(1j * angles[:, j]))
            if np.any(d < MIN_ANGLE_GAP):
                raise CoincidentAnglesError(
                    f"angles {i} and {j} closer than {MIN_ANGLE_GAP}")


def schur_character(m, theta: np.ndarray) -> complex | np.ndarray:
    """Normalized character (zonal spherical function) at torus angles:

        phi_m(e^{i Theta}) = det(e^{i th_i (m_j + n - j)})
                             / [d_m det(e^{i th_i (n - j)})]

    Accepts a single angle row (n,) or a batch (M, n); angles within a row
    must be pairwise distinct (gap >= 1e-8 on the circle).
    """
    theta = np.asarray(theta, dtype=float)
    single = theta.ndim == 1
    angles = np.atleast_2d(theta)
    n = angles.shape[1]
    m = validate_signature(m, n)
    _check_angle_gaps(angles)
    z = np.exp(1j * angles)  # (M, n)
    exps_num = np.array([m[j] + n - (j + 1) for j in range(n)])
    exps_den = np.array([n - (j + 1) for j in range(n)])
    num = np.linalg.det(z[:, :, None] ** exps_num[None, None, :])
    den = np.linalg.det(z[:, :, None] ** exps_den[None, None, :])
    out = num / (weyl_dimension(m) * den)
    return complex(out[0]) if single else out


def spherical_oracle(p: SpectralParams, m, r: float, grid: TorusGrid) -> complex:
    """Quadrature value of the K-type radial profile,

        Phi_{s,m}(r) = int P(r I, U) phi_m(U) dU,

    reduced to the torus by Weyl integration.  Serves as the independent
    oracle for the determinant formula in :func:`matball.spherical.phi_big`.
    """
    m = validate_signature(m, p.n)
    r = validate_radius(r)
    require_kernel_resolution(r, grid)
    if grid.n != p.n:
        raise DomainError(f"grid rank {grid.n} != params rank {p.n}")

    def integrand(angles):
        return poisson_kernel_torus(p, r, angles) * schur_character(m, angles)

    return weyl_integrate(integrand, grid)


def fourier_mode_check(p: SpectralParams, k: int, r: float, N: int,
                       tol: float = 1e-9) -> CheckReport:
    """Compare the k-th Fourier coefficient of the per-angle kernel factor

        g(th) = (1 - r e^{-i th})^(-(s+n+nu)/2) (1 - r e^{i th})^(-(s+n-nu)/2)

    computed by N-point trapezoidal quadrature of g(th) e^{i k th} against
    the closed form r^|k| ((s+n+eps(k)nu)/2)_|k| / (1)_|k| 2F1(...).
    """
    r = validate_radius(r)
    if N < 8:
        raise DomainError(f"need N >= 8 quadrature points, got {N}")
    n, nu, s = p.n, p.nu, p.s
    theta = 2.0 * np.pi * (np.arange(N) + 0.5) / N
    w = 1.0 - r * np.exp(-1j * theta)
    sigma = (s + n - nu) / 2.0
    g = np.exp(-2.0 * sigma * np.log(np.abs(w))) * w ** (-nu)
    quad = complex(np.mean(g * np.exp(1j * k * theta)))
    closed = phi_scalar_core(p, k, r)
    return make_report(f"fourier_mode k={k}", quad, closed, tol,
                       n=n, nu=nu, s=s, r=r, N=N)


def hardy_norm(p: SpectralParams, F, pexp: float, r: float,
               grid: TorusGrid) -> float:
    """Weighted L^p norm of a radial slice:

        (1-r^2)^(-n(n-nu-Re s)/2) [ int |F(r, U)|^p dU ]^(1/p)

    ``F`` is called as F(r, angles) with an (M, n) angle array.
    """
    if pexp < 1.0:
        raise DomainError(f"norm exponent must be >= 1, got {pexp}")
    r = validate_radius(r)
    n, nu, s = p.n, p.nu, p.s

    def integrand(angles):
        return np.abs(np.asarray(F(r, angles))) ** pexp

    integral = weyl_integrate(integrand, grid).real
    weight = math.exp(-n * (n - nu - s.real) / 2.0 * math.log1p(-r * r)) if r > 0 else 1.0
    return weight * integral ** (1.0 / pexp)
