"""Radial building blocks of the Poisson transform: scalar profiles
phi_{s,k}(r), their determinant aggregates Phi_{s,m}(r) indexed by
signatures, and the boundary-asymptotic ratio they satisfy.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError
from .special import SpectralParams, c_function, gauss_2f1

MAX_SIGNATURE_PART = 50


def validate_signature(m, n: int | None = None) -> tuple[int, ...]:
    """Check that m is a weakly decreasing integer tuple (of rank n if given)."""
    m = tuple(int(v) for v in m)
    if n is not None and len(m) != n:
        raise DomainError(f"signature {m} has rank {len(m)}, expected {n}")
    if any(m[i] < m[i + 1] for i in range(len(m) - 1)):
        raise DomainError(f"signature parts must be weakly decreasing, got {m}")
    if any(abs(v) > MAX_SIGNATURE_PART for v in m):
        raise DomainError(
            f"signature parts limited to |m_i| <= {MAX_SIGNATURE_PART}, got {m}")
    return m


def validate_radius(r: float) -> float:
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radial argument must satisfy 0 <= r < 1, got {r}")
    return r


def weyl_dimension(m) -> int:
    """Dimension of the unitary-group irreducible with signature m:
    product over i < j of (1 + (m_i - m_j)/(j - i))."""
    m = validate_signature(m)
    n = len(m)
    out = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            out *= Fraction(m[i] - m[j] + j - i, j - i)
    if out.denominator != 1 or out <= 0:
        raise DomainError(f"signature {m} does not index an irreducible")
    return int(out)


def _epsilon(k: int) -> int:
    # +1 for k >= 0, -1 for k < 0; the k = 0 value is convention independent
    # because 2F1 is symmetric in its first two parameters.
    return 1 if k >= 0 else -1


def phi_scalar_core(p: SpectralParams, k: int, r: float) -> complex:
    """r^|k| ((s+n+eps*nu)/2)_|k| / (1)_|k| * 2F1(...) -- the Fourier-mode
    profile of the kernel without the (1-r^2)^((s+n-nu)/2) factor."""
    r = validate_radius(r)
    n, nu, s = p.n, p.nu, p.s
    ak = abs(int(k))
    e = _epsilon(k)
    a_plus = (s + n + e * nu) / 2.0
    a_minus = (s + n - e * nu) / 2.0
    ratio = 1.0 + 0.0j
    for i in range(ak):
        ratio *= (a_plus + i) / (1.0 + i)
    return r ** ak * ratio * gauss_2f1(a_minus, a_plus + ak, 1.0 + ak, r * r)


def phi_scalar(p: SpectralParams, k: int, r: float) -> complex:
    """Scalar radial profile

        phi_{s,k}(r) = r^|k| (1-r^2)^((s+n-nu)/2)
                       ((s+n+eps(k)nu)/2)_|k| / (1)_|k|
                       2F1((s+n-eps(k)nu)/2, (s+n+eps(k)nu)/2 + |k|; 1+|k|; r^2)

    with eps(k) = +1 for k >= 0 and -1 for k < 0, s = i*lambda.
    """
    r = validate_radius(r)
    n, nu, s = p.n, p.nu, p.s
    weight = cmath.exp((s + n - nu) / 2.0 * math.log1p(-r * r)) if r > 0 else 1.0
    return weight * phi_scalar_core(p, k, r)


def phi_big(p: SpectralParams, m, r: float) -> complex:
    """Radial profile on the K-type with signature m:

        Phi_{s,m}(r) = det( phi_{s, m_i - i + j}(r) )_{i,j=1..n} / d_m

    normalized so that Phi_{s,0}(0) = 1 under probability Haar measure on
    the boundary (the determinant at m = 0, r = 0 is that of the identity).
    """
    m = validate_signature(m, p.n)
    r = validate_radius(r)
    n = p.n
    if n == 1:
        return phi_scalar(p, m[0], r)
    entries = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            entries[i, j] = phi_scalar(p, m[i] - (i + 1) + (j + 1), r)
    return complex(np.linalg.det(entries)) / weyl_dimension(m)


def boundary_weight(p: SpectralParams, r: float) -> complex:
    """(1-r^2)^(n(n-nu-s)/2), the boundary decay rate of Phi_{s,m}."""
    n, nu, s = p.n, p.nu, p.s
    if r == 0.0:
        return 1.0 + 0.0j
    return cmath.exp(n * (n - nu - s) / 2.0 * math.log1p(-r * r))


def key_lemma_ratio(p: SpectralParams, m, r: float) -> complex:
    """Phi_{s,m}(r) / [c(s) (1-r^2)^(n(n-nu-s)/2)]; tends to 1 as r -> 1-.

    Requires s in the generic set and Re(s) > n - 1.
    """
    if not p.in_generic_set:
        raise DomainError(f"s={p.s} lies on the excluded spectral lattice")
    if not p.in_asymptotic_range:
        raise DomainError(
            f"requires Re(s) > n-1 (asymptotic range), got s={p.s}, n={p.n}")
    return phi_big(p, m, r) / (c_function(p) * boundary_weight(p, r))


def gamma_constant(p: SpectralParams) -> complex:
    """Asymptotic constant of the hypergeometric-determinant ratio:

        gamma(s, nu) = (-1)^(n(n-1)/2) prod_{k=1}^{n-1} (n-k)!
            prod_{k=1}^{n-1} [((2-s-n-nu)/2 + k-1)^(n-k) ((2-s-n+nu)/2 + k-1)^(n-k)]
                           / [(-s-n+k+1)^(n-k) prod_{j=1}^{n-k} (-s+k-j)_2]

    The leading sign is pinned by the requirement that
    (Gamma(s+n-1) / [Gamma((s+n+nu)/2) Gamma((s+n-nu)/2)])^n * gamma(s, nu)
    equal the c-function; it was resolved numerically against that identity.
    """
    n, nu, s = p.n, p.nu, p.s
    out = complex((-1) ** (n * (n - 1) // 2))
    for k in range(1, n):
        out *= math.factorial(n - k)
    for k in range(1, n):
        num = ((2.0 - s - n - nu) / 2.0 + k - 1) ** (n - k)
        num *= ((2.0 - s - n + nu) / 2.0 + k - 1) ** (n - k)
        den = (-s - n + k + 1) ** (n - k)
        for j in range(1, n - k + 1):
            den *= (-s + k - j) * (-s + k - j + 1)
        if den == 0:
            raise PoleError(
                f"gamma constant denominator vanishes at n={n}, k={k}, s={s}")
        out *= num / den
    return out
