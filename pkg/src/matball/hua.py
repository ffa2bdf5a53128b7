"""Matrix-valued second-order operator on the ball, realized through
Wirtinger finite differences, with analytic kernel-derivative cross-checks
and eigen-equation residuals.

Conventions (fixed by finite-difference discrimination between the candidate
readings; see the module tests):
  * the coefficient matrices A = I - Z Z*, B = I - Z*Z and Z* are frozen at
    the base point; only the scalar field is differentiated;
  * the first-order term of the bottom block carries the right factor B
    (the variant with right factor A fails the eigen-equation for nu != 0
    and n >= 2; it is kept behind ``bottom_nu_convention='printed'``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import ball_margin, poisson_kernel, validate_ball_point
from .errors import DomainError, MarginError
from .report import CheckReport
from .special import SpectralParams

DEFAULT_FD_STEP = 1e-3


@dataclass
class HuaResult:
    """The two diagonal blocks of the matrix operator applied to a field."""

    top: np.ndarray
    bottom: np.ndarray


def _require_margin(Z: np.ndarray, h: float, factor: float) -> None:
    margin = ball_margin(Z)
    if margin < factor * h:
        raise MarginError(
            f"finite-difference probes need margin >= {factor}*h = {factor * h}; "
            f"point has margin {margin:.3e}")


def _entry_shift(Z: np.ndarray, entry, axis: str, step: float) -> np.ndarray:
    Zp = Z.copy()
    Zp[entry] += step if axis == "x" else 1j * step
    return Zp


def wirtinger_grad(F, Z: np.ndarray, h: float = DEFAULT_FD_STEP):
    """Entrywise Wirtinger first derivatives of a scalar field by central
    differences:  dF_{ij} = dF/dz_{ij},  dbarF_{ij} = dF/dzbar_{ij}.

    Truncation error is O(h^2).  Raises MarginError if a probe would leave
    the ball (margin must be at least 2h in operator norm).
    """
    Z = validate_ball_point(Z)
    _require_margin(Z, h, 2.0)
    n = Z.shape[0]
    dF = np.empty((n, n), dtype=complex)
    dbarF = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            fx = (F(_entry_shift(Z, (i, j), "x", h))
                  - F(_entry_shift(Z, (i, j), "x", -h))) / (2.0 * h)
            fy = (F(_entry_shift(Z, (i, j), "y", h))
                  - F(_entry_shift(Z, (i, j), "y", -h))) / (2.0 * h)
            dF[i, j] = 0.5 * (fx - 1j * fy)
            dbarF[i, j] = 0.5 * (fx + 1j * fy)
    return dF, dbarF


def _wirtinger_hessian(F, Z: np.ndarray, h: float) -> np.ndarray:
    """Mixed Wirtinger second derivatives

        H[a, b, q, c] = d^2 F / (dzbar_{ab} dz_{qc})

    via 4-point cross stencils in the real/imaginary parts; each cross
    partial uses f(+,+) - f(+,-) - f(-,+) + f(-,-) over 4 h^2, which remains
    valid when the two entries coincide.
    """
    n = Z.shape[0]

    def cross(u, au, v, bv):
        def f(su, sv):
            return F(_entry_shift(_entry_shift(Z, u, au, su), v, bv, sv))
        return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h)

    H = np.empty((n, n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            for q in range(n):
                for c in range(n):
                    u, v = (a, b), (q, c)
                    H[a, b, q, c] = 0.25 * (
                        cross(u, "x", v, "x") - 1j * cross(u, "x", v, "y")
                        + 1j * cross(u, "y", v, "x") + cross(u, "y", v, "y"))
    return H


def hua_apply(p: SpectralParams, F, Z: np.ndarray, h: float = DEFAULT_FD_STEP,
              bottom_nu_convention: str = "derived") -> HuaResult:
    """Apply the matrix operator to a scalar field at Z by finite differences.

    With A = I - Z Z*, B = I - Z*Z frozen at Z:

        top_{pq}    =  sum A_{pa} B_{bc} d2F/(dzbar_{ab} dz_{qc})
                       - nu sum A_{pa} (Z*)_{bq} dF/dzbar_{ab}
        bottom_{pq} = -sum A_{ab} B_{cq} d2F/(dz_{ap} dzbar_{bc})
                       + nu sum (Z*)_{pa} W_{bq} dF/dzbar_{ab}

    where W = B under the default convention and W = A under 'printed'.
    """
    if bottom_nu_convention not in ("derived", "printed"):
        raise DomainError(
            f"unknown bottom_nu_convention {bottom_nu_convention!r}")
    Z = validate_ball_point(Z)
    if Z.shape[0] != p.n:
        raise DomainError(f"ball point size {Z.shape[0]} != rank {p.n}")
    _require_margin(Z, h, 4.0)
    n, nu = p.n, p.nu
    A = np.eye(n) - Z @ Z.conj().T
    B = np.eye(n) - Z.conj().T @ Z
    Zs = Z.conj().T
    _, dbarF = wirtinger_grad(F, Z, h)
    H = _wirtinger_hessian(F, Z, h)

    # top: A_{pa} B_{bc} H[a,b,q,c] contracted over a, b, c
    top = np.einsum("pa,bc,abqc->pq", A, B, H)
    if nu != 0:
        top = top - nu * np.einsum("pa,bq,ab->pq", A, Zs, dbarF)

    # bottom second-order part: d2F/(dz_{ap} dzbar_{bc}) = H[b,c,a,p]
    bottom = -np.einsum("ab,cq,bcap->pq", A, B, H)
    if nu != 0:
        W = B if bottom_nu_convention == "derived" else A
        bottom = bottom + nu * np.einsum("pa,bq,ab->pq", Zs, W, dbarF)
    return HuaResult(top=top, bottom=bottom)


def kernel_grad_analytic(p: SpectralParams, Z: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Closed-form transposed gradient of the Poisson kernel in Z:

        (d'P)(Z) = P(Z,U) [ ((s+n+nu)/2) U* (I - Z U*)^{-1}
                            - ((s+n-nu)/2) Z* (I - Z Z*)^{-1} ]

    Entry (i, j) equals dP/dz_{ji}.
    """
    Z = validate_ball_point(Z)
    n, nu, s = p.n, p.nu, p.s
    U = np.asarray(U, dtype=complex)
    P = poisson_kernel(p, Z, U)
    W = np.eye(n) - Z @ U.conj().T
    A = np.eye(n) - Z @ Z.conj().T
    return P * ((s + n + nu) / 2.0 * U.conj().T @ np.linalg.inv(W)
                - (s + n - nu) / 2.0 * Z.conj().T @ np.linalg.inv(A))


def kernel_dbar_shifted_analytic(p: SpectralParams, Z: np.ndarray,
                                 U: np.ndarray) -> np.ndarray:
    """Closed form of (dbar Z* P)(Z), i.e. the matrix (dbar P) Z*:

        ((s+n-nu)/2) [ (I - U Z*)^{-1} U - (I - Z Z*)^{-1} Z ] Z* P(Z,U)

    (the overall factor P is required; the variant without it fails the
    finite-difference cross-check).
    """
    Z = validate_ball_point(Z)
    n, nu, s = p.n, p.nu, p.s
    U = np.asarray(U, dtype=complex)
    P = poisson_kernel(p, Z, U)
    A = np.eye(n) - Z @ Z.conj().T
    Wt = np.eye(n) - U @ Z.conj().T
    M = np.linalg.inv(Wt) @ U - np.linalg.inv(A) @ Z
    return (s + n - nu) / 2.0 * M @ Z.conj().T * P


def hua_eigenvalue(p: SpectralParams) -> complex:
    """mu = (s^2 - (n - nu)^2)/4, the eigenvalue of the top block on the
    kernel (the bottom block carries -mu)."""
    return (p.s * p.s - (p.n - p.nu) ** 2) / 4.0


def hua_residual(p: SpectralParams, Z: np.ndarray, U: np.ndarray,
                 h: float = DEFAULT_FD_STEP, tol: float = 1e-4,
                 bottom_nu_convention: str = "derived") -> CheckReport:
    """Eigen-equation residual of the kernel under the matrix operator:
    top should equal mu P I and bottom should equal -mu P I, with
    mu = (s^2 - (n-nu)^2)/4.  Reports the worse of the two relative
    Frobenius residuals.
    """
    Z = validate_ball_point(Z)
    U = np.asarray(U)
    P = poisson_kernel(p, Z, U)
    res = hua_apply(p, lambda W: poisson_kernel(p, W, U), Z, h,
                    bottom_nu_convention=bottom_nu_convention)
    mu = hua_eigenvalue(p)
    eye = np.eye(p.n)
    top_res = float(np.linalg.norm(res.top - mu * P * eye) / abs(P))
    bottom_res = float(np.linalg.norm(res.bottom + mu * P * eye) / abs(P))
    worst = max(top_res, bottom_res)
    return CheckReport(
        label=f"hua_residual n={p.n} nu={p.nu} s={p.s}",
        computed=worst, reference=0.0, rel_error=worst, passed=worst <= tol,
        extras={"top_residual": top_res, "bottom_residual": bottom_res,
                "eigenvalue": mu, "h": h, "kernel_value": P})
