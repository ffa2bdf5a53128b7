"""Desk-scale reproductions of the boundary-value theory: asymptotic-ratio
sweeps, kernel mass growth, the two-sided norm estimate for Poisson
extensions, the inversion formula, and K-type expansion consistency.

Sweeps are deterministic given (params, seed, grids); rows are emitted in a
fixed order so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import (TorusGrid, hardy_norm, poisson_kernel_torus,
                       require_kernel_resolution, schur_character, weyl_integrate)
from .errors import DomainError
from .report import CheckReport, make_report
from .special import SpectralParams, c_function
from .spherical import phi_big, validate_radius, validate_signature, weyl_dimension

DEFAULT_RADII = tuple(1.0 - 2.0 ** (-j) for j in range(1, 15))


@dataclass
class SweepResult:
    """Tabular outcome of a parameter sweep plus its run metadata."""

    columns: tuple
    rows: list
    metadata: dict = field(default_factory=dict)
    passed: bool = True

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


@dataclass(frozen=True)
class KTypeFunction:
    """Finite K-type sum f = sum_m coeffs[m] phi_m on the boundary.

    Keys are signatures (weakly decreasing integer tuples) of a common rank;
    phi_m are the normalized characters, so ||phi_m||_2^2 = 1/d_m^2.
    """

    coeffs: dict

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("K-type function needs at least one coefficient")
        ranks = {len(m) for m in self.coeffs}
        if len(ranks) != 1:
            raise DomainError(f"signatures of mixed rank: {sorted(ranks)}")
        fixed = {validate_signature(m): complex(c) for m, c in self.coeffs.items()}
        object.__setattr__(self, "coeffs", fixed)

    @property
    def rank(self) -> int:
        return len(next(iter(self.coeffs)))

    def items(self):
        return sorted(self.coeffs.items())

    def boundary_norm2(self) -> float:
        """Exact L^2 norm on the boundary: sqrt(sum |c_m|^2 / d_m^2)."""
        return math.sqrt(sum(abs(c) ** 2 / weyl_dimension(m) ** 2
                             for m, c in self.items()))

    def evaluate(self, angles: np.ndarray) -> np.ndarray:
        out = 0
        for m, c in self.items():
            out = out + c * schur_character(m, angles)
        return out

    def poisson_slice(self, p: SpectralParams, r: float):
        """Callable (r, angles) -> values of the Poisson extension at radius
        r: sum_m coeffs[m] Phi_m(r) phi_m(angles)."""
        weights = [(m, c * phi_big(p, m, r)) for m, c in self.items()]

        def F(_r, angles):
            out = 0
            for m, w in weights:
                out = out + w * schur_character(m, angles)
            return out

        return F


def _require_asymptotic(p: SpectralParams) -> None:
    if not p.in_generic_set:
        raise DomainError(f"s={p.s} lies on the excluded spectral lattice")
    if not p.in_asymptotic_range:
        raise DomainError(
            f"requires Re(s) > n-1 (asymptotic range), got s={p.s}, n={p.n}")


def key_lemma_sweep(p: SpectralParams, sigs, radii) -> SweepResult:
    """Ratios Phi_m(r) / [c(s) (1-r^2)^(n(n-nu-s)/2)] over (m, r).

    Passes when the worst |ratio - 1| at the largest radius is <= 5e-2 and
    the worst deviation shrinks from each radius to the next.
    """
    _require_asymptotic(p)
    radii = [validate_radius(r) for r in radii]
    if any(r < 0.9 for r in radii) or radii != sorted(radii):
        raise DomainError("radii must be an increasing list inside [0.9, 1)")
    sigs = [validate_signature(m, p.n) for m in sigs]
    cf = c_function(p)
    rows = []
    worst_by_r = []
    for r in radii:
        worst = 0.0
        denom = cf * _boundary_decay(p, r)
        for m in sigs:
            ratio = phi_big(p, m, r) / denom
            dev = abs(ratio - 1.0)
            worst = max(worst, dev)
            rows.append((";".join(map(str, m)), r, ratio, dev))
        worst_by_r.append(worst)
    decreasing = all(worst_by_r[i + 1] < worst_by_r[i]
                     for i in range(len(worst_by_r) - 1))
    passed = worst_by_r[-1] <= 5e-2 and decreasing
    return SweepResult(
        columns=("m", "r", "ratio", "deviation"), rows=rows, passed=passed,
        metadata={"n": p.n, "nu": p.nu, "s": p.s, "worst_by_radius": worst_by_r,
                  "deviations_decreasing": decreasing})


def _boundary_decay(p: SpectralParams, r: float) -> complex:
    import cmath
    return cmath.exp(p.n * (p.n - p.nu - p.s) / 2.0 * math.log1p(-r * r))


def forelli_rudin_growth(p: SpectralParams, radii, grid: TorusGrid) -> SweepResult:
    """Kernel mass against its predicted growth rate: rows of

        (r, int |P(rI, U)| dU, (1-r^2)^(n(n-nu-Re s)/2), ratio)

    The grid is refined automatically where the kernel-concentration rule
    requires more points.  Passes when the ratio stays within a factor-10
    band over the radii.
    """
    if not p.in_asymptotic_range:
        raise DomainError(f"requires Re(s) > n-1, got s={p.s}, n={p.n}")
    radii = [validate_radius(r) for r in radii]
    rows = []
    ratios = []
    for r in radii:
        g = grid
        while True:
            try:
                require_kernel_resolution(r, g)
                break
            except DomainError:
                g = g.refined()
        integral = weyl_integrate(
            lambda a: np.abs(poisson_kernel_torus(p, r, a)), g).real
        reference = math.exp(
            p.n * (p.n - p.nu - p.s.real) / 2.0 * math.log1p(-r * r)) if r > 0 else 1.0
        ratio = integral / reference
        ratios.append(ratio)
        rows.append((r, integral, reference, ratio, g.points_per_dim))
    passed = max(ratios) / min(ratios) <= 10.0
    return SweepResult(
        columns=("r", "kernel_mass", "reference", "ratio", "grid_points"),
        rows=rows, passed=passed,
        metadata={"n": p.n, "nu": p.nu, "s": p.s,
                  "band": (min(ratios), max(ratios))})


def norm_sandwich(p: SpectralParams, f: KTypeFunction, pexp: float,
                  radii=DEFAULT_RADII, grid: TorusGrid | None = None) -> SweepResult:
    """Two-sided estimate for the Poisson extension of a K-type function:

        |c(s)| ||f||_p  <=  sup_r (weighted slice norm)  <=  gamma ||f||_p.

    The sup over r is replaced by the max over the radius grid.  The lower
    bound is asserted with a 1e-3 slack; the upper ratio is reported (no
    reference constant is available for it).
    """
    _require_asymptotic(p)
    if f.rank != p.n:
        raise DomainError(f"K-type rank {f.rank} != params rank {p.n}")
    if grid is None:
        grid = TorusGrid(p.n, 32)
    radii = [validate_radius(r) for r in radii]
    fnorm = weyl_integrate(
        lambda a: np.abs(f.evaluate(a)) ** pexp, grid).real ** (1.0 / pexp)
    rows = []
    best = 0.0
    for r in radii:
        slice_norm = hardy_norm(p, f.poisson_slice(p, r), pexp, r, grid)
        best = max(best, slice_norm)
        rows.append((r, slice_norm))
    cmod = abs(c_function(p))
    lower_ok = cmod * fnorm <= (1.0 + 1e-3) * best
    upper_ratio = best / fnorm if fnorm > 0 else math.inf
    return SweepResult(
        columns=("r", "weighted_slice_norm"), rows=rows, passed=lower_ok,
        metadata={"n": p.n, "nu": p.nu, "s": p.s, "p_exponent": pexp,
                  "boundary_norm": fnorm, "hardy_norm": best,
                  "c_modulus": cmod, "lower_bound_holds": lower_ok,
                  "upper_ratio": upper_ratio})


def inversion_experiment(p: SpectralParams, f: KTypeFunction,
                         radii) -> SweepResult:
    """L^2 error of the boundary-inversion approximation.  Per radius the
    recovered K-type coefficients are kappa_m(r) coeffs[m] with

        kappa_m(r) = |c(s)|^-2 (1-r^2)^(-n(n-nu-Re s)) |Phi_m(r)|^2,

    so ||g_r - f||_2^2 = sum_m |kappa_m(r) - 1|^2 |coeffs[m]|^2 / d_m^2.
    Passes when the error is non-increasing along the radii and the final
    error is <= 1e-2 ||f||_2.
    """
    _require_asymptotic(p)
    if f.rank != p.n:
        raise DomainError(f"K-type rank {f.rank} != params rank {p.n}")
    radii = [validate_radius(r) for r in radii]
    if radii != sorted(radii):
        raise DomainError("radii must be increasing")
    cmod2 = abs(c_function(p)) ** 2
    rows = []
    errs = []
    for r in radii:
        weight = math.exp(-p.n * (p.n - p.nu - p.s.real) * math.log1p(-r * r)) \
            if r > 0 else 1.0
        err2 = 0.0
        for m, c in f.items():
            kappa = abs(phi_big(p, m, r)) ** 2 * weight / cmod2
            err2 += abs(kappa - 1.0) ** 2 * abs(c) ** 2 / weyl_dimension(m) ** 2
        err = math.sqrt(err2)
        errs.append(err)
        rows.append((r, err))
    fnorm = f.boundary_norm2()
    monotone = all(errs[i + 1] <= errs[i] * (1.0 + 1e-12)
                   for i in range(len(errs) - 1))
    passed = monotone and errs[-1] <= 1e-2 * fnorm
    return SweepResult(
        columns=("r", "l2_error"), rows=rows, passed=passed,
        metadata={"n": p.n, "nu": p.nu, "s": p.s, "boundary_norm": fnorm,
                  "monotone": monotone, "final_error": errs[-1]})


def eigen_expansion_check(p: SpectralParams, f: KTypeFunction, z: complex,
                          grid: TorusGrid, tol: float = 1e-6) -> CheckReport:
    """Consistency of the K-type expansion with the kernel quadrature at a
    scalar ball point Z = z I (|z| < 1):

        sum_m coeffs[m] Phi_m(|z|) (z/|z|)^|m|
            ==  int P(z I, U) f(U) dU   (class-function quadrature)

    A scalar ball point keeps the integrand a class function of U, which is
    what the torus quadrature computes.
    """
    z = complex(z)
    if f.rank != p.n:
        raise DomainError(f"K-type rank {f.rank} != params rank {p.n}")
    r = abs(z)
    validate_radius(r)
    require_kernel_resolution(r, grid)
    phase = z / r if r > 0 else 1.0
    expansion = 0.0 + 0.0j
    for m, c in f.items():
        expansion += c * phi_big(p, m, r) * phase ** sum(m)
    quad = weyl_integrate(
        lambda a: poisson_kernel_torus(p, z, a) * f.evaluate(a), grid)
    return make_report("eigen_expansion", quad, expansion, tol,
                       n=p.n, nu=p.nu, s=p.s, z=z)
