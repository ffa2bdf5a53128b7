"""Command-line front end: parameter parsing, experiment dispatch and CSV
emission.

Conventions:
  * the spectral flag --s is the variable s = i*lambda itself (every formula
    in the library is written in s; passing lambda will give wrong results);
  * CSV files start with '#'-prefixed comment lines recording version, the
    full configuration and the seed, followed by one snake_case header row;
    complex columns are split into _re/_im pairs; floats carry 17
    significant digits, so identical configurations give identical bytes;
  * exit codes: 0 all embedded checks pass, 1 a check failed, 2 usage
    error, 3 numerical guard (pole/domain/margin).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .boundary import TorusGrid, fourier_mode_check, spherical_oracle
from .errors import MatballError
from .experiments import (DEFAULT_RADII, KTypeFunction, forelli_rudin_growth,
                          inversion_experiment, key_lemma_sweep, norm_sandwich)
from .hua import hua_residual
from .identities import (e9_identity_check, lemma_a_sides,
                         lemma_b_printed_sign, lemma_b_ratio,
                         lemma_b_resolved_sign)
from .errors import GuardError, PoleError
from .special import SpectralParams
from .spherical import phi_big
from .verify import (draw_appendix_params, oracle_grid, run_all,
                     signatures_up_to)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cannot parse complex number {text!r}; use forms like '3', "
            "'2.5+1i' or '2.5+1j'") from None


def parse_radii(text: str):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from None
    if any(not 0.0 <= v < 1.0 for v in vals):
        raise argparse.ArgumentTypeError("radii must lie in [0, 1)")
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matball",
        description="Poisson kernels, Hua operators and hypergeometric "
                    "determinants on the matrix ball (desk scale).")
    ap.add_argument("--version", action="version", version=f"matball {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, radii_default=None):
        sp.add_argument("--n", type=int, default=2, help="rank (1..3)")
        sp.add_argument("--nu", type=int, default=0, help="integer weight")
        sp.add_argument("--s", type=parse_complex, default=None,
                        help="spectral variable s = i*lambda (NOT lambda), "
                             "e.g. '3' or '2.5+1i'")
        sp.add_argument("--s-re", type=float, default=None)
        sp.add_argument("--s-im", type=float, default=0.0)
        sp.add_argument("--radii", type=parse_radii, default=radii_default)
        sp.add_argument("--grid", type=int, default=32, metavar="N",
                        help="quadrature points per torus dimension")
        sp.add_argument("--fd-step", type=float, default=None, metavar="H",
                        help="finite-difference step (default 1e-3; "
                             "hua-check uses 4e-4)")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", default="-", metavar="PATH",
                        help="CSV output path ('-' for stdout)")
        sp.add_argument("--max-m", type=int, default=2, metavar="M",
                        help="signature truncation |m_i| <= M")

    common(sub.add_parser("phi", help="radial profiles vs quadrature oracle"),
           radii_default=(0.1, 0.3, 0.5, 0.7))
    common(sub.add_parser("kernel", help="kernel Fourier modes vs closed form"),
           radii_default=(0.3, 0.6))
    common(sub.add_parser("hua-check", help="operator eigen-equation residuals"))
    common(sub.add_parser("lemma-a", help="determinant shift identity"),
           radii_default=(0.3, 0.6, 0.9))
    common(sub.add_parser("lemma-b", help="determinant asymptotic ratio"),
           radii_default=(1 - 1e-3, 1 - 1e-4, 1 - 1e-5))
    common(sub.add_parser("e9", help="c-function factorization identity"))
    common(sub.add_parser("key-lemma", help="boundary asymptotic ratios"),
           radii_default=(0.9, 0.99, 0.999, 0.9999))
    common(sub.add_parser("forelli-rudin", help="kernel mass growth"),
           radii_default=(0.5, 0.9, 0.99))
    sw = sub.add_parser("sandwich", help="two-sided norm estimate")
    common(sw, radii_default=DEFAULT_RADII)
    sw.add_argument("--pexp", type=float, default=2.0, help="norm exponent p >= 1")
    common(sub.add_parser("invert", help="boundary-value inversion error"),
           radii_default=(0.9, 0.99, 0.999, 0.9999))
    va = sub.add_parser("verify-all", help="run the full verification suite")
    common(va)
    va.add_argument("--extended", action="store_true",
                    help="include the rank-3 targets (slower)")
    return ap


def resolve_params(args, parser, need_asymptotic=False,
                   need_generic=False) -> SpectralParams:
    if args.s is not None:
        s = args.s
    elif args.s_re is not None:
        s = complex(args.s_re, args.s_im)
    else:
        s = complex(args.n + 1.0)
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    p = SpectralParams(args.n, args.nu, s)
    if need_asymptotic and not p.in_asymptotic_range:
        parser.error(f"s={s} violates Re(s) > n-1 (asymptotic range guard)")
    if need_generic and not p.in_generic_set:
        parser.error(f"s={s} lies on the excluded lattice n-2+/-nu-2k "
                     "(generic-set guard)")
    return p


def format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def write_csv(out_path: str, command: str, config: dict, columns, rows) -> None:
    # split complex columns into _re/_im pairs
    is_complex = [any(isinstance(row[i], (complex, np.complexfloating))
                      for row in rows) for i in range(len(columns))]
    header = []
    for name, cplx in zip(columns, is_complex):
        header.extend([f"{name}_re", f"{name}_im"] if cplx else [name])
    lines = [f"# matball {__version__}", f"# command: {command}"]
    cfg = " ".join(f"{k}={v}" for k, v in sorted(config.items()))
    lines.append(f"# config: {cfg}")
    if "seed" in config:
        lines.append(f"# seed: {config['seed']}")
    lines.append(",".join(header))
    for row in rows:
        cells = []
        for v, cplx in zip(row, is_complex):
            if cplx:
                v = complex(v)
                cells.extend([format_cell(v.real), format_cell(v.imag)])
            else:
                cells.append(format_cell(v))
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _config_of(args, parser_keys=("n", "nu", "grid", "fd_step", "seed", "max_m")):
    cfg = {k: getattr(args, k) for k in parser_keys if hasattr(args, k)}
    if getattr(args, "radii", None) is not None:
        cfg["radii"] = ";".join(f"{r:.17g}" for r in args.radii)
    return cfg


def cmd_phi(args, parser) -> int:
    p = resolve_params(args, parser)
    sigs = list(signatures_up_to(p.n, args.max_m))
    rows = []
    all_ok = True
    for m in sigs:
        for r in args.radii:
            det_val = phi_big(p, m, r)
            grid = oracle_grid(p.n, r) if args.grid <= 48 else TorusGrid(p.n, args.grid)
            orc = spherical_oracle(p, m, r, grid)
            rel = abs(det_val - orc) / max(abs(det_val), 1e-30)
            ok = rel <= 1e-6
            all_ok &= ok
            rows.append((";".join(map(str, m)), r, det_val, orc, rel, ok))
    cfg = _config_of(args); cfg["s"] = p.s
    write_csv(args.out, "phi", cfg,
              ("m", "r", "profile", "oracle", "rel_error", "passed"), rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_kernel(args, parser) -> int:
    p = resolve_params(args, parser)
    rows = []
    all_ok = True
    for k in range(-args.max_m - 1, args.max_m + 2):
        for r in args.radii:
            rep = fourier_mode_check(p, k, r, max(args.grid, 512))
            all_ok &= rep.passed
            rows.append((k, r, rep.computed, rep.reference, rep.rel_error,
                         rep.passed))
    cfg = _config_of(args); cfg["s"] = p.s
    write_csv(args.out, "kernel", cfg,
              ("k", "r", "quadrature", "closed_form", "rel_error", "passed"),
              rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_hua_check(args, parser) -> int:
    p = resolve_params(args, parser, need_generic=True)
    rng = np.random.default_rng(args.seed)
    rows = []
    all_ok = True
    tol = 1e-4
    h = args.fd_step if args.fd_step is not None else 4e-4
    for draw in range(6):
        if p.n == 1:
            Z = np.array([[complex(rng.uniform(0.1, 0.3),
                                   rng.uniform(-0.2, 0.2))]])
            U = np.eye(1)
        else:
            Z = 0.1 * (rng.standard_normal((p.n, p.n))
                       + 1j * rng.standard_normal((p.n, p.n)))
            U, _ = np.linalg.qr(rng.standard_normal((p.n, p.n))
                                + 1j * rng.standard_normal((p.n, p.n)))
        rep = hua_residual(p, Z, U, h=h, tol=tol)
        all_ok &= rep.passed
        rows.append((draw, h, rep.extras["top_residual"],
                     rep.extras["bottom_residual"], rep.passed))
    cfg = _config_of(args); cfg["s"] = p.s; cfg["fd_step"] = h
    write_csv(args.out, "hua-check", cfg,
              ("draw", "h", "top_residual", "bottom_residual", "passed"), rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_lemma_a(args, parser) -> int:
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    rng = np.random.default_rng(args.seed)
    rows = []
    all_ok = True
    for draw in range(20):
        ap = draw_appendix_params(rng, args.n)
        for r in args.radii:
            lhs, rhs = lemma_a_sides(ap, r)
            rel = abs(lhs - rhs) / abs(lhs)
            ok = rel <= 1e-8
            all_ok &= ok
            rows.append((draw, r, lhs, rhs, rel, ok))
    write_csv(args.out, "lemma-a", _config_of(args),
              ("draw", "r", "lhs", "rhs", "rel_error", "passed"), rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_lemma_b(args, parser) -> int:
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    rng = np.random.default_rng(args.seed)
    radii = sorted(args.radii)
    rows = []
    all_ok = True
    for draw in range(5):
        ap = draw_appendix_params(rng, args.n)
        devs = []
        for r in radii:
            ratio = lemma_b_ratio(ap, r)
            dev = abs(ratio - 1.0)
            devs.append(dev)
            rows.append((draw, r, ratio, dev,
                         lemma_b_resolved_sign(args.n),
                         lemma_b_printed_sign(args.n)))
        all_ok &= devs[-1] <= 5e-2 and devs[-1] <= devs[0]
    write_csv(args.out, "lemma-b", _config_of(args),
              ("draw", "r", "ratio", "deviation", "resolved_sign",
               "printed_sign"), rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_e9(args, parser) -> int:
    rows = []
    all_ok = True
    for n in (1, 2, 3):
        for nu in range(-3, 4):
            for s in (n - 0.4, n + 1.0, n + 2.5, complex(n + 1, 1.0)):
                try:
                    rep = e9_identity_check(SpectralParams(n, nu, s))
                except (PoleError, GuardError):
                    continue
                all_ok &= rep.passed
                rows.append((n, nu, complex(s), rep.computed, rep.reference,
                             rep.rel_error, rep.passed))
    write_csv(args.out, "e9", _config_of(args),
              ("n", "nu", "s", "lhs", "rhs", "rel_error", "passed"), rows)
    return EXIT_PASS if all_ok else EXIT_CHECK_FAILED


def cmd_key_lemma(args, parser) -> int:
    p = resolve_params(args, parser, need_asymptotic=True, need_generic=True)
    sigs = [m for m in signatures_up_to(p.n, args.max_m)]
    sweep = key_lemma_sweep(p, sigs, sorted(args.radii))
    cfg = _config_of(args); cfg["s"] = p.s
    write_csv(args.out, "key-lemma", cfg, sweep.columns, sweep.rows)
    return EXIT_PASS if sweep.passed else EXIT_CHECK_FAILED


def cmd_forelli_rudin(args, parser) -> int:
    p = resolve_params(args, parser, need_asymptotic=True)
    sweep = forelli_rudin_growth(p, sorted(args.radii),
                                 TorusGrid(p.n, max(args.grid, 32)))
    cfg = _config_of(args); cfg["s"] = p.s
    write_csv(args.out, "forelli-rudin", cfg, sweep.columns, sweep.rows)
    return EXIT_PASS if sweep.passed else EXIT_CHECK_FAILED


def _default_ktype(n: int) -> KTypeFunction:
    if n == 1:
        return KTypeFunction({(0,): 1.0, (1,): 0.5 - 0.25j})
    base = {(0,) * n: 1.0}
    base[(1,) + (0,) * (n - 1)] = 0.5 - 0.25j
    return KTypeFunction(base)


def cmd_sandwich(args, parser) -> int:
    p = resolve_params(args, parser, need_asymptotic=True, need_generic=True)
    if args.pexp < 1.0:
        parser.error(f"--pexp must be >= 1, got {args.pexp}")
    f = _default_ktype(p.n)
    sweep = norm_sandwich(p, f, args.pexp, sorted(args.radii),
                          TorusGrid(p.n, max(args.grid, 32)))
    cfg = _config_of(args); cfg["s"] = p.s; cfg["pexp"] = args.pexp
    rows = sweep.rows + []
    write_csv(args.out, "sandwich", cfg, sweep.columns, rows)
    md = sweep.metadata
    print(f"lower bound |c| ||f||_p = {md['c_modulus'] * md['boundary_norm']:.6g}"
          f" <= hardy norm = {md['hardy_norm']:.6g}; "
          f"upper ratio = {md['upper_ratio']:.6g}", file=sys.stderr)
    return EXIT_PASS if sweep.passed else EXIT_CHECK_FAILED


def cmd_invert(args, parser) -> int:
    p = resolve_params(args, parser, need_asymptotic=True, need_generic=True)
    f = _default_ktype(p.n)
    sweep = inversion_experiment(p, f, sorted(args.radii))
    cfg = _config_of(args); cfg["s"] = p.s
    write_csv(args.out, "invert", cfg, sweep.columns, sweep.rows)
    return EXIT_PASS if sweep.passed else EXIT_CHECK_FAILED


def cmd_verify_all(args, parser) -> int:
    results, elapsed = run_all(extended=args.extended,
                               emit=lambda line: print(line, file=sys.stderr))
    print(f"suite finished in {elapsed:.1f}s", file=sys.stderr)
    rows = [(res.name, res.passed,
             "; ".join(f"{k}={v}" for k, v in res.details.items()))
            for res in results]
    cfg = _config_of(args)
    cfg["extended"] = args.extended
    write_csv(args.out, "verify-all", cfg, ("criterion", "passed", "details"),
              rows)
    return EXIT_PASS if all(r.passed for r in results) else EXIT_CHECK_FAILED


COMMANDS = {
    "phi": cmd_phi,
    "kernel": cmd_kernel,
    "hua-check": cmd_hua_check,
    "lemma-a": cmd_lemma_a,
    "lemma-b": cmd_lemma_b,
    "e9": cmd_e9,
    "key-lemma": cmd_key_lemma,
    "forelli-rudin": cmd_forelli_rudin,
    "sandwich": cmd_sandwich,
    "invert": cmd_invert,
    "verify-all": cmd_verify_all,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except MatballError as exc:
        print(f"numerical guard: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
