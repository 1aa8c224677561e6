"""Command-line front end.

Subcommands: ``qfunc`` (Q-matrix at one energy), ``solve`` (classified point
spectrum), ``sweep`` (eigenvalues against the scalar contact strength c),
``expand`` (small-coupling expansion data), ``verify`` (named check suites).

Exit codes: 0 success, 1 verification failure, 2 domain/usage error,
3 solver or quadrature non-convergence.  JSON output is deterministic: keys
sorted, floats printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify as _verify
from .errors import ConvergenceError, DomainError, SingularMatrixError
from .extension import (ExtensionKind, Hermitian2, gamma_from_cr, krein_q,
                        secular_det)
from .model import SystemParams
from .perturbation import asymptotic_eigenvalues, expansion_coefficients
from .spectrum import SpectrumReport, discrete_eigenvalues, solve_spectrum

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    coupling: Hermitian2 | ExtensionKind | None
    tol: float
    output: str
    out_path: str | None


# ------------------------------------------------------- deterministic output

def _fmt_float(x: float) -> str:
    return f"{x:.17g}"


def dumps(obj) -> str:
    """Compact JSON with sorted keys and 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in sorted(obj.items()))
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _report_csv(report: SpectrumReport) -> str:
    lines = ["regime,sigma,kind,E,residual,label"]
    meta = f"{report.regime.regime.value},{_fmt_float(report.regime.sigma)}"
    for r in report.discrete:
        lines.append(f"{meta},discrete,{_fmt_float(r.energy)},"
                     f"{_fmt_float(r.residual)},{r.method.value}")
    for r in report.embedded:
        lines.append(f"{meta},embedded,{_fmt_float(r.energy)},"
                     f"{_fmt_float(r.condition_residual)},{r.theorem}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ argument wiring

def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, required=True,
                   help="spin-orbit-coupling strength (>= 0)")
    p.add_argument("--beta", type=float, required=True,
                   help="Zeeman field strength (>= 0)")


def _add_tol(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10,
                   help="solver tolerance in [1e-14, 1e-2] (default 1e-10)")


def _add_coupling(p: argparse.ArgumentParser, *, allow_extensions: bool) -> None:
    p.add_argument("--gamma-file", type=str, default=None,
                   help='coupling matrix JSON {"pp","mm","pm_re","pm_im"}')
    p.add_argument("--c", type=float, default=None,
                   help="scalar contact strength, C = c*I")
    p.add_argument("--r", type=float, default=None,
                   help="scalar admissible matrix, R = r*I")
    if allow_extensions:
        p.add_argument("--trivial", action="store_true",
                       help="the uncoupled operator (C = 0)")
        p.add_argument("--friedrichs", action="store_true",
                       help="the Friedrichs extension (C^{-1} = 0)")


def _parse_coupling(parser, args, *, required: bool):
    variants = 0
    coupling = None
    if args.gamma_file is not None:
        variants += 1
        try:
            data = json.loads(Path(args.gamma_file).read_text(encoding="utf-8"))
        except OSError as exc:
            parser.error(f"cannot read --gamma-file: {exc}")
        coupling = Hermitian2.from_json_dict(data)
    if args.c is not None:
        variants += 1
        if args.r is None:
            parser.error("--c requires --r (the admissible scalar)")
        coupling = gamma_from_cr(Hermitian2.scalar(args.c), Hermitian2.scalar(args.r))
    elif args.r is not None and args.gamma_file is None and not getattr(args, "trivial", False) \
            and not getattr(args, "friedrichs", False):
        parser.error("--r requires --c")
    if getattr(args, "trivial", False):
        variants += 1
        coupling = ExtensionKind.TRIVIAL
    if getattr(args, "friedrichs", False):
        variants += 1
        coupling = ExtensionKind.FRIEDRICHS
    if variants > 1:
        parser.error("give exactly one coupling: --gamma-file, --c with --r, "
                     "--trivial, or --friedrichs")
    if required and variants == 0:
        parser.error("a coupling is required: --gamma-file, --c with --r, "
                     "--trivial, or --friedrichs")
    return coupling


def _config(parser, args, *, coupling_required: bool) -> RunConfig:
    if not (1e-14 <= args.tol <= 1e-2):
        parser.error(f"--tol must lie in [1e-14, 1e-2], got {args.tol}")
    try:
        params = SystemParams(args.alpha, args.beta)
    except DomainError as exc:
        parser.error(str(exc))
    coupling = _parse_coupling(parser, args, required=coupling_required)
    return RunConfig(params=params, coupling=coupling, tol=args.tol,
                     output=getattr(args, "format", "json"),
                     out_path=getattr(args, "out", None))


# ----------------------------------------------------------------- commands

def cmd_qfunc(parser, args) -> int:
    cfg = _config(parser, args, coupling_required=False)
    z = complex(args.z_re, args.z_im)
    q = krein_q(cfg.params, z)
    out = {"z_re": z.real, "z_im": z.imag,
           "q_pp_re": q.q_pp.real, "q_pp_im": q.q_pp.imag,
           "q_mm_re": q.q_mm.real, "q_mm_im": q.q_mm.imag}
    if isinstance(cfg.coupling, Hermitian2):
        det = secular_det(cfg.params, cfg.coupling, z)
        out["det_re"] = det.real
        out["det_im"] = det.imag
    _emit(dumps(out), cfg.out_path)
    return EXIT_OK


def cmd_solve(parser, args) -> int:
    cfg = _config(parser, args, coupling_required=True)
    report = solve_spectrum(cfg.params, cfg.coupling, tol=cfg.tol, e_min=args.e_min)
    if cfg.output == "csv":
        _emit(_report_csv(report), cfg.out_path)
    else:
        _emit(dumps(report.to_json_dict()), cfg.out_path)
    return EXIT_OK


def cmd_sweep(parser, args) -> int:
    if args.steps < 2:
        parser.error("--steps must be at least 2")
    if not (1e-14 <= args.tol <= 1e-2):
        parser.error(f"--tol must lie in [1e-14, 1e-2], got {args.tol}")
    beta = args.beta if args.beta is not None else args.beta_epsilon
    try:
        params = SystemParams(args.alpha, beta)
    except DomainError as exc:
        parser.error(str(exc))

    import numpy as np
    if args.log:
        if args.c_from * args.c_to <= 0.0:
            parser.error("--log requires c-from and c-to nonzero with equal signs")
        cs = np.geomspace(args.c_from, args.c_to, args.steps) if args.c_from > 0 \
            else -np.geomspace(-args.c_from, -args.c_to, args.steps)
    else:
        cs = np.linspace(args.c_from, args.c_to, args.steps)

    rows = []
    for c in cs:
        c = float(c)
        if c == 0.0:
            if not args.allow_free:
                parser.error("c = 0 in the grid is the uncoupled operator; "
                             "pass --allow-free to emit an empty row instead")
            rows.append((c, []))
            continue
        gm = gamma_from_cr(Hermitian2.scalar(c), Hermitian2.scalar(args.r))
        roots = discrete_eigenvalues(params, gm, tol=args.tol)
        rows.append((c, sorted(r.energy for r in roots)))

    width = max((len(es) for _, es in rows), default=0)
    header = "c" + "".join(f",E_{k + 1}" for k in range(width))
    lines = [header]
    for c, es in rows:
        cells = [_fmt_float(c)] + [_fmt_float(e) for e in es] + [""] * (width - len(es))
        lines.append(",".join(cells))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_expand(parser, args) -> int:
    cfg = _config(parser, args, coupling_required=True)
    if not isinstance(cfg.coupling, Hermitian2):
        parser.error("expand requires a finite coupling matrix")
    asym = asymptotic_eigenvalues(cfg.params, cfg.coupling)   # RegimeError -> exit 2
    co = expansion_coefficients(cfg.params.beta, cfg.coupling)
    roots = []
    for entry in asym.entries:
        e2v = list(entry.e2) if isinstance(entry.e2, tuple) else entry.e2
        pred = entry.predicted_energy(cfg.params.alpha)
        roots.append({"e0": entry.e0, "e2": e2v, "branch": entry.branch.value,
                      "energy": list(pred) if isinstance(pred, tuple) else pred})
    out = {
        "coefficients": {
            "n0_plus": co.n0[0], "n0_minus": co.n0[1],
            "n1_plus": co.n1[0], "n1_minus": co.n1[1],
            "l0_plus": co.l0[0], "l0_minus": co.l0[1],
            "l1_plus": co.l1[0], "l1_minus": co.l1[1],
            "eta_pp": co.eta[0], "eta_mm": co.eta[1], "eta_pm": co.eta[2],
            "omega0_plus": co.omega0[0], "omega0_minus": co.omega0[1],
            "omega1_plus": co.omega1[0], "omega1_minus": co.omega1[1],
            "gamma0": co.gamma0,
        },
        "roots": roots,
        "gamma_circle_residual": asym.gamma_circle_residual,
        "threshold_persists": asym.threshold_persists,
    }
    _emit(dumps(out), cfg.out_path)
    return EXIT_OK


def cmd_verify(parser, args) -> int:
    results = _verify.run_suite(args.suite)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        line = (f"{status} {r.name}: measured={r.measured:.10g} "
                f"expected={r.expected:.10g} tol={r.tol:.3g}")
        if r.detail:
            line += f" [{r.detail}]"
        print(line)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rashba-contact",
        description="Point spectrum of the 3D Rashba Hamiltonian with a "
                    "spin-dependent contact interaction")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qfunc", help="evaluate the Q-matrix at one energy")
    _add_params(q)
    _add_tol(q)
    q.add_argument("--z-re", type=float, required=True)
    q.add_argument("--z-im", type=float, default=0.0)
    _add_coupling(q, allow_extensions=False)
    q.add_argument("--out", type=str, default=None)
    q.set_defaults(func=cmd_qfunc)

    s = sub.add_parser("solve", help="classified point spectrum for one coupling")
    _add_params(s)
    _add_tol(s)
    _add_coupling(s, allow_extensions=True)
    s.add_argument("--e-min", type=float, default=None,
                   help="lower end of the discrete search window")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out", type=str, default=None)
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="eigenvalues against the scalar contact "
                                     "strength c with C = c*I, R = r*I")
    w.add_argument("--alpha", type=float, required=True)
    w.add_argument("--beta", type=float, default=None,
                   help="Zeeman strength; omit to use --beta-epsilon")
    w.add_argument("--beta-epsilon", type=float, default=1e-6,
                   help="stand-in for 'beta arbitrarily close to 0' (default 1e-6)")
    _add_tol(w)
    w.add_argument("--r", type=float, required=True)
    w.add_argument("--c-from", type=float, required=True)
    w.add_argument("--c-to", type=float, required=True)
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--log", action="store_true", help="logarithmic c grid")
    w.add_argument("--allow-free", action="store_true",
                   help="emit an empty row at c = 0 instead of failing")
    w.add_argument("--out", type=str, default=None)
    w.set_defaults(func=cmd_sweep, gamma_file=None, c=None)

    e = sub.add_parser("expand", help="small-coupling expansion data")
    _add_params(e)
    _add_tol(e)
    _add_coupling(e, allow_extensions=False)
    e.add_argument("--out", type=str, default=None)
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", choices=_verify.SUITES, default="all")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ConvergenceError as exc:
        print(f"error (non-convergence): {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (DomainError, SingularMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
