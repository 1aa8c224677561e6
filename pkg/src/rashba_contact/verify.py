"""Named verification checks behind the ``verify`` CLI command.

Two suites: "paper" pins the reference constants of the model (distinguished
zeros, limiting eigenvalues, the obstruction maximum); "invariants" exercises
structural identities (normalization of Q at +-i, the Herglotz property, norm
identities, cross-route agreement with the quadrature oracle, and the
perturbation-order behaviour).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import oracle, perturbation, spectrum
from .extension import (Hermitian2, effective_couplings, gamma_for_couplings,
                        krein_q, phi_norm_sq)
from .model import SystemParams, series_validity, threshold_sigma

SUITES = ("paper", "invariants", "all")


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    expected: float
    tol: float
    detail: str = ""


def _near(name, measured, expected, tol, detail="") -> CheckResult:
    return CheckResult(name=name, passed=bool(abs(measured - expected) <= tol),
                       measured=float(measured), expected=float(expected),
                       tol=float(tol), detail=detail)


def _bound(name, measured, bound, detail="") -> CheckResult:
    """Pass iff measured <= bound."""
    return CheckResult(name=name, passed=bool(measured <= bound),
                       measured=float(measured), expected=float(bound),
                       tol=0.0, detail=detail or "pass iff measured <= expected")


# --------------------------------------------- reference-constant suite

def check_threshold_17_16() -> CheckResult:
    s = threshold_sigma(SystemParams(2.0, 0.5))
    return _near("threshold-at-(2,1/2)", s, 17.0 / 16.0, 0.0)


def check_large_coupling_constants() -> list[CheckResult]:
    ctx1 = spectrum.large_coupling_context(SystemParams(math.sqrt(2.0 * 0.5), 0.5))
    out = [_near("x_nu1-at-nu-1", ctx1.x_nu_1, 0.76538, 5e-5),
           _near("E_nu1-over-beta-at-nu-1", ctx1.e_nu_1 / 0.5, 1.14643, 5e-5)]
    beta = 2.0 ** 2 / (2.0 * 1e6 ** 2)   # alpha = 2 gives nu = 1e6
    ctx2 = spectrum.large_coupling_context(SystemParams(2.0, beta))
    out.append(_near("x_nu1-at-nu-1e6", ctx2.x_nu_1, 1.16234, 1e-4))
    return out


def check_embedded_074() -> CheckResult:
    params = SystemParams(2.0, 1e-5)
    gm = gamma_for_couplings(params, 1.0, 0.0, 0.0)   # omega_- = 0, gamma = 0
    eff = effective_couplings(params, gm)
    roots = spectrum.embedded_large_alpha(params, eff)
    e = roots[-1].energy if roots else math.nan
    return _near("embedded-energy-at-large-nu", e, 0.74018, 1e-3)


def check_symmetric_eigenvalue() -> CheckResult:
    e = spectrum.symmetric_small_beta_eigenvalue(2.0, 0.0)
    return _near("symmetric-root-alpha-2", e, -1.43923, 1e-4)


def check_r_map_constant() -> CheckResult:
    v = (math.acosh(3.0) - 2.0 * math.sqrt(2.0)) / (2.0 * math.sqrt(2.0) + math.pi)
    return _near("r-map-constant", abs(v), 0.17850, 1e-5)


def check_two_channel_pair() -> list[CheckResult]:
    params = SystemParams(2.0, 0.5)
    roots = spectrum.discrete_eigenvalues(params, Hermitian2.scalar(0.17850))
    es = sorted(r.energy for r in roots)
    if len(es) != 2:
        bad = CheckResult("two-channel-pair-count", False, float(len(es)), 2.0, 0.0)
        return [bad]
    return [_near("two-channel-pair-low", es[0], -1.60313, 1e-3),
            _near("two-channel-pair-high", es[1], -1.37956, 1e-3)]


def check_cnd0_max() -> list[CheckResult]:
    val, arg = perturbation.cnd0_max()
    return [_near("cnd0-max-value", val, -0.14874, 1e-4),
            _near("cnd0-max-location", arg, 1.00553, 1e-3)]


# ----------------------------------------------------------- invariants suite

def check_q_unit_grid() -> CheckResult:
    worst = 0.0
    pts = [(0.0, 0.0)]
    for a in np.linspace(0.0, 1.4, 5):
        for b in np.linspace(0.05, 1.0, 5):
            if threshold_sigma(SystemParams(float(a), float(b))) <= 1.0:
                pts.append((float(a), float(b)))
    for a, b in pts:
        q = krein_q(SystemParams(a, b), 1j)
        worst = max(worst, abs(q.q_pp - 1j), abs(q.q_mm - 1j))
        q = krein_q(SystemParams(a, b), -1j)
        worst = max(worst, abs(q.q_pp + 1j), abs(q.q_mm + 1j))
    return _bound("q-at-unit-imaginary", worst, 1e-10,
                  detail=f"{len(pts)} parameter points")


def check_classical_q() -> CheckResult:
    params = SystemParams(0.0, 0.0)
    worst = 0.0
    zs = [complex(x) for x in np.linspace(-10.0, -0.01, 20)]
    rng = np.random.default_rng(11)
    zs += [complex(rng.uniform(-3, 3), rng.uniform(0.1, 3) * (1 if k % 2 else -1))
           for k in range(10)]
    for z in zs:
        q = krein_q(params, z)
        ref = 1.0 - cmath.sqrt(-2.0 * z)
        worst = max(worst, abs(q.q_pp - ref), abs(q.q_mm - ref))
    return _bound("classical-limit-q", worst, 1e-10)


def check_nevanlinna() -> CheckResult:
    rng = np.random.default_rng(5)
    worst = math.inf
    for _ in range(200):
        params = SystemParams(rng.uniform(0.0, 2.0), rng.uniform(0.0, 1.0))
        z = complex(rng.uniform(-6.0, 6.0), rng.uniform(1e-3, 5.0))
        q = krein_q(params, z)
        worst = min(worst, q.q_pp.imag, q.q_mm.imag)
    return CheckResult("herglotz-upper-half-plane", worst > 0.0, worst, 0.0, 0.0,
                       detail="pass iff measured > 0 (smallest Im Q over 200 draws)")


def check_norm_identities() -> list[CheckResult]:
    out = []
    params = SystemParams(0.8, 0.4)
    out.append(_near("phi-norm-at-i", phi_norm_sq(params, 1, 1j), 1.0, 1e-8))
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(10):
        z = complex(rng.uniform(-4, 2), rng.uniform(0.2, 3))
        for s in (1, -1):
            q = krein_q(params, z)
            worst = max(worst, abs(q.entry(s).imag / z.imag - phi_norm_sq(params, s, z)))
    out.append(_bound("imq-equals-norm", worst, 1e-8))
    return out


def check_oracle_gs() -> CheckResult:
    """Closed form vs momentum quadrature on a small regime-spanning set."""
    from .greens import gs_ren_origin
    cases = [(0.0, 0.5, -1.0), (0.0, 0.5, 1j), (0.3, 0.6, -2.0),
             (0.3, 0.6, -0.8 + 0.7j), (2.0, 0.5, -1.5), (2.0, 0.5, 2j),
             (1.2, 0.2, -3.0), (0.0, 0.0, -1.0), (1.0, 1.0, 1j)]
    worst = 0.0
    for a, b, z in cases:
        params = SystemParams(a, b)
        if not series_validity(params, z).any:
            continue
        for s in (1, -1):
            got = oracle.gs_ren_quadrature(params, s, z, tol=1e-7).value
            ref = gs_ren_origin(params, s, complex(z))
            worst = max(worst, abs(got - ref) / (1.0 + abs(ref)))
    return _bound("oracle-green-agreement", worst, 1e-6)


def check_oracle_sigma() -> CheckResult:
    worst = 0.0
    for a in np.linspace(0.0, 2.0, 5):
        for b in np.linspace(0.0, 1.0, 5):
            p = SystemParams(float(a), float(b))
            worst = max(worst, abs(threshold_sigma(p) - oracle.sigma_numeric(p)))
    return _bound("threshold-vs-dispersion", worst, 1e-10)


def check_theorem1_random() -> CheckResult:
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(8):
        beta = rng.uniform(0.05, 1.0)
        params = SystemParams(0.0, beta)
        wp, wm = rng.uniform(-2, 1.5), rng.uniform(-2, 1.5)
        g = rng.uniform(0.0, 2.0)
        gm = gamma_for_couplings(params, wp, wm, g)
        for r in spectrum.discrete_eigenvalues(params, gm):
            e = r.energy
            closure = abs(g - (wp + math.sqrt(beta - e)) * (wm + math.sqrt(-beta - e)))
            worst = max(worst, closure)
    return _bound("no-coupling-closure", worst, 1e-9)


def check_forbidden_band() -> CheckResult:
    rng = np.random.default_rng(17)
    params = SystemParams(2.0, 0.5)
    worst = -math.inf
    for _ in range(10):
        eff = effective_couplings(
            params, gamma_for_couplings(params, rng.uniform(-2, 2),
                                        rng.uniform(-2, 2), rng.uniform(0, 2)))
        rep = spectrum.forbidden_band_scan(params, eff, grid_size=1000)
        worst = max(worst, rep.max_gamma_required)
    return CheckResult("forbidden-band-negative", worst < 0.0, worst, 0.0, 0.0,
                       detail="pass iff measured < 0")


def check_perturbation_order() -> CheckResult:
    beta = 0.5
    base = SystemParams(0.0, beta)
    gm = Hermitian2(
        pp=gamma_for_couplings(base, 0.8, -0.4, 0.0).pp,
        mm=gamma_for_couplings(base, 0.8, -0.4, 0.0).mm, pm=0j)
    att = perturbation.e2(beta, gm, -beta - 0.4 ** 2)
    errs = []
    for alpha in (0.2, 0.1, 0.05):
        roots = spectrum.discrete_eigenvalues(SystemParams(alpha, beta), gm, tol=1e-13)
        e = min((r.energy for r in roots), key=lambda x: abs(x - att.e0))
        errs.append(abs(e - att.predicted_energy(alpha)))
    ratio = min(errs[0] / errs[1], errs[1] / errs[2])
    return CheckResult("order-alpha-squared", ratio >= 12.0, ratio, 12.0, 0.0,
                       detail="pass iff measured ratio >= 12 (expected 16)")


PAPER_CHECKS = (check_threshold_17_16, check_large_coupling_constants,
                check_embedded_074, check_symmetric_eigenvalue,
                check_r_map_constant, check_two_channel_pair, check_cnd0_max)

INVARIANT_CHECKS = (check_q_unit_grid, check_classical_q, check_nevanlinna,
                    check_norm_identities, check_oracle_gs, check_oracle_sigma,
                    check_theorem1_random, check_forbidden_band,
                    check_perturbation_order)


def run_suite(suite: str) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    funcs = []
    if suite in ("paper", "all"):
        funcs += list(PAPER_CHECKS)
    if suite in ("invariants", "all"):
        funcs += list(INVARIANT_CHECKS)
    results: list[CheckResult] = []
    for fn in funcs:
        got = fn()
        results.extend(got if isinstance(got, list) else [got])
    return results
