"""Root finding on the secular equation and eigenvalue classification.

Discrete eigenvalues are located as real zeros of det(Gamma - Q(E)) below the
band edge; embedded eigenvalues come from the closed classification of the
no-coupling case (theorem tag "T1") and of the large-coupling case ("T3").
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, RegimeError
from .extension import (EffectiveCouplings, ExtensionKind, Hermitian2,
                        effective_couplings, krein_q, secular_det)
from .greens import _reject_near_pole, artanh_branch, xi
from .model import (Regime, RegimeInfo, SystemParams, classify_regime,
                    series_validity, threshold_sigma)

_GRID_NODES = 2048
_NU_WARN = 1e8
_EPS = np.finfo(float).eps


class RootMethod(enum.Enum):
    SIGN_CHANGE = "sign-change"
    EVEN_ORDER = "even-order"


@dataclass(frozen=True)
class DiscreteRoot:
    energy: float
    residual: float
    method: RootMethod


@dataclass(frozen=True)
class EmbeddedRoot:
    energy: float
    condition_residual: float
    theorem: str                  # "T1" or "T3"
    series_valid: bool = True


@dataclass(frozen=True)
class LargeCouplingContext:
    """nu and the distinguished zeros of U_nu and V_nu with their energies."""

    nu: float
    x_nu_1: float
    e_nu_1: float
    x_nu_2: float | None = None
    e_nu_2: float | None = None


@dataclass(frozen=True)
class ForbiddenBandReport:
    """Largest gamma the band (-Sigma, beta) would require; negative means empty."""

    max_gamma_required: float
    band: tuple[float, float]
    grid_size: int


@dataclass(frozen=True)
class SpectrumReport:
    regime: RegimeInfo
    continuous_edge: float
    discrete: tuple[DiscreteRoot, ...]
    embedded: tuple[EmbeddedRoot, ...]

    def to_json_dict(self) -> dict:
        return {
            "regime": self.regime.regime.value,
            "sigma": self.regime.sigma,
            "discrete": [{"E": r.energy, "residual": r.residual} for r in self.discrete],
            "embedded": [{"E": r.energy, "residual": r.condition_residual,
                          "theorem": r.theorem} for r in self.embedded],
        }


def secular_function(params: SystemParams, eff: EffectiveCouplings, e: float) -> complex:
    """gamma minus the product of the two channel factors at real energy E.

    Channel factor: omega_s +- 1/(2 xi(E)) - (alpha/2 - s*beta/alpha) *
    artanh(alpha*xi(E)), upper sign for E < beta, lower for E >= beta; at
    alpha = 0 the artanh term is replaced by its limit -s*beta*xi(E).
    Zeros coincide with those of det(Gamma - Q(E)).
    """
    a, b = params.alpha, params.beta
    e = float(e)
    _reject_near_pole(params, complex(e))
    x = xi(params, complex(e)).value
    sgn = 1.0 if e < b else -1.0
    ar = artanh_branch(a * x) if a != 0.0 else 0j
    prod = complex(1.0)
    for s in (1, -1):
        if a == 0.0:
            tail = -s * b * x
        else:
            tail = (a / 2.0 - s * b / a) * ar
        prod *= eff.omega(s) + sgn / (2.0 * x) - tail
    return eff.gamma - prod


def _bisect(f, lo: float, hi: float, f_lo: float, tol: float) -> float:
    """Bisection on a sign-change bracket, then one guarded secant polish.

    Converges well past the requested tol (to ~1e-15 relative) so that the
    residual stays at the noise floor even where the derivative is large,
    e.g. next to the band-edge pole.
    """
    neg = f_lo < 0.0
    a, b = lo, hi
    goal = min(tol, 1e-15)
    for _ in range(200):
        m = 0.5 * (a + b)
        if b - a <= goal * max(1.0, abs(m)):
            break
        if (f(m) < 0.0) == neg:
            a = m
        else:
            b = m
    m = 0.5 * (a + b)
    fm = f(m)
    fa = f(a)
    if fm != fa and math.isfinite(fm) and math.isfinite(fa):
        sec = m - fm * (m - a) / (fm - fa)
        if lo <= sec <= hi and abs(f(sec)) < abs(fm):
            return sec
    return m


def _golden_min(g, lo: float, hi: float, iters: int = 100) -> float:
    """Fixed-iteration golden-section minimizer of g on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
        if b - a <= abs(0.5 * (a + b)) * 1e-16:
            break
    return 0.5 * (a + b)


def _root_scan(f, grid: np.ndarray, tol: float, *, det_scale=None):
    """Sign-change bracketing plus |f|-minimum refinement over a prepared grid.

    A local minimum of |f| with no sign change is refined; if the refined value
    crosses zero the cell is split into two simple brackets, otherwise a value
    at the noise floor is reported as a single even-order root.
    """
    vals = np.array([f(e) for e in grid])
    simple: list[float] = []
    double: list[float] = []

    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            simple.append(float(grid[i]))
        elif (vals[i] < 0.0) != (vals[i + 1] < 0.0):
            simple.append(_bisect(f, grid[i], grid[i + 1], vals[i], tol))
    if vals[-1] == 0.0:
        simple.append(float(grid[-1]))

    absvals = np.abs(vals)
    for i in range(1, len(grid) - 1):
        if not (absvals[i] <= absvals[i - 1] and absvals[i] <= absvals[i + 1]):
            continue
        same_sign = (vals[i - 1] < 0.0) == (vals[i] < 0.0) == (vals[i + 1] < 0.0)
        if not same_sign:
            continue   # already handled by a sign-change bracket
        lo, hi = float(grid[i - 1]), float(grid[i + 1])
        e_star = _golden_min(lambda e: abs(f(e)), lo, hi)
        f_star = f(e_star)
        if (f_star < 0.0) != (vals[i - 1] < 0.0):
            # dipped through zero: a close pair of simple roots
            simple.append(_bisect(f, lo, e_star, vals[i - 1], tol))
            simple.append(_bisect(f, e_star, hi, f_star, tol))
            continue
        scale = det_scale(e_star) if det_scale is not None else max(
            1.0, abs(vals[i - 1]), abs(vals[i + 1]))
        if abs(f_star) <= max(tol * tol, (1e3 * _EPS) ** 2) * scale:
            double.append(e_star)
    return simple, double


def discrete_eigenvalues(params: SystemParams, gamma_matrix: Hermitian2, *,
                         e_min: float | None = None, tol: float = 1e-10,
                         grid_nodes: int = _GRID_NODES) -> tuple[DiscreteRoot, ...]:
    """All real zeros of det(Gamma - Q(E)) on [e_min, -Sigma).

    Bracketing runs on a grid log-spaced in the distance to the band edge
    (roots accumulate there), refined by bisection to |dE| <= tol*max(1,|E|).
    Even-order roots are recovered from local minima of |det|.
    """
    sigma = threshold_sigma(params)
    eff = effective_couplings(params, gamma_matrix)
    if e_min is None:
        wscale = max(abs(eff.omega_plus), abs(eff.omega_minus), math.sqrt(eff.gamma))
        e_min = -max(100.0, 10.0 * (1.0 + sigma + wscale * wscale))
    if e_min >= -sigma:
        raise DomainError(f"e_min = {e_min} must lie below the band edge {-sigma}")

    def f(e: float) -> float:
        return secular_det(params, gamma_matrix, complex(e)).real

    def local_scale(e: float) -> float:
        # magnitude of the entries whose rounding sets the |det| noise floor
        q = krein_q(params, complex(e))
        mag = max(1.0, abs(gamma_matrix.pp), abs(gamma_matrix.mm),
                  abs(gamma_matrix.pm), abs(q.q_pp), abs(q.q_mm))
        return mag * mag

    guard = 1e-9 * max(1.0, sigma)
    u = np.geomspace(guard, -e_min - sigma, grid_nodes)
    grid = (-sigma - u)[::-1]
    simple, double = _root_scan(f, grid, tol, det_scale=local_scale)

    roots = [DiscreteRoot(e, abs(f(e)), RootMethod.SIGN_CHANGE) for e in simple]
    roots += [DiscreteRoot(e, abs(f(e)), RootMethod.EVEN_ORDER) for e in double]
    roots.sort(key=lambda r: r.energy)

    merged: list[DiscreteRoot] = []
    for r in roots:
        if merged and abs(r.energy - merged[-1].energy) <= 10.0 * tol * max(1.0, abs(r.energy)):
            continue
        merged.append(r)

    for r in merged:
        sf = abs(secular_function(params, eff, r.energy))
        if sf > 1e-5 * (1.0 + abs(eff.gamma)):
            warnings.warn(f"root {r.energy} has secular residual {sf:.3e}; "
                          "formulations disagree", stacklevel=2)
    return tuple(merged)


def embedded_alpha0(beta: float, eff: EffectiveCouplings, *,
                    tol: float = 1e-10) -> tuple[EmbeddedRoot, ...]:
    """Embedded singletons of the alpha = 0 classification (tag "T1").

    {-beta} iff gamma = (omega_+ + sqrt(2*beta))*omega_-;
    {beta - omega_+^2} iff gamma = 0 and -sqrt(2*beta) < omega_+ < 0;
    {beta} iff gamma = omega_- = 0.  No embedded points for beta = 0.
    """
    beta = float(beta)
    if beta < 0.0:
        raise DomainError("beta must be nonnegative")
    if beta == 0.0:
        return ()
    wp, wm, g = eff.omega_plus, eff.omega_minus, eff.gamma
    out = []
    r1 = abs(g - (wp + math.sqrt(2.0 * beta)) * wm)
    if r1 <= tol * (1.0 + abs(g)):
        out.append(EmbeddedRoot(-beta, r1, "T1"))
    if g <= tol and -math.sqrt(2.0 * beta) < wp < 0.0:
        out.append(EmbeddedRoot(beta - wp * wp, g, "T1"))
    if g <= tol and abs(wm) <= tol:
        out.append(EmbeddedRoot(beta, max(g, abs(wm)), "T1"))
    return tuple(sorted(out, key=lambda r: r.energy))


def _check_uvx(nu: float, x: float) -> None:
    if not nu >= 1.0:
        raise DomainError(f"nu must satisfy nu >= 1, got {nu}")
    if not 0.0 < x <= nu:
        raise DomainError(f"x must lie in (0, nu], got x = {x} with nu = {nu}")


def u_nu(nu: float, x: float) -> float:
    """U_nu(x) = (((nu^2+1)/nu^2) arctan(x) - 1/x)/x on (0, nu]."""
    _check_uvx(nu, x)
    n2 = nu * nu
    return ((n2 + 1.0) / n2 * math.atan(x) - 1.0 / x) / x


def v_nu(nu: float, x: float) -> float:
    """V_nu(x) = (nu^2/(nu^2+1)) U_nu(x) (2 - (nu^2-1) x^2 U_nu(x))."""
    _check_uvx(nu, x)
    n2 = nu * nu
    u = u_nu(nu, x)
    return n2 / (n2 + 1.0) * u * (2.0 - (n2 - 1.0) * x * x * u)


def e_nu(beta: float, nu: float, x: float) -> float:
    """E_nu(x) = beta (nu^4 + x^4)/(2 (nu x)^2); equals beta at x = nu."""
    if beta <= 0.0:
        raise DomainError("E_nu requires beta > 0")
    _check_uvx(nu, x)
    return beta * (nu ** 4 + x ** 4) / (2.0 * (nu * x) ** 2)


def _bracket_roots(f, lo: float, hi: float, n: int = 4000) -> list[float]:
    """All sign-change roots of f on [lo, hi], endpoints included when |f| ~ 0."""
    grid = np.geomspace(lo, hi, n) if hi / lo > 50.0 else np.linspace(lo, hi, n)
    vals = np.array([f(x) for x in grid])
    fscale = float(np.max(np.abs(vals))) + 1e-300
    roots: list[float] = []
    if abs(vals[0]) <= 1e-12 * fscale:
        roots.append(float(grid[0]))
    for i in range(len(grid) - 1):
        if (vals[i] < 0.0) != (vals[i + 1] < 0.0):
            roots.append(_bisect(f, float(grid[i]), float(grid[i + 1]), float(vals[i]), 1e-13))
    if abs(vals[-1]) <= 1e-12 * fscale:
        roots.append(float(grid[-1]))
    out: list[float] = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-10 * max(1.0, abs(r)):
            out.append(r)
    return out


def large_coupling_context(params: SystemParams) -> LargeCouplingContext:
    """x_{nu,1} (zero of U_nu), x_{nu,2} (second zero of V_nu, when <= nu),
    and their energies."""
    info = classify_regime(params)
    if info.regime is not Regime.CASE_C:
        raise RegimeError(
            "large-coupling context requires sqrt(2*beta) <= alpha with beta > 0")
    nu = info.nu
    if nu > _NU_WARN:
        warnings.warn(f"nu = {nu:.3g} is extreme; V_nu approaches its singular "
                      "nu -> inf limit", stacklevel=2)
    b = params.beta

    # U_nu is negative at x = 0.5 and positive at min(nu, 2) for every nu >= 1
    hi = min(nu, 2.0)
    x1 = _bisect(lambda x: u_nu(nu, x), 0.5, hi, u_nu(nu, 0.5), 1e-14)

    x2 = None
    if nu > 1.0 + 1e-12:
        g = lambda x: u_nu(nu, x) - 2.0 / ((nu * nu - 1.0) * x * x)
        candidates = [r for r in _bracket_roots(g, x1, nu, n=2000)
                      if r > x1 * (1.0 + 1e-9)]
        if candidates:
            x2 = candidates[0]
    return LargeCouplingContext(nu=nu, x_nu_1=x1, e_nu_1=e_nu(b, nu, x1),
                                x_nu_2=x2,
                                e_nu_2=e_nu(b, nu, x2) if x2 is not None else None)


def embedded_large_alpha(params: SystemParams, eff: EffectiveCouplings, *,
                         tol: float = 1e-8) -> tuple[EmbeddedRoot, ...]:
    """Embedded eigenvalues of the large-coupling case (tag "T3").

    Solves the linear constraint 2*omega_- = x^2 U_nu(x) sum_s omega_s (nu^2+s)
    for x in [x_{nu,1}, nu] by bracketing, then accepts x iff the remaining
    condition gamma = omega_+ omega_- + (beta/2) V_nu(x) holds within
    tol*(1+|gamma|).  When both omegas vanish the linear constraint is
    trivially satisfied and the gamma condition is bracketed directly.
    """
    ctx = large_coupling_context(params)
    nu, b = ctx.nu, params.beta
    wp, wm, g = eff.omega_plus, eff.omega_minus, eff.gamma
    n2 = nu * nu
    acoef = (n2 + 1.0) * wp + (n2 - 1.0) * wm
    wscale = abs(wp) + abs(wm) + math.sqrt(g) + 1.0

    def gamma_gap(x: float) -> float:
        return g - wp * wm - 0.5 * b * v_nu(nu, x)

    if abs(wm) <= 1e-14 * wscale and abs(acoef) <= 1e-14 * wscale * n2:
        xs = _bracket_roots(gamma_gap, ctx.x_nu_1, nu)
    else:
        h = lambda x: 2.0 * wm - x * x * u_nu(nu, x) * acoef
        xs = _bracket_roots(h, ctx.x_nu_1, nu)

    out = []
    for x in xs:
        res = abs(gamma_gap(x))
        if res <= tol * (1.0 + abs(g)):
            e = e_nu(b, nu, x)
            out.append(EmbeddedRoot(e, res, "T3",
                                    series_valid=series_validity(params, complex(e)).any))
    return tuple(sorted(out, key=lambda r: r.energy))


def _gamma_required(params: SystemParams, wp: float, wm: float, e: float) -> float:
    """The gamma value the two-channel phase constraint would force at energy E.

    Built from the in-band decomposition into a_s (real parts) and b_s
    (imaginary parts) of the channel factors; both b_s share a sign inside
    (-Sigma, beta), so the result is strictly negative there.
    """
    a, b = params.alpha, params.beta
    x = xi(params, complex(e)).value
    inv2 = 1.0 / (2.0 * x)
    ar = artanh_branch(a * x)
    r, t = ar.real, ar.imag
    ab = {}
    for s, w in ((1, wp), (-1, wm)):
        a_s = w + inv2.real - r * (a / 2.0 - s * b / a)
        b_s = -inv2.imag + t * (a / 2.0 + s * b / a)
        ab[s] = (a_s, b_s)
    (ap, bp), (_, bm) = ab[1], ab[-1]
    return -(bp / bm) * (ap * ap + bp * bp)


def forbidden_band_scan(params: SystemParams, eff: EffectiveCouplings,
                        grid_size: int = 1000) -> ForbiddenBandReport:
    """Scan (-Sigma, beta) and report the largest gamma the constraints would
    require; a negative maximum certifies the band holds no eigenvalue for
    any admissible gamma >= 0."""
    info = classify_regime(params)
    if info.regime is not Regime.CASE_C:
        raise RegimeError("the forbidden-band argument applies to the "
                          "large-coupling regime only")
    sigma, b = info.sigma, params.beta
    delta = 1e-6 * max(1.0, sigma + b)
    grid = np.linspace(-sigma + delta, b - delta, grid_size)
    worst = -math.inf
    for e in grid:
        worst = max(worst, _gamma_required(params, eff.omega_plus,
                                           eff.omega_minus, float(e)))
    return ForbiddenBandReport(max_gamma_required=worst, band=(-sigma, b),
                               grid_size=grid_size)


def symmetric_small_beta_eigenvalue(alpha: float, omega: float) -> float:
    """Root E < -alpha^2/4 of omega + sqrt(-E) = (alpha/2) artanh(alpha/(2 sqrt(-E))).

    In u = sqrt(-E) the mismatch is strictly increasing, from -inf at the
    artanh boundary u = alpha/2, so plain bisection applies.
    """
    alpha = float(alpha)
    if alpha <= 0.0:
        raise DomainError("requires alpha > 0 (at alpha = 0 the root is -omega^2 for omega < 0)")
    half = alpha / 2.0

    def f(u: float) -> float:
        return omega + u - half * math.atanh(half / u)

    lo = half * (1.0 + 1e-13)
    f_lo = f(lo)
    if f_lo > 0.0:
        raise ConvergenceError(
            f"no resolvable root: mismatch already {f_lo:.6g} > 0 at the artanh "
            f"boundary u = {lo:.6g} (upper end {f(half + 10.0 + abs(omega)):.6g})",
            value=None)
    hi = max(1.0, alpha) + abs(omega) + 1.0
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise ConvergenceError("upper bracket for the symmetric root not found")
    u = _bisect(f, lo, hi, f_lo, 1e-14)
    return -u * u


def solve_spectrum(params: SystemParams, coupling: Hermitian2 | ExtensionKind, *,
                   tol: float = 1e-10, e_min: float | None = None) -> SpectrumReport:
    """Full classified point spectrum for one coupling.

    The trivial and Friedrichs extensions bypass the secular machinery: their
    spectrum is purely continuous, so the report carries only the band edge.
    """
    info = classify_regime(params)
    if isinstance(coupling, ExtensionKind):
        return SpectrumReport(regime=info, continuous_edge=-info.sigma,
                              discrete=(), embedded=())
    discrete = discrete_eigenvalues(params, coupling, e_min=e_min, tol=tol)
    eff = effective_couplings(params, coupling)
    embedded: tuple[EmbeddedRoot, ...] = ()
    if info.regime is Regime.CASE_A:
        embedded = embedded_alpha0(params.beta, eff, tol=max(tol, 1e-12))
    elif info.regime is Regime.CASE_B:
        from . import perturbation
        asym = perturbation.asymptotic_eigenvalues(params, coupling)
        if asym.threshold_persists:
            embedded = (EmbeddedRoot(-params.beta, abs(asym.gamma_circle_residual), "T1"),)
    elif info.regime is Regime.CASE_C:
        embedded = embedded_large_alpha(params, eff, tol=max(tol, 1e-8))
    return SpectrumReport(regime=info, continuous_edge=-info.sigma,
                          discrete=discrete, embedded=embedded)
