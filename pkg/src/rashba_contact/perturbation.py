"""Small-coupling expansion ladder.

Closed-form series coefficients of the normalization constants and shifts,
the effective couplings they induce, the second-order eigenvalue shift, the
threshold-persistence condition, and the assembled asymptotic spectrum
E(alpha) = E(0) + alpha^2 E2 + O(alpha^4).  Odd orders vanish.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeError, SingularMatrixError
from .extension import Hermitian2
from .greens import FOUR_PI, xi
from .model import Regime, SystemParams, classify_regime
from . import spectrum as _spectrum


@dataclass(frozen=True)
class PerturbationCoefficients:
    """Series data at fixed beta; all pairs ordered (plus, minus)."""

    n0: tuple[float, float]
    n1: tuple[float, float]
    l0: tuple[float, float]
    l1: tuple[float, float]
    eta: tuple[float, float, float]     # (eta_pp, eta_mm, eta_pm)
    omega0: tuple[float, float]
    omega1: tuple[float, float]
    gamma0: float

    def omega0_s(self, s: int) -> float:
        return self.omega0[0] if s == 1 else self.omega0[1]

    def omega1_s(self, s: int) -> float:
        return self.omega1[0] if s == 1 else self.omega1[1]


class Branch(enum.Enum):
    GENERIC_GAMMA = "GenericGamma"
    DIAGONAL_PLUS = "DiagonalPlus"
    DIAGONAL_MINUS = "DiagonalMinus"
    TWOFOLD = "Twofold"


@dataclass(frozen=True)
class AsymptoticEigenvalue:
    """Zeroth-order root and its second-order shift (a pair when twofold)."""

    e0: float
    e2: float | tuple[float, float]
    branch: Branch

    def predicted_energy(self, alpha: float):
        a2 = alpha * alpha
        if isinstance(self.e2, tuple):
            return tuple(self.e0 + a2 * v for v in self.e2)
        return self.e0 + a2 * self.e2


@dataclass(frozen=True)
class AsymptoticSpectrum:
    entries: tuple[AsymptoticEigenvalue, ...]
    alpha: float
    gamma_circle_residual: float
    threshold_persists: bool


def _series_scalars(beta: float):
    # stable forms: (2 + b^2 - 2u)^{1/4} = sqrt(u-1) = beta/sqrt(1+u), u = sqrt(1+b^2)
    u = math.sqrt(1.0 + beta * beta)
    rt = math.sqrt(1.0 + u)
    n0 = {s: 2.0 * 2.0 ** 0.25 * math.sqrt(math.pi) * (u + s * beta) ** 0.25
          for s in (1, -1)}
    n1 = {s: math.sqrt(math.pi) / (6.0 * 2.0 ** 0.25)
          * (3.0 - s * beta / (1.0 + u)) * (u + s * beta) ** 0.75 / rt
          for s in (1, -1)}
    l0 = {s: -(rt + s * beta / rt) / (8.0 * math.pi) for s in (1, -1)}
    l1 = {s: (3.0 + s * beta / (1.0 + u)) / (48.0 * math.pi * rt) for s in (1, -1)}
    return n0, n1, l0, l1


def expansion_coefficients(beta: float, gamma_matrix: Hermitian2) -> PerturbationCoefficients:
    """All closed-form series coefficients for the given beta and coupling."""
    beta = float(beta)
    if beta <= 0.0:
        raise DomainError("series coefficients require beta > 0")
    n0, n1, l0, l1 = _series_scalars(beta)
    eta = {s: 2.0 * n1[s] / n0[s] for s in (1, -1)}
    eta_pm = n1[1] / n0[1] + n1[-1] / n0[-1]
    gt0 = {1: gamma_matrix.pp / n0[1] ** 2, -1: gamma_matrix.mm / n0[-1] ** 2}
    omega0 = {s: FOUR_PI * (gt0[s] + l0[s]) for s in (1, -1)}
    omega1 = {s: FOUR_PI * (eta[s] * gt0[s] + l1[s]) for s in (1, -1)}
    gamma0 = (FOUR_PI * abs(gamma_matrix.pm) / (n0[1] * n0[-1])) ** 2
    return PerturbationCoefficients(
        n0=(n0[1], n0[-1]), n1=(n1[1], n1[-1]),
        l0=(l0[1], l0[-1]), l1=(l1[1], l1[-1]),
        eta=(eta[1], eta[-1], eta_pm),
        omega0=(omega0[1], omega0[-1]), omega1=(omega1[1], omega1[-1]),
        gamma0=gamma0)


def q0(beta: float, omega1_s: float, s: int, e0: float) -> float:
    """q_s at zeroth order: omega1_s - xi(E0)*(1/2 - s*beta*xi(E0)^2/3).

    Defined for E0 <= -beta; at the endpoint the value is
    omega1_s - (1 - s/3)/(2*sqrt(2*beta)).
    """
    beta = float(beta)
    if beta <= 0.0:
        raise DomainError("q0 requires beta > 0")
    if s not in (1, -1):
        raise DomainError(f"spin index must be +1 or -1, got {s!r}")
    e0 = float(e0)
    if e0 > -beta:
        raise DomainError(f"q0 requires E0 <= -beta so that xi is real, got {e0}")
    x = xi(SystemParams(0.0, beta), complex(e0)).value.real
    return omega1_s - x * (0.5 - s * beta * x * x / 3.0)


def e2(beta: float, gamma_matrix: Hermitian2, e0: float) -> AsymptoticEigenvalue:
    """Second-order eigenvalue shift for a zeroth-order root e0 < -beta.

    Branches: generic quotient for gamma0 != 0; the single-channel forms
    -2*omega0_s*q0_s when gamma0 = 0; both values when the two channels share
    the root (twofold).
    """
    beta = float(beta)
    e0 = float(e0)
    co = expansion_coefficients(beta, gamma_matrix)
    if e0 >= -beta:
        raise DomainError(f"e2 requires E0 < -beta, got {e0}")
    if abs(e0 + beta) < 1e-8:
        raise DomainError("E0 at the threshold -beta: the quotient degenerates; "
                          "use the persistence condition instead")
    w0p, w0m = co.omega0
    w1p, w1m = co.omega1
    g0 = co.gamma0
    rp = math.sqrt(beta - e0)
    rm = math.sqrt(-beta - e0)

    res = abs(g0 - (w0p + rp) * (w0m + rm))
    if res > 1e-8 * (1.0 + abs(g0)):
        raise DomainError(
            f"E0 = {e0} does not solve the zeroth-order condition (residual {res:.3e})")

    qp = q0(beta, w1p, 1, e0)
    qm = q0(beta, w1m, -1, e0)
    tiny = 1e-12 * (1.0 + abs(g0))
    plus_match = abs(w0p + rp) <= 1e-7 * (1.0 + abs(w0p) + rp)
    minus_match = abs(w0m + rm) <= 1e-7 * (1.0 + abs(w0m) + rm)
    if g0 <= tiny and plus_match and minus_match:
        return AsymptoticEigenvalue(e0, (-2.0 * w0p * qp, -2.0 * w0m * qm), Branch.TWOFOLD)
    if g0 <= tiny and minus_match:
        return AsymptoticEigenvalue(e0, -2.0 * w0m * qm, Branch.DIAGONAL_MINUS)
    if g0 <= tiny and plus_match:
        return AsymptoticEigenvalue(e0, -2.0 * w0p * qp, Branch.DIAGONAL_PLUS)

    w = math.sqrt(e0 * e0 - beta * beta)
    big = -e0 + w
    small = beta * beta / big       # -e0 - w, cancellation-free
    num = qm * (w0p + rp) + qp * (w0m + rm) - 2.0 * co.eta[2] * g0
    den = (rp + rm) * (rp * (w0p + rp) + rm * (w0m + rm))
    den_scale = (rp + rm) * (rp * (abs(w0p) + rp) + rm * (abs(w0m) + rm)) + 1e-300
    if abs(den) < 1e-12 * den_scale:
        raise SingularMatrixError(
            "degenerate quotient denominator: the configuration sits at the "
            "twofold coincidence")
    pref = 2.0 * math.sqrt(2.0) / beta * big * w * math.sqrt(small)
    return AsymptoticEigenvalue(e0, pref * num / den, Branch.GENERIC_GAMMA)


def _circle_coefficients(beta: float) -> tuple[float, float, float]:
    n0, n1, l0, l1 = _series_scalars(beta)
    eta_pp = 2.0 * n1[1] / n0[1]
    eta_mm = 2.0 * n1[-1] / n0[-1]
    lp_shift = l0[1] + math.sqrt(2.0 * beta) / FOUR_PI
    a = n0[-1] ** 2 * (l1[-1] - eta_mm * l0[-1])
    b = n0[1] ** 2 * (l1[1] - eta_pp * lp_shift)
    c = (n0[1] * n0[-1]) ** 2 * (
        l0[-1] * l1[1] + lp_shift * (l1[-1] - (eta_pp + eta_mm) * l0[-1]))
    return a, b, c


def gamma_circle_residual(beta: float, gamma_matrix: Hermitian2) -> float:
    """A*Gamma_pp + B*Gamma_mm + C; zero (given -beta in the zeroth-order
    spectrum) characterizes the coupling for which -beta survives at small
    nonzero coupling."""
    beta = float(beta)
    if beta <= 0.0:
        raise DomainError("the circle condition requires beta > 0")
    a, b, c = _circle_coefficients(beta)
    return a * gamma_matrix.pp + b * gamma_matrix.mm + c


def cnd0(beta: float) -> float:
    """The threshold-obstruction function of beta; strictly negative.

    4*pi*(Lambda1_+ - eta_pp*Lambda0_+) - 1/(3*sqrt(2*beta)) - eta_pp*sqrt(2*beta).
    Its negativity is what rules out eigenvalues just off -beta.
    """
    beta = float(beta)
    if beta <= 0.0:
        raise DomainError("cnd0 requires beta > 0")
    n0, n1, l0, l1 = _series_scalars(beta)
    eta_pp = 2.0 * n1[1] / n0[1]
    root2b = math.sqrt(2.0 * beta)
    return FOUR_PI * (l1[1] - eta_pp * l0[1]) - 1.0 / (3.0 * root2b) - eta_pp * root2b


def cnd0_max(lo: float = 0.05, hi: float = 10.0) -> tuple[float, float]:
    """(max value, argmax) of cnd0 over [lo, hi]: coarse log grid, then golden section."""
    grid = np.geomspace(lo, hi, 2001)
    vals = np.array([cnd0(b) for b in grid])
    i = int(np.argmax(vals))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, len(grid) - 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = cnd0(c), cnd0(d)
    for _ in range(200):
        if b - a < 1e-12:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = cnd0(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = cnd0(d)
    bm = 0.5 * (a + b)
    return cnd0(bm), bm


def asymptotic_eigenvalues(params: SystemParams, gamma_matrix: Hermitian2) -> AsymptoticSpectrum:
    """Below-threshold asymptotic spectrum plus the threshold-persistence verdict.

    Enumerates the zeroth-order roots below -beta, attaches the second-order
    shift to each, and evaluates both parts of the persistence criterion:
    membership of -beta in the zeroth-order spectrum and the linear circle
    condition on Gamma.
    """
    info = classify_regime(params)
    if params.beta <= 0.0 or info.regime not in (Regime.CASE_A, Regime.CASE_B):
        raise RegimeError(
            "asymptotic expansion requires 0 <= alpha < sqrt(2*beta) with beta > 0")
    beta = params.beta
    co = expansion_coefficients(beta, gamma_matrix)
    base = SystemParams(0.0, beta)
    roots0 = _spectrum.discrete_eigenvalues(base, gamma_matrix, tol=1e-12)
    entries = tuple(e2(beta, gamma_matrix, r.energy) for r in roots0)

    residual = gamma_circle_residual(beta, gamma_matrix)
    w0p, w0m = co.omega0
    member = abs(co.gamma0 - (w0p + math.sqrt(2.0 * beta)) * w0m) <= 1e-9 * (1.0 + co.gamma0)
    a, b, c = _circle_coefficients(beta)
    lin_scale = abs(a * gamma_matrix.pp) + abs(b * gamma_matrix.mm) + abs(c) + 1e-300
    persists = member and abs(residual) <= 1e-9 * lin_scale
    return AsymptoticSpectrum(entries=entries, alpha=params.alpha,
                              gamma_circle_residual=residual,
                              threshold_persists=persists)
