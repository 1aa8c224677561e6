"""Extension data: normalization constants, coupling algebra, the Krein
Q-matrix, the secular determinant, the resolvent correction weights, and the
deficiency-element norms."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, SingularMatrixError
from .greens import (FOUR_PI, INV_4SQRT2PI, _reject_near_pole, _sqrt_minus,
                     gs_ren_origin)
from .model import SystemParams, threshold_sigma


@dataclass(frozen=True)
class Hermitian2:
    """2x2 Hermitian matrix [[pp, pm], [conj(pm), mm]]; diagonal real by construction."""

    pp: float
    mm: float
    pm: complex = 0j

    def __post_init__(self):
        pp, mm, pm = float(self.pp), float(self.mm), complex(self.pm)
        if not (math.isfinite(pp) and math.isfinite(mm)
                and math.isfinite(pm.real) and math.isfinite(pm.imag)):
            raise DomainError("Hermitian2 entries must be finite")
        object.__setattr__(self, "pp", pp)
        object.__setattr__(self, "mm", mm)
        object.__setattr__(self, "pm", pm)

    @property
    def det(self) -> float:
        return self.pp * self.mm - abs(self.pm) ** 2

    @classmethod
    def scalar(cls, v: float) -> "Hermitian2":
        """v times the identity."""
        return cls(pp=v, mm=v, pm=0j)

    def as_array(self) -> np.ndarray:
        return np.array([[self.pp, self.pm],
                         [self.pm.conjugate(), self.mm]], dtype=complex)

    def to_json_dict(self) -> dict:
        return {"pp": self.pp, "mm": self.mm,
                "pm_re": self.pm.real, "pm_im": self.pm.imag}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Hermitian2":
        try:
            return cls(pp=float(data["pp"]), mm=float(data["mm"]),
                       pm=complex(float(data["pm_re"]), float(data["pm_im"])))
        except KeyError as exc:
            raise DomainError(f"matrix JSON must carry keys pp, mm, pm_re, pm_im; missing {exc}")


class ExtensionKind(enum.Enum):
    """The two couplings that bypass the Gamma parametrization entirely.

    TRIVIAL is C = 0 (the unperturbed operator); FRIEDRICHS is C^{-1} = 0.
    Both have purely continuous spectrum [-Sigma, inf).
    """

    TRIVIAL = "trivial"
    FRIEDRICHS = "friedrichs"


@dataclass(frozen=True)
class NormalizationData:
    """Channel normalizations N_s, the shifts Lambda_s, and the Arg-formula parameter c."""

    n_plus: float
    n_minus: float
    lambda_plus: float
    lambda_minus: float
    c_param: float

    def n(self, s: int) -> float:
        return self.n_plus if s == 1 else self.n_minus

    def lam(self, s: int) -> float:
        return self.lambda_plus if s == 1 else self.lambda_minus


@dataclass(frozen=True)
class EffectiveCouplings:
    """The three scalars (omega_+, omega_-, gamma) entering the secular equation."""

    omega_plus: float
    omega_minus: float
    gamma: float

    def omega(self, s: int) -> float:
        return self.omega_plus if s == 1 else self.omega_minus


@dataclass(frozen=True)
class KreinQ:
    """Diagonal Q-matrix entries at one energy."""

    q_pp: complex
    q_mm: complex

    def entry(self, s: int) -> complex:
        return self.q_pp if s == 1 else self.q_mm


@lru_cache(maxsize=512)
def _normalization_cached(alpha: float, beta: float) -> NormalizationData:
    params = SystemParams(alpha, beta)
    u = math.sqrt(1.0 + beta * beta)
    rt = math.sqrt(1.0 + u)
    # c = (alpha/(2 beta)) (2 + beta^2 - 2 sqrt(1+beta^2))^{1/4} rearranged via
    # (u-1)^{1/2} = beta/sqrt(1+u); exact and finite down to beta = 0
    c = alpha / (2.0 * rt)
    n = {}
    for s in (1, -1):
        if alpha == 0.0:
            inv_sq = (rt - s * beta / rt) / (8.0 * math.pi)
        else:
            w = c * (1.0 + 1j)
            darg = cmath.phase(1.0 + w) - cmath.phase(1.0 - w)
            inv_sq = (rt + (alpha / 2.0 - s * beta / alpha) * darg) / (8.0 * math.pi)
        if inv_sq <= 0.0:
            raise DomainError(
                f"normalization failed: N^-2 = {inv_sq} <= 0 for s={s:+d} at "
                f"alpha={alpha}, beta={beta} (outside proven admissibility)")
        n[s] = 1.0 / math.sqrt(inv_sq)
    lam = {s: gs_ren_origin(params, s, 1j).real - INV_4SQRT2PI for s in (1, -1)}
    return NormalizationData(n_plus=n[1], n_minus=n[-1],
                             lambda_plus=lam[1], lambda_minus=lam[-1], c_param=c)


def normalization(params: SystemParams) -> NormalizationData:
    """N_s from the principal-Arg closed form; Lambda_s from the Green values at i.

    Results are memoized per (alpha, beta); the record is immutable, so the
    cache is safe for concurrent readers.
    """
    return _normalization_cached(params.alpha, params.beta)


def gamma_from_cr(c_matrix: Hermitian2, r_matrix: Hermitian2) -> Hermitian2:
    """Coupling matrix Gamma = -C^{-1} - R by exact 2x2 inversion."""
    if c_matrix.pp == 0.0 and c_matrix.mm == 0.0 and c_matrix.pm == 0:
        raise SingularMatrixError(
            "C = 0 selects the trivial extension; pass ExtensionKind.TRIVIAL instead")
    d = c_matrix.det
    if d == 0.0:
        raise SingularMatrixError(
            "det C = 0: no inverse exists (C^{-1} = 0 would be the Friedrichs "
            "extension, passed as ExtensionKind.FRIEDRICHS)")
    return Hermitian2(pp=-c_matrix.mm / d - r_matrix.pp,
                      mm=-c_matrix.pp / d - r_matrix.mm,
                      pm=c_matrix.pm / d - r_matrix.pm)


def effective_couplings(params: SystemParams, gamma_matrix: Hermitian2) -> EffectiveCouplings:
    """omega_s = 4*pi*(Gamma_ss/N_s^2 + Lambda_s), gamma = (4*pi*|Gamma_+-|/(N_+ N_-))^2."""
    nd = normalization(params)
    wp = FOUR_PI * (gamma_matrix.pp / nd.n_plus ** 2 + nd.lambda_plus)
    wm = FOUR_PI * (gamma_matrix.mm / nd.n_minus ** 2 + nd.lambda_minus)
    g = (FOUR_PI * abs(gamma_matrix.pm) / (nd.n_plus * nd.n_minus)) ** 2
    return EffectiveCouplings(omega_plus=wp, omega_minus=wm, gamma=g)


def gamma_for_couplings(params: SystemParams, omega_plus: float, omega_minus: float,
                        gamma: float) -> Hermitian2:
    """Inverse of effective_couplings: a Gamma realizing the given scalars.

    The off-diagonal phase is immaterial (only |Gamma_+-| enters), so the
    entry is taken real nonnegative.
    """
    if gamma < 0.0:
        raise DomainError("gamma must be nonnegative")
    nd = normalization(params)
    return Hermitian2(
        pp=nd.n_plus ** 2 * (omega_plus / FOUR_PI - nd.lambda_plus),
        mm=nd.n_minus ** 2 * (omega_minus / FOUR_PI - nd.lambda_minus),
        pm=nd.n_plus * nd.n_minus * math.sqrt(gamma) / FOUR_PI)


def krein_q(params: SystemParams, z: complex, *, boundary: bool = False) -> KreinQ:
    """Diagonal Q entries N_s^2 (G_s^ren(0;z) - sqrt(-z)/(4 pi) - Lambda_s).

    Real z on the band [-Sigma, inf) is rejected unless ``boundary`` is set,
    in which case the per-band boundary forms of the Green values are used.
    """
    z = complex(z)
    sigma = threshold_sigma(params)
    if z.imag == 0.0 and z.real >= -sigma and not boundary:
        raise DomainError(
            f"z = {z.real} lies on the continuous band [-Sigma, inf) with Sigma = {sigma}; "
            "pass boundary=True for the boundary value")
    _reject_near_pole(params, z)
    nd = normalization(params)
    sq = _sqrt_minus(z) / FOUR_PI
    ents = {}
    for s in (1, -1):
        g = gs_ren_origin(params, s, z)
        ents[s] = nd.n(s) ** 2 * (g - sq - nd.lam(s))
    return KreinQ(q_pp=ents[1], q_mm=ents[-1])


def secular_det(params: SystemParams, gamma_matrix: Hermitian2, z: complex,
                *, boundary: bool = False) -> complex:
    """det(Gamma - Q(z)) with diagonal Q; real on real z below -Sigma."""
    q = krein_q(params, z, boundary=boundary)
    return ((gamma_matrix.pp - q.q_pp) * (gamma_matrix.mm - q.q_mm)
            - abs(gamma_matrix.pm) ** 2)


def resolvent_correction(params: SystemParams, gamma_matrix: Hermitian2,
                         z: complex) -> np.ndarray:
    """(Gamma - Q(z))^{-1}, the scalar weights of the rank-two resolvent term.

    Raises SingularMatrixError exactly when z solves the secular equation,
    which makes the failure mode double as an eigenvalue detector.
    """
    q = krein_q(params, z)
    m11 = gamma_matrix.pp - q.q_pp
    m22 = gamma_matrix.mm - q.q_mm
    m12 = gamma_matrix.pm
    d = m11 * m22 - abs(m12) ** 2
    # noise floor of d scales with the squared magnitude of the entries that
    # cancel, not with the differences themselves
    mag = max(1.0, abs(gamma_matrix.pp), abs(gamma_matrix.mm), abs(gamma_matrix.pm),
              abs(q.q_pp), abs(q.q_mm))
    if abs(d) < 1e-25 * mag * mag:
        raise SingularMatrixError(
            f"Gamma - Q(z) is singular at z = {z}: z solves the secular equation")
    return np.array([[m22, -m12], [-m12.conjugate(), m11]], dtype=complex) / d


def phi_norm_sq(params: SystemParams, s: int, z: complex) -> float:
    """Squared norm of the deficiency element of channel s at energy z.

    Im z != 0: N_s^2 Im(G_s^ren(0;z) - sqrt(-z)/(4 pi)) / Im z, which equals
    Im Q_ss(z)/Im z.  Real z < -Sigma: the explicit algebraic boundary form.
    """
    z = complex(z)
    nd = normalization(params)
    n2 = nd.n(s) ** 2
    if z.imag != 0.0:
        g = gs_ren_origin(params, s, z)
        return n2 * (g - _sqrt_minus(z) / FOUR_PI).imag / z.imag

    e = z.real
    a, b = params.alpha, params.beta
    sigma = threshold_sigma(params)
    if e >= -sigma:
        raise DomainError(
            f"closed-form norm requires real z < -Sigma = {-sigma} (or Im z != 0)")
    if b == 0.0:
        return n2 * math.sqrt(-2.0 * e) / (8.0 * math.sqrt(2.0) * math.pi * (-e))
    w = math.sqrt(e * e - b * b)
    big = -e + w
    small = b * b / big          # equals -e - w without cancellation
    denom = 2.0 * b * b - a * a * small   # 2 b^2 + a^2 (e + w)
    return n2 / (8.0 * math.sqrt(2.0) * math.pi * w) * (
        math.sqrt(big) + b * (a * a - 2.0 * s * b) * math.sqrt(small) / denom)
