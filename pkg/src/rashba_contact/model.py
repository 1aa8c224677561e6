"""Physical parameters, the continuum threshold, and regime classification.

The two-band dispersion puts the bottom of the continuous spectrum at -Sigma
with Sigma = beta for beta > alpha^2/2 and (beta/alpha)^2 + (alpha/2)^2
otherwise.  The coupling strength relative to sqrt(2*beta) decides which of
the three analysis regimes applies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# resolution of the 1D parameter scan used by series_validity condition (c)
_COND_C_SCAN_POINTS = 10_000


class Regime(enum.Enum):
    CASE_A = "CaseA"          # no spin-orbit coupling (alpha = 0)
    CASE_B = "CaseB"          # small coupling, 0 < alpha < sqrt(2*beta)
    CASE_C = "CaseC"          # large coupling, sqrt(2*beta) <= alpha, beta > 0
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class SystemParams:
    """Spin-orbit-coupling strength alpha and Zeeman field strength beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        alpha = float(self.alpha)
        beta = float(self.beta)
        for name, value in (("alpha", alpha), ("beta", beta)):
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            if value < 0.0:
                raise DomainError(f"{name} must be nonnegative, got {value!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class RegimeInfo:
    """Threshold, regime tag, and (in the large-coupling case) nu = alpha/sqrt(2*beta)."""

    sigma: float
    regime: Regime
    nu: float | None = None
    series_valid_at_unit_circle: bool = True


@dataclass(frozen=True)
class ValidityReport:
    """Which of the series-validity conditions (a)-(c) hold at an energy z."""

    cond_a: bool
    cond_b: bool
    cond_c: bool
    any: bool


def threshold_sigma(params: SystemParams) -> float:
    """Sigma such that the continuous band is [-Sigma, inf).

    Both branches of the definition equal alpha^2/2 on the seam
    beta = alpha^2/2, so Sigma is continuous there.  alpha = 0 gives beta.
    """
    a, b = params.alpha, params.beta
    if a == 0.0 or b > a * a / 2.0:
        return b
    return (b / a) ** 2 + (a / 2.0) ** 2


def classify_regime(params: SystemParams) -> RegimeInfo:
    """Tag the parameter point as CaseA/CaseB/CaseC.

    CaseC keeps its tag even when Sigma > 1; the closed forms remain
    evaluable pointwise there, so callers only get the
    ``series_valid_at_unit_circle`` flag lowered instead of a refusal.
    alpha > 0 with beta = 0 is Unsupported: nu = alpha/sqrt(2*beta) is
    undefined and the dedicated beta = 0 code paths apply instead.
    """
    a, b = params.alpha, params.beta
    sigma = threshold_sigma(params)
    if a == 0.0:
        return RegimeInfo(sigma=sigma, regime=Regime.CASE_A)
    if b == 0.0:
        return RegimeInfo(sigma=sigma, regime=Regime.UNSUPPORTED,
                          series_valid_at_unit_circle=bool(sigma <= 1.0))
    if a < math.sqrt(2.0 * b):
        return RegimeInfo(sigma=sigma, regime=Regime.CASE_B)
    return RegimeInfo(sigma=sigma, regime=Regime.CASE_C, nu=a / math.sqrt(2.0 * b),
                      series_valid_at_unit_circle=bool(sigma <= 1.0))


def series_validity(params: SystemParams, z: complex) -> ValidityReport:
    """Report which of the representation-validity conditions hold at z.

    (a) 2*beta > alpha^2 and beta <= |z| < 2*(beta/alpha)^2;
    (b) |z| >= Sigma, the equality admitted only when 0 <= 2*beta < alpha^2;
    (c) |z| > max(beta/(2*sqrt(R)), alpha^2/(4*S)) for some R, S > 0 with
        R + (S - 1/2)^2 = 1/4.

    Condition (c) has no constructive recipe; it is checked by a uniform scan
    of S over (0, 1) with R = 1/4 - (S - 1/2)^2.
    """
    a, b = params.alpha, params.beta
    r = abs(complex(z))
    sigma = threshold_sigma(params)

    upper_a = math.inf if a == 0.0 else 2.0 * (b / a) ** 2
    cond_a = (2.0 * b > a * a) and (b <= r < upper_a)

    cond_b = r > sigma or (r == sigma and 2.0 * b < a * a)

    s_grid = np.linspace(0.0, 1.0, _COND_C_SCAN_POINTS + 2)[1:-1]
    r_grid = 0.25 - (s_grid - 0.5) ** 2
    bound = np.maximum(b / (2.0 * np.sqrt(r_grid)), a * a / (4.0 * s_grid))
    cond_c = bool(r > float(bound.min()))

    return ValidityReport(cond_a=cond_a, cond_b=cond_b, cond_c=cond_c,
                          any=cond_a or cond_b or cond_c)
