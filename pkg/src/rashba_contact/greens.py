"""Branch-resolved elementary functions and the contact Green values.

Off the real axis every quantity below is a principal-branch composition,
which keeps conjugation symmetry and the Herglotz property of the Q-function.
On the real axis the per-band closed forms are used instead, pinned to the
sign pattern the spectral analysis relies on:

    E < -beta        xi real positive
    -beta < E < 0    xi = R + iT with R > 0, T < 0
    0 <= E < beta    xi = R + iT with R > 0, T > 0
    E >= beta        xi = i*T(E) with T(E) in (0, 1/sqrt(2*beta)]

and artanh on its real cut w > 1 continued from below, r - i*pi/2.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError, PoleError
from .model import SystemParams, threshold_sigma

FOUR_PI = 4.0 * math.pi
EIGHT_PI = 8.0 * math.pi
INV_4SQRT2PI = 1.0 / (4.0 * math.sqrt(2.0) * math.pi)

# relative half-width of the rejected band around the artanh pole at z = -Sigma
_POLE_GUARD = 1e-10
# below this |alpha*xi| the artanh(alpha*xi)/alpha form switches to its series
_SMALL_ARG = 1e-4


class BranchNote(enum.Enum):
    REAL_BELOW_MINUS_BETA = "RealBelowMinusBeta"
    COMPLEX_MID_BAND = "ComplexMidBand"
    PURE_IMAG_ABOVE_BETA = "PureImagAboveBeta"


@dataclass(frozen=True)
class XiValue:
    """xi(E) together with its real-axis band tag (None off the real axis)."""

    value: complex
    branch_note: BranchNote | None


@dataclass(frozen=True)
class GreenValues:
    """The two independent Green values at the origin."""

    g1_origin: complex
    g2ren_origin: complex


def _check_spin(s: int) -> None:
    if s not in (1, -1):
        raise DomainError(f"spin index must be +1 or -1, got {s!r}")


def artanh_branch(w: complex) -> complex:
    """Inverse hyperbolic tangent on C minus {-1, 1}.

    Principal value off the real cuts; on w > 1 the continuation from below,
    log((w+1)/(w-1))/2 - i*pi/2, and the odd image of that on w < -1.
    """
    w = complex(w)
    if w.imag == 0.0:
        x = w.real
        if x == 1.0 or x == -1.0:
            raise PoleError("artanh is defined on C \\ {-1, 1}")
        if x > 1.0:
            return complex(0.5 * math.log((x + 1.0) / (x - 1.0)), -0.5 * math.pi)
        if x < -1.0:
            return complex(-0.5 * math.log((1.0 - x) / (-x - 1.0)), 0.5 * math.pi)
        return complex(math.atanh(x))
    return 0.5 * (cmath.log(1.0 + w) - cmath.log(1.0 - w))


def _xi_real(beta: float, e: float) -> XiValue:
    if beta == 0.0:
        if e >= 0.0:
            raise DomainError("xi with beta = 0 requires E < 0")
        return XiValue(complex(1.0 / (2.0 * math.sqrt(-e))),
                       BranchNote.REAL_BELOW_MINUS_BETA)
    if e == 0.0:
        # mid-band formula from the 0 <= E side
        return XiValue(cmath.exp(0.25j * math.pi) / math.sqrt(2.0 * beta),
                       BranchNote.COMPLEX_MID_BAND)
    if e <= -beta:
        big = -e + math.sqrt(e * e - beta * beta)
        return XiValue(complex(1.0 / math.sqrt(2.0 * big)),
                       BranchNote.REAL_BELOW_MINUS_BETA)
    if e < beta:
        # |xi| = 1/sqrt(2*beta) throughout the band; only the phase moves
        theta = math.acos(max(-1.0, min(1.0, -e / beta)))
        if e < 0.0:
            theta = -theta
        return XiValue(cmath.exp(0.5j * theta) / math.sqrt(2.0 * beta),
                       BranchNote.COMPLEX_MID_BAND)
    big = e + math.sqrt(e * e - beta * beta)
    return XiValue(complex(0.0, 1.0 / math.sqrt(2.0 * big)),
                   BranchNote.PURE_IMAG_ABOVE_BETA)


def xi(params: SystemParams, z: complex) -> XiValue:
    """xi(z) = sqrt((-z/2)(1 - sqrt(1 - (beta/z)^2)))/beta, branch-corrected.

    Evaluated through the exact rearrangement
    xi = sqrt(-1/(2 z (1 + sqrt(1 - (beta/z)^2)))), which avoids the
    subtractive cancellation of the literal form when |beta/z| is small.
    """
    z = complex(z)
    if z.imag == 0.0:
        return _xi_real(params.beta, z.real)
    b = params.beta
    if b == 0.0:
        return XiValue(1.0 / (2.0 * cmath.sqrt(-z)), None)
    if z == 0.0:
        raise DomainError("xi is undefined at z = 0 for beta > 0")
    u = cmath.sqrt(1.0 - (b / z) ** 2)
    return XiValue(cmath.sqrt(-1.0 / (2.0 * z * (1.0 + u))), None)


def t_of_e(params: SystemParams, e: float) -> float:
    """T(E) with xi(E) = i*T(E) on E >= beta; decreasing from 1/sqrt(2*beta)."""
    b = params.beta
    if b <= 0.0:
        raise DomainError("T(E) requires beta > 0")
    e = float(e)
    if e < b:
        raise DomainError(f"T(E) requires E >= beta, got E = {e}")
    return 1.0 / math.sqrt(2.0 * (e + math.sqrt(e * e - b * b)))


def _sqrt_minus(z: complex) -> complex:
    """Principal sqrt(-z); the real cut z > 0 takes its z + i0 value -i*sqrt(z)."""
    if z.imag == 0.0 and z.real > 0.0:
        return complex(0.0, -math.sqrt(z.real))
    return cmath.sqrt(-z)


def _big_branch(beta: float, z: complex) -> complex:
    """sqrt((-z/2)(1 + sqrt(1 - (beta/z)^2))), the partner factor of beta*xi.

    Their product is beta/2, so on the real axis this equals +1/(2 xi) for
    E < beta and -1/(2 xi) for E >= beta, which is exactly the sign seam of
    the secular equation.
    """
    if beta == 0.0:
        return _sqrt_minus(z)
    if z.imag != 0.0:
        return cmath.sqrt((-z / 2.0) * (1.0 + cmath.sqrt(1.0 - (beta / z) ** 2)))
    e = z.real
    if e <= -beta:
        return complex(math.sqrt((-e + math.sqrt(e * e - beta * beta)) / 2.0))
    if e < beta:
        theta = math.acos(max(-1.0, min(1.0, -e / beta)))
        if e < 0.0:
            theta = -theta
        return math.sqrt(beta / 2.0) * cmath.exp(-0.5j * theta)
    return complex(0.0, math.sqrt((e + math.sqrt(e * e - beta * beta)) / 2.0))


def _reject_near_pole(params: SystemParams, z: complex) -> None:
    # alpha*xi(-Sigma) = 1 exactly when alpha^2 >= 2*beta, so artanh blows up
    a, b = params.alpha, params.beta
    if a == 0.0 or a * a < 2.0 * b or z.imag != 0.0:
        return
    sigma = threshold_sigma(params)
    if abs(z.real + sigma) < _POLE_GUARD * max(1.0, sigma):
        raise PoleError(f"artanh(alpha*xi) diverges at z = -Sigma = {-sigma}")


def g1_origin(params: SystemParams, z: complex) -> complex:
    """artanh(alpha*xi(z))/(4*pi*alpha); alpha -> 0 limit xi(z)/(4*pi).

    The small-argument branch uses artanh(w)/w = 1 + w^2/3 + w^4/5 + O(w^6),
    so the alpha -> 0 limit is reached without cancellation.
    """
    z = complex(z)
    _reject_near_pole(params, z)
    x = xi(params, z).value
    a = params.alpha
    w = a * x
    if abs(w) < _SMALL_ARG:
        return x * (1.0 + w * w / 3.0 + w ** 4 / 5.0) / FOUR_PI
    return artanh_branch(w) / (FOUR_PI * a)


def g2ren_origin(params: SystemParams, z: complex) -> complex:
    """Renormalized second Green value at the origin.

    sqrt(-z)/(4 pi) - B(z)/(4 pi) + (alpha/(8 pi)) artanh(alpha xi(z)),
    with B the partner square root of xi.  Identically zero for
    alpha = beta = 0.
    """
    z = complex(z)
    _reject_near_pole(params, z)
    out = (_sqrt_minus(z) - _big_branch(params.beta, z)) / FOUR_PI
    a = params.alpha
    if a != 0.0:
        w = a * xi(params, z).value
        out += a * artanh_branch(w) / EIGHT_PI
    return out


def gs_ren_origin(params: SystemParams, s: int, z: complex) -> complex:
    """Spin-channel combination G_2^ren(0;z) - s*beta*G_1(0;z), s = +-1."""
    _check_spin(s)
    g2 = g2ren_origin(params, z)
    if params.beta == 0.0:
        return g2
    return g2 - s * params.beta * g1_origin(params, z)


def green_values(params: SystemParams, z: complex) -> GreenValues:
    return GreenValues(g1_origin=g1_origin(params, z),
                       g2ren_origin=g2ren_origin(params, z))


def grad_g1_limit(direction) -> tuple[float, float]:
    """Directional limit of the in-plane gradient of the first Green value.

    Constant magnitude 1/(8*pi) opposing the unit direction; odd under
    direction reversal, which is what cancels the off-diagonal norm terms.
    """
    x1, x2 = float(direction[0]), float(direction[1])
    norm = math.hypot(x1, x2)
    if abs(norm - 1.0) > 1e-9:
        raise DomainError(f"direction must be a unit 2-vector, |d| = {norm}")
    return (-x1 / EIGHT_PI, -x2 / EIGHT_PI)
