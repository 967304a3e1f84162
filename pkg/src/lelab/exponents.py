"""Closed-form constants of the Lane-Emden system and its stability quartics.

Everything in this module is an explicit function of the exponent pair
(p, q) and the dimension d: the decay exponents (alpha, beta) of the
scale-invariant solution, the Hardy-type constant H entering the stability
quadratic form, the coefficients lambda = alpha(d-2-alpha) and
mu = beta(d-2-beta), the amplitudes (a, b) of the singular pair
(a r^-alpha, b r^-beta), and two quartic polynomials whose largest real
roots encode dimension thresholds for Liouville-type nonexistence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    InvalidMoserExponentError,
    InvalidParamsError,
    NoRealRootError,
)

__all__ = [
    "SystemParams",
    "DerivedConstants",
    "QuarticKind",
    "MoserConstants",
    "derive_constants",
    "quartic_coefficients",
    "quartic_eval",
    "largest_root",
    "jl_margin",
    "moser_constants",
]


@dataclass(frozen=True)
class SystemParams:
    """Exponent triple (p, q, d) with p >= q >= 1, pq > 1 and d >= 3.

    The dimension is a real number: non-integer d is accepted so that
    curves can be traced in d, but theorem-applicability flags downstream
    attach only to integer dimensions.
    """

    p: float
    q: float
    d: float

    def __post_init__(self):
        p, q, d = float(self.p), float(self.q), float(self.d)
        if not (math.isfinite(p) and math.isfinite(q) and math.isfinite(d)):
            raise InvalidParamsError("p, q, d must be finite")
        if not (p >= q >= 1.0):
            raise InvalidParamsError(f"need p >= q >= 1, got p={p}, q={q}")
        if not p * q > 1.0:
            raise InvalidParamsError(f"need pq > 1 strictly, got pq={p * q}")
        if not d >= 3.0:
            raise InvalidParamsError(f"need d >= 3, got d={d}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @property
    def integer_dimension(self) -> bool:
        return float(self.d).is_integer()


@dataclass(frozen=True)
class DerivedConstants:
    """Closed-form constants attached to a parameter triple.

    a_coef and b_coef are the singular-solution amplitudes; they are NaN
    when lambda <= 0 or mu <= 0, i.e. when no positive singular solution
    exists (alpha or beta not below d-2).
    """

    alpha: float
    beta: float
    gamma: float
    H: float
    lam: float
    mu: float
    a_coef: float
    b_coef: float


class QuarticKind(Enum):
    """Which stability quartic to evaluate.

    PLAIN_H:          x^4 - pq*alpha*beta*(4x^2 - 2(alpha+beta)x + alpha*beta)
    JOSEPH_LUNDGREN:  (x^2 - gamma^2/4)^2 - pq*alpha*beta*(4x^2 - 2(alpha+beta)x + alpha*beta)
    """

    PLAIN_H = "plain_h"
    JOSEPH_LUNDGREN = "joseph_lundgren"


@dataclass(frozen=True)
class MoserConstants:
    """Exponent pair (a, b) of the iteration scheme and its gain factors A, B."""

    a: float
    b: float
    A: float
    B: float

    @property
    def ab_exceeds_one(self) -> bool:
        return self.A * self.B > 1.0


def derive_constants(params: SystemParams) -> DerivedConstants:
    """Compute alpha, beta, gamma, H, lambda, mu and the singular amplitudes.

    alpha = 2(p+1)/(pq-1),  beta = 2(q+1)/(pq-1),  gamma = alpha - beta,
    H = ((d-2)^2 - gamma^2)/4,  lambda = alpha(d-2-alpha),  mu = beta(d-2-beta),
    a = (lambda mu^p)^(1/(pq-1)),  b = (mu lambda^q)^(1/(pq-1)).

    The amplitudes satisfy a*lambda = b^p and b*mu = a^q, so the pair
    (a r^-alpha, b r^-beta) solves the system away from the origin.
    """
    p, q, d = params.p, params.q, params.d
    pq1 = p * q - 1.0
    alpha = 2.0 * (p + 1.0) / pq1
    beta = 2.0 * (q + 1.0) / pq1
    gamma = alpha - beta
    H = ((d - 2.0) ** 2 - gamma**2) / 4.0
    lam = alpha * (d - 2.0 - alpha)
    mu = beta * (d - 2.0 - beta)
    if lam > 0.0 and mu > 0.0:
        a_coef = (lam * mu**p) ** (1.0 / pq1)
        b_coef = (mu * lam**q) ** (1.0 / pq1)
    else:
        a_coef = math.nan
        b_coef = math.nan
    return DerivedConstants(alpha, beta, gamma, H, lam, mu, a_coef, b_coef)


def quartic_coefficients(params: SystemParams, kind: QuarticKind) -> tuple[float, float, float, float, float]:
    """Monic coefficients (c0, c1, c2, c3, c4=1) of the requested quartic."""
    c = derive_constants(params)
    K = params.p * params.q * c.alpha * c.beta
    c0 = -K * c.alpha * c.beta
    c1 = 2.0 * K * (c.alpha + c.beta)
    c2 = -4.0 * K
    if kind is QuarticKind.JOSEPH_LUNDGREN:
        g = c.gamma**2 / 4.0
        c0 += g * g
        c2 -= 2.0 * g
    return (c0, c1, c2, 0.0, 1.0)


def quartic_eval(params: SystemParams, kind: QuarticKind, x: float) -> float:
    """Evaluate the requested quartic at x (Horner form; accepts arrays)."""
    c0, c1, c2, c3, c4 = quartic_coefficients(params, kind)
    return (((c4 * x + c3) * x + c2) * x + c1) * x + c0


def _bisect_root(f, lo: float, hi: float, flo: float, fhi: float) -> float:
    # lo/hi bracket a sign change of a monotone piece; relative width 1e-13.
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-13 * max(1.0, abs(mid)):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (flo < 0.0) != (fm < 0.0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _roots_on_monotone_pieces(f, breakpoints: list[float]) -> list[float]:
    """Roots of f given breakpoints splitting its domain into monotone pieces."""
    roots = []
    vals = [f(x) for x in breakpoints]
    for i in range(len(breakpoints) - 1):
        lo, hi, flo, fhi = breakpoints[i], breakpoints[i + 1], vals[i], vals[i + 1]
        if flo == 0.0:
            roots.append(lo)
        if (flo < 0.0) != (fhi < 0.0) or (flo != 0.0 and fhi == 0.0):
            roots.append(_bisect_root(f, lo, hi, flo, fhi))
    # dedupe near-coincident endpoint roots
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > 1e-12 * max(1.0, abs(r)):
            out.append(r)
    return out


def largest_root(params: SystemParams, kind: QuarticKind) -> float:
    """Largest real root x0 of the requested quartic.

    Real roots are isolated by a derivative cascade: the second derivative
    is a quadratic solved in closed form, its roots split the cubic f' into
    monotone pieces bisected for critical points, and those in turn split f
    into monotone pieces bisected for sign changes.  The search interval is
    [-x_hi, x_hi] with x_hi = 1 + max|c_i| (Cauchy bound), beyond which the
    monic quartic is provably nonzero.  Bisection refines each root to
    relative width 1e-13, well inside the 1e-12 contract.
    """
    c0, c1, c2, c3, c4 = quartic_coefficients(params, kind)

    def f(x: float) -> float:
        return (((x + c3) * x + c2) * x + c1) * x + c0

    def fp(x: float) -> float:
        return ((4.0 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1

    x_hi = 1.0 + max(abs(c0), abs(c1), abs(c2), abs(c3))

    # f'' = 12 x^2 + 6 c3 x + 2 c2, solved exactly
    disc = 36.0 * c3 * c3 - 96.0 * c2
    inflections = []
    if disc > 0.0:
        s = math.sqrt(disc)
        inflections = sorted(((-6.0 * c3 - s) / 24.0, (-6.0 * c3 + s) / 24.0))
    elif disc == 0.0:
        inflections = [-c3 / 4.0]

    pieces = [-x_hi] + [x for x in inflections if -x_hi < x < x_hi] + [x_hi]
    criticals = _roots_on_monotone_pieces(fp, pieces)

    pieces = [-x_hi] + [x for x in criticals if -x_hi < x < x_hi] + [x_hi]
    roots = _roots_on_monotone_pieces(f, pieces)
    if not roots:
        raise NoRealRootError(f"quartic {kind.value} has no real root for {params}")
    return roots[-1]


def jl_margin(params: SystemParams) -> float:
    """Stability margin H^2 - pq*lambda*mu of the singular solution.

    Sign convention: >= 0 means (p, q) lies on or above the Joseph-Lundgren
    curve at dimension d (the existence side for d >= 11); < 0 is the
    nonexistence side.  Equality is grouped with the existence side.
    """
    c = derive_constants(params)
    return c.H * c.H - params.p * params.q * c.lam * c.mu


def moser_constants(params: SystemParams, a: float) -> MoserConstants:
    """Gain factors A = sqrt(pq)(2a-1)/a^2 and B = sqrt(pq)(2b-1)/b^2.

    b is tied to a by b(q+1) = a(p+1).  Requires a >= (q+1)/2; the product
    AB > 1 is the condition under which the energy iteration closes.
    """
    p, q = params.p, params.q
    if not a >= (q + 1.0) / 2.0:
        raise InvalidMoserExponentError(f"need a >= (q+1)/2 = {(q + 1.0) / 2.0}, got a={a}")
    b = a * (p + 1.0) / (q + 1.0)
    spq = math.sqrt(p * q)
    A = spq * (2.0 * a - 1.0) / (a * a)
    B = spq * (2.0 * b - 1.0) / (b * b)
    return MoserConstants(a=a, b=b, A=A, B=B)
