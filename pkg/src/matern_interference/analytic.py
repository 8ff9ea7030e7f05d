"""Closed-form second-order structure of the hard-core processes.

Everything here is a deterministic function of the process parameters: the
two-disk union area that drives pair retention, the retention probabilities
for both thinning rules, the resulting K-functions and their radial
derivatives, and the closed-form lower bound on K at twice the hard-core
distance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError
from .models import HardCoreParams, ProcessKind, intensity
from .numerics import QuadratureConfig, integrate

__all__ = [
    "C1_KBOUND",
    "C2_LENS",
    "BoundSide",
    "AffineVBound",
    "v_union",
    "affine_v_bounds",
    "pair_retention_type1",
    "pair_retention_type2",
    "k_derivative",
    "k_function",
    "k2delta_lower_bound",
]

_SQRT3 = math.sqrt(3.0)
_SQRT7 = math.sqrt(7.0)

# Two contact-geometry constants that are easy to conflate: C1_KBOUND scales
# the K(2*delta) lower bound, C2_LENS is the union area at contact distance
# in units of delta**2 (v_union(delta, delta) = C2_LENS * delta**2).
C1_KBOUND = math.pi / 3.0 + _SQRT3 / 4.0
C2_LENS = 4.0 * math.pi / 3.0 + _SQRT3 / 2.0


def v_union(delta: float, u: float) -> float:
    """Area of the union of two disks of radius ``delta`` with centers ``u`` apart.

    Saturates at the disjoint value ``2*pi*delta**2`` for ``u >= 2*delta``.
    The arccos argument is clamped so rounding at ``u = 2*delta`` cannot
    produce NaN.
    """
    if delta < 0 or u < 0:
        raise ValidationError("v_union requires delta >= 0 and u >= 0")
    if delta == 0.0:
        return 0.0
    d2 = delta * delta
    if u >= 2.0 * delta:
        return 2.0 * math.pi * d2
    half_ratio = min(u / (2.0 * delta), 1.0)
    lens_height_sq = max(d2 - 0.25 * u * u, 0.0)
    return (2.0 * math.pi * d2
            - 2.0 * d2 * math.acos(half_ratio)
            + u * math.sqrt(lens_height_sq))


class BoundSide(enum.Enum):
    LOWER_ON_V = "lower_on_v"
    UPPER_ON_V = "upper_on_v"


@dataclass(frozen=True)
class AffineVBound:
    """Affine comparison line for the union area on ``delta < r < 2*delta``.

    Encodes V(r) compared against ``(pi + a)*delta**2 + b*delta*r``; ``side``
    says which way the comparison goes. The union area is concave in r on
    the transition interval, so its tangent lies above it and its chord lies
    below it.
    """

    a: float
    b: float
    side: BoundSide

    def evaluate(self, delta: float, r: float) -> float:
        return (math.pi + self.a) * delta * delta + self.b * delta * r


def affine_v_bounds() -> tuple[AffineVBound, AffineVBound]:
    """The sandwich pair (lower-on-V, upper-on-V) for the union area.

    Lower line: chord through the exact values at r = delta and r = 2*delta.
    Upper line: tangent at r = 3*delta/2.
    """
    lower = AffineVBound(
        a=_SQRT3 - math.pi / 3.0,
        b=2.0 * math.pi / 3.0 - _SQRT3 / 2.0,
        side=BoundSide.LOWER_ON_V,
    )
    upper = AffineVBound(
        a=2.0 * math.asin(0.75) - 3.0 * _SQRT7 / 8.0,
        b=_SQRT7 / 2.0,
        side=BoundSide.UPPER_ON_V,
    )
    return lower, upper


# ---------------------------------------------------------------------------
# Pair retention
# ---------------------------------------------------------------------------


def pair_retention_type1(params: HardCoreParams, u: float) -> float:
    """Probability that two parent points at distance u both survive type I
    thinning: both their exclusion disks must be empty of further parents."""
    if u < 0:
        raise ValidationError("u must be >= 0")
    if u < params.delta:
        return 0.0
    return math.exp(-params.lambda_p * v_union(params.delta, u))


def pair_retention_type2(params: HardCoreParams, r: float) -> float:
    """Probability that two parent points at distance ``r >= delta`` both
    survive mark-based (type II) thinning.

    The closed form is a ratio whose numerator and denominator both vanish
    to second order as the parent density goes to zero, so for
    ``lambda_p * V < 1e-4`` the exact series through third order is used
    instead; the two branches agree to better than ten significant digits at
    the switch point. For ``r >= 2*delta`` the expression collapses to the
    squared retention probability of a single point, evaluated in the
    cancellation-safe form.
    """
    delta = params.delta
    if delta == 0.0:
        return 1.0
    if r < delta:
        raise ValidationError(
            f"pair retention (type II) is defined for r >= delta, got r={r}")
    lam_p = params.lambda_p
    area_disk = math.pi * delta * delta
    x = lam_p * area_disk
    if r >= 2.0 * delta:
        single = -math.expm1(-x) / x
        return single * single
    v = v_union(delta, r)
    y = lam_p * v
    if y < 1e-4:
        return (1.0
                - (x + y) / 3.0
                + (x * x + x * y + y * y) / 12.0
                - (x ** 3 + x * x * y + x * y * y + y ** 3) / 60.0)
    num = 2.0 * v * (-math.expm1(-x)) - 2.0 * area_disk * (-math.expm1(-y))
    den = lam_p * lam_p * area_disk * v * (v - area_disk)
    return num / den


# ---------------------------------------------------------------------------
# K-function
# ---------------------------------------------------------------------------


def k_derivative(params: HardCoreParams, r: float) -> float:
    """Radial derivative K'(r): 2*pi*r times the pair correlation.

    Beyond twice the hard-core distance each process has exactly Poisson
    second-order structure, so K'(r) = 2*pi*r there; the hard core forces
    K'(r) = 0 below delta.
    """
    if r < 0:
        raise ValidationError("r must be >= 0")
    delta = params.delta
    kind = params.kind
    if kind is ProcessKind.POISSON_HOLE:
        return 2.0 * math.pi * r if r >= delta else 0.0
    if r < delta:
        return 0.0
    if r >= 2.0 * delta:
        return 2.0 * math.pi * r
    lam_p = params.lambda_p
    if kind is ProcessKind.MATERN_I:
        # (lambda_p/lambda)^2 * k(r) folded into one exponent; the argument
        # is at most lambda_p*delta^2*(2*pi/3 - sqrt(3)/2), no overflow risk
        exponent = lam_p * (2.0 * math.pi * delta * delta - v_union(delta, r))
        return 2.0 * math.pi * r * math.exp(exponent)
    ratio = intensity(params) / lam_p
    return 2.0 * math.pi * r * pair_retention_type2(params, r) / (ratio * ratio)


def k_function(params: HardCoreParams, r: float,
               quad: QuadratureConfig = QuadratureConfig()) -> float:
    """Expected number of further points within distance r of a typical
    point, normalized by intensity.

    The transition interval [delta, 2*delta] is integrated adaptively; the
    part beyond 2*delta is the exact Poisson increment pi*(r^2 - 4*delta^2).
    Raises a tolerance error when the quadrature does not converge.
    """
    if r < 0:
        raise ValidationError("r must be >= 0")
    delta = params.delta
    if params.kind is ProcessKind.POISSON_HOLE:
        return math.pi * max(r * r - delta * delta, 0.0)
    if delta == 0.0:
        return math.pi * r * r
    if r <= delta:
        return 0.0
    inner_end = min(r, 2.0 * delta)
    result = integrate(lambda u: k_derivative(params, u), delta, inner_end, quad)
    result.require("K-function transition integral")
    total = result.value
    if r > 2.0 * delta:
        total += math.pi * (r * r - 4.0 * delta * delta)
    return total


def k2delta_lower_bound(params: HardCoreParams) -> float:
    """Closed-form lower bound on K(2*delta) for the type I process.

    Comes from bounding the union area by its chord on the transition
    interval; always strictly below the quadrature value for delta > 0, and
    0 at delta = 0 to match K(0) = 0. Evaluated with expm1 so small
    exponents keep full precision.
    """
    if params.kind is not ProcessKind.MATERN_I:
        raise ValidationError("the K(2*delta) lower bound applies to the "
                              "type I process only")
    lam_p, delta = params.lambda_p, params.delta
    exponent = lam_p * delta * delta * (2.0 * math.pi / 3.0 - _SQRT3 / 2.0)
    return (2.0 * math.pi / (_SQRT3 * lam_p)) * math.expm1(exponent)
