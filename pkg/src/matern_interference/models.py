"""Domain types shared by every other module.

Conventions: lengths are dimensionless model units, intensities are points
per unit area, and interference values are linear power (path-loss
normalized). Decibel conversion happens only at the CLI boundary. All types
are immutable value objects and safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ValidationError

__all__ = [
    "ProcessKind",
    "HardCoreParams",
    "PowerLawPathLoss",
    "TabulatedPathLoss",
    "PathLossModel",
    "FadingKind",
    "FadingModel",
    "PointPattern",
    "InterferenceEstimate",
    "intensity",
]


class ProcessKind(enum.Enum):
    """Which transmitter process the parameters describe.

    ``POISSON_HOLE`` is the reference process: a Poisson process of constant
    intensity whose interference integral at the typical point starts at the
    hard-core distance (a PPP with an exclusion ball around the receiver).
    """

    MATERN_I = "matern1"
    MATERN_II = "matern2"
    POISSON_HOLE = "poisson"


@dataclass(frozen=True)
class HardCoreParams:
    """Parent intensity, hard-core distance and process type.

    ``lambda_p`` is the intensity of the parent Poisson process before
    thinning (for ``POISSON_HOLE`` it is simply the process intensity).
    ``delta`` is the minimum separation the thinning enforces; ``delta = 0``
    degenerates both Matérn types to the parent process.
    """

    lambda_p: float
    delta: float
    kind: ProcessKind = ProcessKind.MATERN_I

    def __post_init__(self):
        if not (self.lambda_p > 0 and math.isfinite(self.lambda_p)):
            raise ValidationError(f"lambda_p must be > 0, got {self.lambda_p}")
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise ValidationError(f"delta must be >= 0, got {self.delta}")
        if not isinstance(self.kind, ProcessKind):
            raise ValidationError(f"kind must be a ProcessKind, got {self.kind!r}")


def intensity(params: HardCoreParams) -> float:
    """Intensity of the (thinned) process.

    Type I retains a parent point only if it has no neighbour closer than the
    hard-core distance, type II resolves conflicts by marks, and the Poisson
    reference is not thinned at all. The type II expression is evaluated
    through ``expm1`` so it stays exact as ``lambda_p * pi * delta**2 -> 0``.
    """
    lam_p, d = params.lambda_p, params.delta
    if params.kind is ProcessKind.POISSON_HOLE:
        return lam_p
    x = lam_p * math.pi * d * d
    if params.kind is ProcessKind.MATERN_I:
        return lam_p * math.exp(-x)
    if x == 0.0:
        return lam_p
    return lam_p * (-math.expm1(-x)) / x


# ---------------------------------------------------------------------------
# Path loss
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLawPathLoss:
    """g(r) = (max{r0, r})^(-alpha).

    ``alpha > 2`` is required for every tail integral to converge. The inner
    cutoff ``r0`` must not exceed the hard-core distance of the process the
    model is paired with (validated where the two meet), so the closed forms
    built on a pure power law over [delta, 2*delta] always apply.
    """

    alpha: float
    r0: float = 0.0

    def __post_init__(self):
        if not (self.alpha > 2 and math.isfinite(self.alpha)):
            raise ValidationError(
                f"power path loss requires alpha > 2, got {self.alpha}")
        if not (self.r0 >= 0 and math.isfinite(self.r0)):
            raise ValidationError(f"r0 must be >= 0, got {self.r0}")

    def __call__(self, r):
        return np.maximum(self.r0, r) ** (-self.alpha)

    def radial_integral(self, lower: float, upper: float = math.inf) -> float:
        """Exact integral of g(r) * r over [lower, upper]."""
        if lower < 0 or upper < lower:
            raise ValidationError("bad radial integration range")

        def antideriv_from(lo: float, hi: float) -> float:
            # integral over [lo, hi] with lo >= r0, pure power region
            a = self.alpha
            if math.isinf(hi):
                return lo ** (2.0 - a) / (a - 2.0)
            return (lo ** (2.0 - a) - hi ** (2.0 - a)) / (a - 2.0)

        r0 = self.r0
        if lower >= r0:
            if lower == 0.0:  # r0 == 0 as well: diverges at the origin
                raise ValidationError(
                    "power path loss with r0 = 0 is not integrable down to r = 0")
            return antideriv_from(lower, upper)
        cut = min(r0, upper)
        flat = r0 ** (-self.alpha) * (cut * cut - lower * lower) / 2.0
        if upper <= r0:
            return flat
        return flat + antideriv_from(r0, upper)


@dataclass(frozen=True)
class TabulatedPathLoss:
    """Path loss given as a table of (r, g(r)) samples.

    Linear interpolation between knots; constant extension below the first
    knot and zero beyond the last (compact support), so the plane integral is
    always finite and window truncation needs no modelling assumptions. The
    table must be nonnegative and nonincreasing.
    """

    r_grid: tuple[float, ...]
    g_grid: tuple[float, ...]

    def __post_init__(self):
        r = np.asarray(self.r_grid, dtype=float)
        g = np.asarray(self.g_grid, dtype=float)
        if r.ndim != 1 or r.shape != g.shape or r.size < 2:
            raise ValidationError("tabulated path loss needs matching 1-d grids "
                                  "with at least two samples")
        if not np.all(np.diff(r) > 0) or r[0] < 0:
            raise ValidationError("tabulated r grid must be strictly increasing "
                                  "and nonnegative")
        if np.any(g < 0) or np.any(np.diff(g) > 0):
            raise ValidationError("tabulated g must be nonnegative and nonincreasing")
        # trapezoidal estimate of the plane integral; rejects NaN/inf tables
        plane = 2.0 * math.pi * float(np.trapezoid(g * r, r))
        if not math.isfinite(plane):
            raise ValidationError("tabulated path loss has a non-finite plane integral")
        object.__setattr__(self, "r_grid", tuple(float(v) for v in r))
        object.__setattr__(self, "g_grid", tuple(float(v) for v in g))

    def __call__(self, r):
        return np.interp(r, self.r_grid, self.g_grid, left=self.g_grid[0], right=0.0)

    @property
    def support_end(self) -> float:
        return self.r_grid[-1]

    def radial_integral(self, lower: float, upper: float = math.inf) -> float:
        """Integral of g(r) * r over [lower, upper] (g vanishes past the table)."""
        if lower < 0 or upper < lower:
            raise ValidationError("bad radial integration range")
        hi = min(upper, self.support_end)
        if hi <= lower:
            return 0.0
        knots = [x for x in self.r_grid if lower < x < hi]
        grid = np.array([lower] + knots + [hi])
        # g is piecewise linear, so g*r is piecewise quadratic; Simpson on
        # each piece (via midpoint refinement) is exact
        mids = (grid[:-1] + grid[1:]) / 2.0
        widths = np.diff(grid)
        fa = self(grid[:-1]) * grid[:-1]
        fm = self(mids) * mids
        fb = self(grid[1:]) * grid[1:]
        return float(np.sum(widths * (fa + 4.0 * fm + fb) / 6.0))


PathLossModel = Union[PowerLawPathLoss, TabulatedPathLoss]


# ---------------------------------------------------------------------------
# Fading
# ---------------------------------------------------------------------------


class FadingKind(enum.Enum):
    NONE = "none"
    UNIT_MEAN_EXPONENTIAL = "exponential"
    UNIT_MEAN_GAMMA = "gamma"


@dataclass(frozen=True)
class FadingModel:
    """Per-node power fading; every variant has mean exactly one."""

    kind: FadingKind = FadingKind.NONE
    gamma_shape: Optional[float] = None

    def __post_init__(self):
        if self.kind is FadingKind.UNIT_MEAN_GAMMA:
            if self.gamma_shape is None or not self.gamma_shape > 0:
                raise ValidationError("gamma fading requires shape > 0")
        elif self.gamma_shape is not None:
            raise ValidationError("gamma_shape only applies to gamma fading")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind is FadingKind.NONE:
            return np.ones(n)
        if self.kind is FadingKind.UNIT_MEAN_EXPONENTIAL:
            return rng.exponential(1.0, size=n)
        m = self.gamma_shape
        return rng.gamma(m, 1.0 / m, size=n)


# ---------------------------------------------------------------------------
# Point patterns and estimates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointPattern:
    """A finite planar point set with optional marks and its sampling window.

    The window is the disk of radius ``window_radius`` centred at the origin;
    every point must lie inside it. Marks, when present, live in [0, 1).
    """

    points: np.ndarray  # shape (n, 2)
    window_radius: float
    marks: Optional[np.ndarray] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "points", pts)
        if not (self.window_radius > 0 and math.isfinite(self.window_radius)):
            raise ValidationError("window_radius must be positive and finite")
        r2 = np.einsum("ij,ij->i", pts, pts)
        if np.any(r2 > self.window_radius**2 * (1 + 1e-12)):
            raise ValidationError("all points must lie within the sampling window")
        if self.marks is not None:
            marks = np.asarray(self.marks, dtype=float)
            if marks.shape != (len(pts),):
                raise ValidationError("marks must match the number of points")
            if np.any(marks < 0) or np.any(marks >= 1):
                raise ValidationError("marks must lie in [0, 1)")
            object.__setattr__(self, "marks", marks)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def radii(self) -> np.ndarray:
        """Distances of the points from the origin."""
        return np.hypot(self.points[:, 0], self.points[:, 1])

    def min_pair_distance(self) -> float:
        """Smallest pairwise distance (inf for fewer than two points)."""
        if len(self) < 2:
            return math.inf
        from scipy.spatial.distance import pdist

        return float(pdist(self.points).min())


@dataclass(frozen=True)
class InterferenceEstimate:
    """Monte Carlo mean interference with its uncertainty.

    ``tail_correction`` is the analytic mean added for the region beyond the
    simulation window; it is already included in ``mean`` and the confidence
    bounds.
    """

    mean: float
    std_error: float
    ci_low: float
    ci_high: float
    replicates: int
    tail_correction: float

    def __post_init__(self):
        if not (self.ci_low <= self.mean <= self.ci_high):
            raise ValidationError("confidence interval must bracket the mean")
        if self.std_error < 0 or self.tail_correction < 0:
            raise ValidationError("std_error and tail_correction must be >= 0")
