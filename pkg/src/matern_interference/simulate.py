"""Exact samplers for the three processes and Palm-conditioned Monte Carlo.

Sampling is exact, not approximate: the type I Palm construction uses the
fact that conditioning a Poisson parent on an empty exclusion ball just
removes that ball from its domain, and the type II construction uses
rejection on the origin's mark neighborhood. Window truncation is corrected
with an analytic tail that is unbiased because every process kind has
exactly Poisson second-order structure beyond twice the hard-core distance.

Determinism contract: replicate k draws from a generator seeded with
SeedSequence(entropy=seed, spawn_key=(k,)), so results are independent of
execution order, chunking, and parallelism. The per-replicate draw order is
fixed: (type I) parent count, squared radii, angles; (type II) repeat
[origin mark, interior count, interior squared radii, angles, marks] until
accepted, then exterior count, squared radii, angles, marks; fading weights
are drawn last, only for retained in-window points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .models import (
    FadingKind,
    FadingModel,
    HardCoreParams,
    InterferenceEstimate,
    PathLossModel,
    PointPattern,
    ProcessKind,
    intensity,
)

__all__ = [
    "TailPolicy",
    "SimulationConfig",
    "default_window_radius",
    "replicate_rng",
    "sample_parent",
    "thin_type1",
    "thin_type2",
    "reliable_mask",
    "sample_palm_type1",
    "sample_palm_type2",
    "sample_palm",
    "PalmEnsemble",
    "run_palm_ensemble",
    "interference_estimate_from_ensemble",
    "intensity_estimate_from_ensemble",
    "estimate_mean_interference",
    "KFunctionEstimate",
    "estimate_k_function",
    "estimate_intensity",
    "pattern_to_csv",
]

_Z95 = 1.959963984540054  # two-sided 95% normal quantile
_TWO_PI = 2.0 * math.pi
_CHUNK = 512  # replicates thinned per batched KD-tree pass
_MIN_ACCEPTANCE = 1e-6


class TailPolicy(enum.Enum):
    ANALYTIC_TAIL = "analytic-tail"
    TRUNCATE_ONLY = "truncate-only"


@dataclass(frozen=True)
class SimulationConfig:
    """Window, replication and stream parameters for one Monte Carlo run.

    ``guard`` is the margin (at least the hard-core distance) kept between
    counted points and the window edge so thinning decisions are exact; when
    None it defaults to the hard-core distance of the paired parameters.
    The window must satisfy window_radius >= 2*delta + guard.
    """

    window_radius: float
    replicates: int = 1000
    seed: int = 0
    guard: Optional[float] = None
    fading: FadingModel = FadingModel()
    tail_policy: TailPolicy = TailPolicy.ANALYTIC_TAIL

    def __post_init__(self):
        if not (self.window_radius > 0 and math.isfinite(self.window_radius)):
            raise ValidationError("window_radius must be positive and finite")
        if not (isinstance(self.replicates, int) and self.replicates >= 1):
            raise ValidationError("replicates must be an integer >= 1")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if self.guard is not None and not (self.guard >= 0 and math.isfinite(self.guard)):
            raise ValidationError("guard must be >= 0")


def default_window_radius(params: HardCoreParams) -> float:
    """Window that keeps the analytic tail below about a percent of the
    total for cubic-law path loss."""
    return max(10.0 * params.delta, 20.0 / math.sqrt(params.lambda_p))


def _resolve_guard(params: HardCoreParams, cfg: SimulationConfig) -> float:
    guard = params.delta if cfg.guard is None else cfg.guard
    if guard < params.delta:
        raise ValidationError(
            f"guard={guard} is below the hard-core distance {params.delta}; "
            "thinning near the window edge would be unreliable")
    if cfg.window_radius < 2.0 * params.delta + guard:
        raise ValidationError(
            f"window_radius={cfg.window_radius} is too small; need at least "
            f"2*delta + guard = {2.0 * params.delta + guard}")
    return guard


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """The stream for one replicate; the (seed, replicate) pair fully
    determines it regardless of how many other replicates run."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(replicate,)))


def _uniform_in_annulus(rng: np.random.Generator, r_inner: float,
                        r_outer: float, n: int) -> np.ndarray:
    # squared radius uniform on [r_inner^2, r_outer^2] gives uniform area density
    rsq = rng.uniform(r_inner * r_inner, r_outer * r_outer, n)
    theta = rng.uniform(0.0, _TWO_PI, n)
    r = np.sqrt(rsq)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def sample_parent(lambda_p: float, r_outer: float, rng: np.random.Generator,
                  r_inner: float = 0.0, with_marks: bool = False) -> PointPattern:
    """Poisson pattern of intensity lambda_p on the disk of radius r_outer,
    or on the annulus (r_inner, r_outer) when r_inner > 0."""
    if not lambda_p > 0:
        raise ValidationError("lambda_p must be > 0")
    if not (0 <= r_inner <= r_outer and math.isfinite(r_outer)):
        raise ValidationError("need 0 <= r_inner <= r_outer < inf")
    area = math.pi * (r_outer * r_outer - r_inner * r_inner)
    n = int(rng.poisson(lambda_p * area)) if area > 0 else 0
    points = _uniform_in_annulus(rng, r_inner, r_outer, n)
    marks = rng.uniform(0.0, 1.0, n) if with_marks else None
    window = r_outer if r_outer > 0 else 1.0
    return PointPattern(points=points, window_radius=window, marks=marks)


# ---------------------------------------------------------------------------
# Thinning
# ---------------------------------------------------------------------------


def _strict_pairs(points: np.ndarray, delta: float) -> np.ndarray:
    """Index pairs at distance strictly below delta (shape (m, 2))."""
    if delta <= 0 or len(points) < 2:
        return np.empty((0, 2), dtype=np.intp)
    from scipy.spatial import cKDTree

    pairs = cKDTree(points).query_pairs(delta, output_type="ndarray")
    if len(pairs) == 0:
        return pairs
    diff = points[pairs[:, 0]] - points[pairs[:, 1]]
    dist_sq = np.einsum("ij,ij->i", diff, diff)
    return pairs[dist_sq < delta * delta]


def _type1_dead_mask(points: np.ndarray, delta: float) -> np.ndarray:
    dead = np.zeros(len(points), dtype=bool)
    pairs = _strict_pairs(points, delta)
    dead[pairs[:, 0]] = True
    dead[pairs[:, 1]] = True
    return dead


def _type2_dead_mask(points: np.ndarray, marks: np.ndarray,
                     delta: float) -> np.ndarray:
    dead = np.zeros(len(points), dtype=bool)
    pairs = _strict_pairs(points, delta)
    if len(pairs):
        mi = marks[pairs[:, 0]]
        mj = marks[pairs[:, 1]]
        # a point dies iff some neighbor below delta carries a smaller mark,
        # whether or not that neighbor itself survives
        dead[pairs[:, 0][mj < mi]] = True
        dead[pairs[:, 1][mi < mj]] = True
    return dead


def thin_type1(parent: PointPattern, delta: float) -> PointPattern:
    """Remove every point with another parent point strictly closer than
    delta. Points near the window edge are thinned against the available
    parents only; callers needing exact retention should restrict attention
    to points at least delta inside the window (see reliable_mask)."""
    if delta < 0:
        raise ValidationError("delta must be >= 0")
    dead = _type1_dead_mask(parent.points, delta)
    marks = None if parent.marks is None else parent.marks[~dead]
    return PointPattern(points=parent.points[~dead],
                        window_radius=parent.window_radius, marks=marks)


def thin_type2(parent: PointPattern, delta: float) -> PointPattern:
    """Keep a point unless some parent point strictly closer than delta has
    a smaller mark. Same edge caveat as thin_type1."""
    if delta < 0:
        raise ValidationError("delta must be >= 0")
    if parent.marks is None:
        raise ValidationError("type II thinning requires marks")
    if np.unique(parent.marks).size != len(parent):
        raise ValidationError("type II thinning requires distinct marks")
    dead = _type2_dead_mask(parent.points, parent.marks, delta)
    return PointPattern(points=parent.points[~dead],
                        window_radius=parent.window_radius,
                        marks=parent.marks[~dead])


def reliable_mask(pattern: PointPattern, guard: float) -> np.ndarray:
    """True for points far enough from the window edge that their thinning
    decision involved every possible competitor (requires guard >= delta)."""
    if not (0 <= guard <= pattern.window_radius):
        raise ValidationError("guard must lie in [0, window_radius]")
    return pattern.radii <= pattern.window_radius - guard


# ---------------------------------------------------------------------------
# Palm-conditioned sampling (process seen from a typical retained point)
# ---------------------------------------------------------------------------


def _draw_palm_parent(params: HardCoreParams, cfg: SimulationConfig,
                      rng: np.random.Generator):
    """Parent configuration conditioned on a retained point at the origin.

    Returns (points, marks, origin_mark, attempts). For type I the
    conditioning is exact and attempt-free: a parent point is retained at
    the origin iff its exclusion ball is empty, and a Poisson process
    conditioned on an empty ball is simply the process on the complement.
    For type II the origin neighborhood is drawn by rejection; only the
    interior of the exclusion ball needs redrawing because acceptance
    depends on nothing else.
    """
    delta, r_window, lam_p = params.delta, cfg.window_radius, params.lambda_p
    if params.kind is ProcessKind.POISSON_HOLE:
        area = math.pi * (r_window * r_window - delta * delta)
        n = int(rng.poisson(lam_p * area))
        return _uniform_in_annulus(rng, delta, r_window, n), None, None, 1

    r_parent = r_window + delta  # competitors of any in-window point live here
    if params.kind is ProcessKind.MATERN_I:
        area = math.pi * (r_parent * r_parent - delta * delta)
        n = int(rng.poisson(lam_p * area))
        return _uniform_in_annulus(rng, delta, r_parent, n), None, None, 1

    # type II
    if delta > 0:
        acceptance = intensity(params) / lam_p
        if acceptance < _MIN_ACCEPTANCE:
            raise ValidationError(
                f"type II Palm rejection sampling is infeasible: expected "
                f"acceptance rate {acceptance:.3e} < {_MIN_ACCEPTANCE:.0e} "
                f"(lambda_p={lam_p}, delta={delta})")
    mean_interior = lam_p * math.pi * delta * delta
    attempts = 0
    while True:
        attempts += 1
        origin_mark = float(rng.uniform())
        n_in = int(rng.poisson(mean_interior)) if mean_interior > 0 else 0
        pts_in = _uniform_in_annulus(rng, 0.0, delta, n_in)
        marks_in = rng.uniform(0.0, 1.0, n_in)
        if not np.any(marks_in < origin_mark):
            break
    area_out = math.pi * (r_parent * r_parent - delta * delta)
    n_out = int(rng.poisson(lam_p * area_out))
    pts_out = _uniform_in_annulus(rng, delta, r_parent, n_out)
    marks_out = rng.uniform(0.0, 1.0, n_out)
    points = np.concatenate((pts_in, pts_out))
    marks = np.concatenate((marks_in, marks_out))
    return points, marks, origin_mark, attempts


def _palm_dead_mask(params: HardCoreParams, points: np.ndarray,
                    marks: Optional[np.ndarray],
                    origin_mark: Optional[float]) -> np.ndarray:
    delta = params.delta
    if params.kind is ProcessKind.POISSON_HOLE or delta == 0:
        return np.zeros(len(points), dtype=bool)
    if params.kind is ProcessKind.MATERN_I:
        return _type1_dead_mask(points, delta)
    all_points = np.concatenate((points, [[0.0, 0.0]]))
    all_marks = np.append(marks, origin_mark)
    dead = _type2_dead_mask(all_points, all_marks, delta)
    return dead[:-1]


def _require_kind(params: HardCoreParams, kind: ProcessKind, what: str) -> None:
    if params.kind is not kind:
        raise ValidationError(f"{what} requires a {kind.value} parameter set")


def sample_palm_type1(params: HardCoreParams, cfg: SimulationConfig,
                      replicate: int = 0) -> PointPattern:
    """One type I pattern seen from a typical retained point at the origin,
    origin excluded; exact for all points within the window."""
    _require_kind(params, ProcessKind.MATERN_I, "sample_palm_type1")
    _resolve_guard(params, cfg)
    rng = replicate_rng(cfg.seed, replicate)
    points, _, _, _ = _draw_palm_parent(params, cfg, rng)
    alive = ~_palm_dead_mask(params, points, None, None)
    radii = np.hypot(points[:, 0], points[:, 1])
    keep = alive & (radii <= cfg.window_radius)
    return PointPattern(points=points[keep], window_radius=cfg.window_radius)


def sample_palm_type2(params: HardCoreParams, cfg: SimulationConfig,
                      replicate: int = 0) -> PointPattern:
    """Type II analogue of sample_palm_type1; the origin's mark competes in
    the thinning, and survivor marks are attached to the output."""
    _require_kind(params, ProcessKind.MATERN_II, "sample_palm_type2")
    _resolve_guard(params, cfg)
    rng = replicate_rng(cfg.seed, replicate)
    points, marks, origin_mark, _ = _draw_palm_parent(params, cfg, rng)
    alive = ~_palm_dead_mask(params, points, marks, origin_mark)
    radii = np.hypot(points[:, 0], points[:, 1])
    keep = alive & (radii <= cfg.window_radius)
    return PointPattern(points=points[keep], window_radius=cfg.window_radius,
                        marks=marks[keep])


def sample_palm(params: HardCoreParams, cfg: SimulationConfig,
                replicate: int = 0) -> PointPattern:
    """Palm sample for any process kind."""
    if params.kind is ProcessKind.MATERN_I:
        return sample_palm_type1(params, cfg, replicate)
    if params.kind is ProcessKind.MATERN_II:
        return sample_palm_type2(params, cfg, replicate)
    _resolve_guard(params, cfg)
    rng = replicate_rng(cfg.seed, replicate)
    points, _, _, _ = _draw_palm_parent(params, cfg, rng)
    return PointPattern(points=points, window_radius=cfg.window_radius)


# ---------------------------------------------------------------------------
# Ensembles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PalmEnsemble:
    """Every retained in-window point across a batch of Palm replicates,
    as flat arrays grouped by replicate."""

    radii: np.ndarray
    rep_ids: np.ndarray
    weights: np.ndarray  # fading coefficients, ones when fading is off
    replicates: int
    window_radius: float
    delta: float
    acceptance_rate: Optional[float]  # type II rejection diagnostic


def run_palm_ensemble(params: HardCoreParams, cfg: SimulationConfig) -> PalmEnsemble:
    """Draw cfg.replicates Palm patterns and flatten them.

    Replicates are thinned in chunks: each chunk is laid out along the x
    axis with spacing wider than any interaction range and passed through
    one KD-tree query, which removes the per-replicate Python cost. The
    per-replicate streams make the result identical to looping over
    sample_palm one replicate at a time.
    """
    _resolve_guard(params, cfg)
    delta, r_window = params.delta, cfg.window_radius
    is_type2 = params.kind is ProcessKind.MATERN_II
    needs_thinning = params.kind is not ProcessKind.POISSON_HOLE and delta > 0
    spacing = 2.0 * (r_window + delta) + 2.0 * delta + 1.0
    fading_on = cfg.fading.kind is not FadingKind.NONE

    radii_parts: list[np.ndarray] = []
    rep_parts: list[np.ndarray] = []
    weight_parts: list[np.ndarray] = []
    total_attempts = 0

    for chunk_start in range(0, cfg.replicates, _CHUNK):
        chunk = min(_CHUNK, cfg.replicates - chunk_start)
        rngs = []
        pts_list = []
        marks_list = []
        origin_marks = np.empty(chunk)
        counts = np.empty(chunk, dtype=np.intp)
        for j in range(chunk):
            rng = replicate_rng(cfg.seed, chunk_start + j)
            points, marks, origin_mark, attempts = _draw_palm_parent(params, cfg, rng)
            total_attempts += attempts
            rngs.append(rng)
            pts_list.append(points)
            marks_list.append(marks)
            origin_marks[j] = math.nan if origin_mark is None else origin_mark
            counts[j] = len(points)

        points = np.concatenate(pts_list) if pts_list else np.empty((0, 2))
        rep_local = np.repeat(np.arange(chunk), counts)
        if needs_thinning:
            shifted = points.copy()
            shifted[:, 0] += rep_local * spacing
            if is_type2:
                origins = np.column_stack(
                    (np.arange(chunk) * spacing, np.zeros(chunk)))
                marks = np.concatenate(
                    [m for m in marks_list] + [origin_marks])
                dead = _type2_dead_mask(
                    np.concatenate((shifted, origins)), marks, delta)[:len(points)]
            else:
                dead = _type1_dead_mask(shifted, delta)
        else:
            dead = np.zeros(len(points), dtype=bool)

        radii = np.hypot(points[:, 0], points[:, 1])
        keep = ~dead & (radii <= r_window)
        kept_radii = radii[keep]
        kept_rep = rep_local[keep]
        if fading_on:
            per_rep = np.bincount(kept_rep, minlength=chunk)
            weights = np.concatenate(
                [cfg.fading.sample(rngs[j], int(per_rep[j])) for j in range(chunk)])
        else:
            weights = np.ones(kept_radii.size)
        radii_parts.append(kept_radii)
        rep_parts.append(kept_rep + chunk_start)
        weight_parts.append(weights)

    rate = cfg.replicates / total_attempts if is_type2 and delta > 0 else None
    return PalmEnsemble(
        radii=np.concatenate(radii_parts),
        rep_ids=np.concatenate(rep_parts),
        weights=np.concatenate(weight_parts),
        replicates=cfg.replicates,
        window_radius=r_window,
        delta=delta,
        acceptance_rate=rate,
    )


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def interference_estimate_from_ensemble(
        ens: PalmEnsemble, params: HardCoreParams, pathloss: PathLossModel,
        tail_policy: TailPolicy = TailPolicy.ANALYTIC_TAIL) -> InterferenceEstimate:
    """Mean interference (with 95% CI) from an already-sampled ensemble."""
    contributions = ens.weights * np.asarray(pathloss(ens.radii), dtype=float)
    per_rep = np.bincount(ens.rep_ids, weights=contributions,
                          minlength=ens.replicates)
    tail = 0.0
    if tail_policy is TailPolicy.ANALYTIC_TAIL:
        # unbiased: the pair correlation is exactly Poisson beyond 2*delta,
        # and the window never ends inside the transition annulus
        tail = _TWO_PI * intensity(params) * pathloss.radial_integral(
            ens.window_radius, math.inf)
    n = ens.replicates
    mean = float(np.mean(per_rep)) + tail
    std_error = float(np.std(per_rep, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return InterferenceEstimate(
        mean=mean,
        std_error=std_error,
        ci_low=mean - _Z95 * std_error,
        ci_high=mean + _Z95 * std_error,
        replicates=n,
        tail_correction=tail,
    )


def intensity_estimate_from_ensemble(
        ens: PalmEnsemble, params: HardCoreParams) -> tuple[float, float]:
    """(intensity, standard error) from counts in the annulus between
    2*delta and the window radius, where the expected Palm count is exactly
    the intensity times the annulus area."""
    r_out, delta = ens.window_radius, ens.delta
    area = math.pi * (r_out * r_out - 4.0 * delta * delta)
    if area <= 0:
        raise ValidationError("window too small for the intensity annulus")
    in_annulus = ens.radii > 2.0 * delta
    counts = np.bincount(ens.rep_ids[in_annulus], minlength=ens.replicates)
    n = ens.replicates
    value = float(np.mean(counts)) / area
    std_error = (float(np.std(counts, ddof=1) / math.sqrt(n)) / area
                 if n > 1 else 0.0)
    return value, std_error


def estimate_mean_interference(params: HardCoreParams, pathloss: PathLossModel,
                               cfg: SimulationConfig) -> InterferenceEstimate:
    """Palm Monte Carlo estimate of the mean interference at the typical
    point: sample, sum fading-weighted path loss within the window, and add
    the analytic tail beyond it (zero under TruncateOnly)."""
    ens = run_palm_ensemble(params, cfg)
    return interference_estimate_from_ensemble(ens, params, pathloss,
                                               cfg.tail_policy)


@dataclass(frozen=True)
class KFunctionEstimate:
    """Empirical K-function over an ensemble of Palm patterns."""

    radii: np.ndarray
    k_values: np.ndarray
    std_errors: np.ndarray
    intensity_estimate: float
    replicates: int


def estimate_k_function(patterns: Sequence[PointPattern],
                        radii: Sequence[float],
                        params: HardCoreParams) -> KFunctionEstimate:
    """Empirical normalized count of points within each radius, averaged
    over Palm replicates and divided by the empirical intensity (from the
    exactly-Poisson annulus beyond 2*delta).

    Standard errors cover the count average only; the intensity estimate's
    own error is an order of magnitude smaller in the intended regimes.
    """
    if len(patterns) == 0:
        raise ValidationError("need at least one Palm pattern")
    r_window = patterns[0].window_radius
    if any(p.window_radius != r_window for p in patterns):
        raise ValidationError("all patterns must share one window radius")
    r_grid = np.asarray(radii, dtype=float)
    if r_grid.ndim != 1 or r_grid.size == 0 or np.any(r_grid < 0):
        raise ValidationError("radii must be a nonempty 1-d grid of r >= 0")
    if np.any(r_grid > r_window):
        raise ValidationError("radii beyond the window would be truncated")
    delta = params.delta
    annulus_area = math.pi * (r_window * r_window - 4.0 * delta * delta)
    if annulus_area <= 0:
        raise ValidationError("window too small for the intensity annulus")

    n = len(patterns)
    counts = np.empty((n, r_grid.size))
    annulus_counts = np.empty(n)
    for i, pattern in enumerate(patterns):
        pt_radii = np.sort(pattern.radii)
        counts[i] = np.searchsorted(pt_radii, r_grid, side="right")
        annulus_counts[i] = pt_radii.size - np.searchsorted(
            pt_radii, 2.0 * delta, side="right")

    lam_hat = float(np.mean(annulus_counts)) / annulus_area
    if lam_hat <= 0:
        raise ValidationError("no points beyond 2*delta; cannot normalize")
    k_values = np.mean(counts, axis=0) / lam_hat
    if n > 1:
        std_errors = np.std(counts, axis=0, ddof=1) / math.sqrt(n) / lam_hat
    else:
        std_errors = np.zeros(r_grid.size)
    return KFunctionEstimate(radii=r_grid, k_values=k_values,
                             std_errors=std_errors,
                             intensity_estimate=lam_hat, replicates=n)


def estimate_intensity(params: HardCoreParams,
                       cfg: SimulationConfig) -> tuple[float, float]:
    """(intensity, standard error) by thinning parent patterns in a disk
    window and counting points at least `guard` inside the edge, where the
    thinning decision is exact."""
    guard = _resolve_guard(params, cfg)
    r_window = cfg.window_radius
    core_radius = r_window - guard
    if core_radius <= 0:
        raise ValidationError("guard leaves no interior to count")
    core_area = math.pi * core_radius * core_radius
    needs_marks = params.kind is ProcessKind.MATERN_II
    values = np.empty(cfg.replicates)
    for k in range(cfg.replicates):
        rng = replicate_rng(cfg.seed, k)
        parent = sample_parent(params.lambda_p, r_window, rng,
                               with_marks=needs_marks)
        if params.kind is ProcessKind.MATERN_I:
            thinned = thin_type1(parent, params.delta)
        elif params.kind is ProcessKind.MATERN_II:
            thinned = thin_type2(parent, params.delta)
        else:
            thinned = parent
        values[k] = np.count_nonzero(reliable_mask(thinned, guard)) / core_area
    mean = float(np.mean(values))
    std_error = (float(np.std(values, ddof=1) / math.sqrt(cfg.replicates))
                 if cfg.replicates > 1 else 0.0)
    return mean, std_error


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def pattern_to_csv(pattern: PointPattern) -> str:
    """CSV export with header ``x,y,mark``; the mark field is left empty for
    unmarked patterns. Locale-independent formatting, 12 significant digits."""
    lines = ["x,y,mark"]
    marks = pattern.marks
    for i, (x, y) in enumerate(pattern.points):
        mark = "" if marks is None else f"{marks[i]:.12g}"
        lines.append(f"{x:.12g},{y:.12g},{mark}")
    return "\n".join(lines) + "\n"
