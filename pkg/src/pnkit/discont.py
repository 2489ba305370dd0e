"""Exactly representable discontinuous self-maps and their jump measure.

A map on an interval is stored as affine pieces with declared
breakpoints, each interior breakpoint owned by exactly one adjacent
piece.  One-sided limits at any point are therefore exact, and the
distribution-valued measure of discontinuity -- the worst pointwise
infimum of the norm profile of f(p) minus a limit value -- is an exact
finite computation.

A grid estimator of the same quantity, driven only by point evaluations
of the map, recovers it from below through a schedule of shrinking
neighborhoods:

    for each t: inf over grid p of the stabilized
        inf over grid q in the delta-neighborhood of p, q != p,
            of the norm profile of f(p) - f(q), evaluated at t.

The inner infimum excludes q = p.  Including it would collapse every
estimate to the maximal element (the profile of the null vector), since
the grid, unlike the continuum, has no points other than p in every
neighborhood.  This is the single most consequential discretization
decision in the module.  The neighborhoods are nested, so the inner
infimum only grows as the schedule descends; the code asserts that
monotonicity on every run instead of assuming it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .ddf import Ddf, VALUE_TOL, make_epsilon, sibley_distance
from .errors import InvalidArgumentError, PnkitError
from .pn_space import PnSpace, Vector, as_vector

DEFAULT_DELTA_SCHEDULE: tuple[float, ...] = tuple(0.2 * 2.0 ** -k for k in range(7))
DEFAULT_GRID_RESOLUTIONS: tuple[float, ...] = (1.0 / 1024.0,)
DEFAULT_T_GRID: tuple[float, ...] = tuple(k / 1024.0 for k in range(1, 1025))


@dataclass(frozen=True)
class Piece:
    """One affine piece a*x + b on [lo, hi]; `closed` names the end this
    piece owns at interior breakpoints ("left" means [lo, hi))."""

    lo: float
    hi: float
    closed: str
    slope: float
    intercept: float

    def __post_init__(self):
        for name in ("lo", "hi", "slope", "intercept"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidArgumentError(f"piece field {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.closed not in ("left", "right"):
            raise InvalidArgumentError(f"piece closed flag must be 'left' or 'right', got {self.closed!r}")
        if not self.hi > self.lo:
            raise InvalidArgumentError(f"piece must have positive width, got [{self.lo}, {self.hi}]")

    def value(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PiecewiseMap1D:
    """A piecewise-affine self-map of [lo, hi] with declared breakpoints.

    Pieces partition the domain exactly: consecutive pieces meet at a
    shared breakpoint owned by exactly one of them, the first piece owns
    the left domain endpoint and the last the right one.  The image of
    every piece must stay inside the domain (checked at piece endpoints,
    which suffices for affine pieces).
    """

    domain: tuple[float, float]
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        lo, hi = (float(v) for v in self.domain)
        if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
            raise InvalidArgumentError(f"domain must be a nondegenerate interval, got {self.domain!r}")
        object.__setattr__(self, "domain", (lo, hi))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise InvalidArgumentError("map needs at least one piece")
        if self.pieces[0].lo != lo or self.pieces[-1].hi != hi:
            raise InvalidArgumentError("pieces must start and end exactly at the domain endpoints")
        for k, (a, b) in enumerate(zip(self.pieces, self.pieces[1:])):
            if a.hi != b.lo:
                raise InvalidArgumentError(
                    f"pieces {k} and {k + 1} do not meet: {a.hi!r} != {b.lo!r}")
            left_owns = a.closed == "right"
            right_owns = b.closed == "left"
            if left_owns == right_owns:
                raise InvalidArgumentError(
                    f"breakpoint {a.hi!r} must be owned by exactly one adjacent piece")
        slack = 1e-12
        for k, p in enumerate(self.pieces):
            for x in (p.lo, p.hi):
                y = p.value(x)
                if y < lo - slack or y > hi + slack:
                    raise InvalidArgumentError(
                        f"piece {k} maps {x!r} to {y!r}, outside the domain [{lo}, {hi}]")

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(p.hi for p in self.pieces[:-1])

    @cached_property
    def _breaks_np(self) -> np.ndarray:
        return np.array(self.breakpoints, dtype=float)

    @cached_property
    def _slopes_np(self) -> np.ndarray:
        return np.array([p.slope for p in self.pieces], dtype=float)

    @cached_property
    def _icepts_np(self) -> np.ndarray:
        return np.array([p.intercept for p in self.pieces], dtype=float)

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation; callers must keep xs inside the domain."""
        xs = np.asarray(xs, dtype=float)
        idx = np.searchsorted(self._breaks_np, xs, side="right")
        for i, br in enumerate(self.breakpoints):
            if self.pieces[i].closed == "right":  # breakpoint owned by the left piece
                idx[xs == br] = i
        return self._slopes_np[idx] * xs + self._icepts_np[idx]

    def eval(self, x: float) -> float:
        x = float(x)
        lo, hi = self.domain
        if math.isnan(x) or x < lo or x > hi:
            raise InvalidArgumentError(f"point {x!r} outside the domain [{lo}, {hi}]")
        return float(self.eval_many(np.array([x]))[0])

    def left_limit(self, x: float) -> float:
        """Limit from below, read off the piece covering (.., x]."""
        for p in self.pieces:
            if p.lo < x <= p.hi:
                return p.value(x)
        raise InvalidArgumentError(f"no piece approaches {x!r} from the left")

    def right_limit(self, x: float) -> float:
        """Limit from above, read off the piece covering [x, ..)."""
        for p in self.pieces:
            if p.lo <= x < p.hi:
                return p.value(x)
        raise InvalidArgumentError(f"no piece approaches {x!r} from the right")

    def sup_abs_on_interval(self, a: float, b: float) -> float:
        """sup of |f| over the clipped interval [a, b]; exact because the
        absolute value of an affine function peaks at segment endpoints."""
        lo, hi = self.domain
        a, b = max(a, lo), min(b, hi)
        if b < a:
            raise InvalidArgumentError("interval does not meet the domain")
        best = 0.0
        for p in self.pieces:
            s, e = max(a, p.lo), min(b, p.hi)
            if s <= e:
                best = max(best, abs(p.value(s)), abs(p.value(e)))
        return best

    def piece_fixed_points(self) -> tuple[float, ...]:
        """Exact fixed points of individual affine pieces that land in
        the domain; used to enrich search grids."""
        out: list[float] = []
        lo, hi = self.domain
        for p in self.pieces:
            if p.slope == 1.0:
                if p.intercept == 0.0:
                    out.append(0.5 * (p.lo + p.hi))
                continue
            x = p.intercept / (1.0 - p.slope)
            if p.lo - 1e-12 <= x <= p.hi + 1e-12 and lo <= x <= hi:
                out.append(min(max(x, p.lo), p.hi))
        return tuple(out)

    def to_json_obj(self) -> dict:
        return {
            "domain": [self.domain[0], self.domain[1]],
            "pieces": [
                {"from": p.lo, "to": p.hi, "closed": p.closed,
                 "affine": [p.slope, p.intercept]}
                for p in self.pieces
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PiecewiseMap1D":
        if not isinstance(obj, dict) or "domain" not in obj or "pieces" not in obj:
            raise InvalidArgumentError("map spec must be an object with 'domain' and 'pieces'")
        dom = obj["domain"]
        if not isinstance(dom, (list, tuple)) or len(dom) != 2:
            raise InvalidArgumentError("map domain must be a [lo, hi] pair")
        pieces = []
        for k, entry in enumerate(obj["pieces"]):
            try:
                a, b = entry["affine"]
                pieces.append(Piece(lo=entry["from"], hi=entry["to"],
                                    closed=entry["closed"], slope=a, intercept=b))
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidArgumentError(f"pieces[{k}]: {exc}") from exc
        return cls(domain=(float(dom[0]), float(dom[1])), pieces=tuple(pieces))


def constant_map(domain: tuple[float, float], value: float) -> PiecewiseMap1D:
    """Single-piece constant self-map; the value must lie in the domain."""
    return PiecewiseMap1D(domain=domain,
                          pieces=(Piece(domain[0], domain[1], "left", 0.0, float(value)),))


@dataclass(frozen=True)
class LimitSet:
    """One-sided limit values of a map at a point, with the attained
    value flagged separately (it belongs to the set only when some
    sequence of other points reaches it, which for piecewise-affine maps
    means it equals a one-sided limit)."""

    values: tuple[float, ...]
    attained: float

    def __post_init__(self):
        if not self.values:
            raise InvalidArgumentError("limit set must be nonempty")


def limit_set(pw: PiecewiseMap1D, p: float) -> LimitSet:
    """Exact one-sided limits of the map at p.

    Left limit from the piece just left of p (when p is above the left
    domain endpoint), right limit symmetrically; values within 1e-12 are
    deduplicated, so a continuity point yields a singleton.
    """
    p = float(p)
    lo, hi = pw.domain
    if math.isnan(p) or p < lo or p > hi:
        raise InvalidArgumentError(f"point {p!r} outside the domain [{lo}, {hi}]")
    vals: list[float] = []
    if p > lo:
        vals.append(pw.left_limit(p))
    if p < hi:
        r = pw.right_limit(p)
        if all(abs(r - v) > 1e-12 for v in vals):
            vals.append(r)
    return LimitSet(values=tuple(vals), attained=pw.eval(p))


def _hull_2d(points: Sequence[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def convex_hull(values):
    """Convex hull of a finite value set.

    Accepts a LimitSet or an iterable; returns the closed interval
    (min, max) for scalars and the counter-clockwise vertex tuple for
    planar points.
    """
    pts = list(values.values) if isinstance(values, LimitSet) else list(values)
    if not pts:
        raise InvalidArgumentError("cannot take the hull of an empty set")
    first = pts[0]
    if isinstance(first, (int, float)):
        xs = [float(v) for v in pts]
        return (min(xs), max(xs))
    if len(first) == 1:
        xs = [float(v[0]) for v in pts]
        return (min(xs), max(xs))
    if len(first) == 2:
        return _hull_2d([(float(a), float(b)) for a, b in pts])
    raise InvalidArgumentError("hulls are supported in dimension 1 and 2 only")


def hull_distance_1d(x: float, hull: tuple[float, float]) -> float:
    lo, hi = hull
    return max(0.0, lo - x, x - hi)


@dataclass(frozen=True)
class SampledMap:
    """A self-map of a compact box known only on a full uniform lattice.

    Point evaluation snaps to the nearest lattice node; this is the
    desk-scale stand-in for maps with no exact piecewise model (and the
    only 2-d map representation here).
    """

    box: tuple[tuple[float, float], ...]
    resolution: float
    images: tuple[Vector, ...]

    def __post_init__(self):
        box = tuple((float(a), float(b)) for a, b in self.box)
        if not box or any(not (math.isfinite(a) and math.isfinite(b) and b > a) for a, b in box):
            raise InvalidArgumentError(f"box must be nondegenerate, got {self.box!r}")
        if len(box) > 2:
            raise InvalidArgumentError("sampled maps are supported in dimension 1 and 2 only")
        res = float(self.resolution)
        if not (math.isfinite(res) and res > 0.0):
            raise InvalidArgumentError(f"resolution must be positive, got {self.resolution!r}")
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "resolution", res)
        object.__setattr__(self, "images",
                           tuple(as_vector(v, len(box)) for v in self.images))
        if len(self.images) != int(np.prod(self.shape)):
            raise InvalidArgumentError(
                f"expected {int(np.prod(self.shape))} images for the full lattice, got {len(self.images)}")
        slack = 1e-9
        for v in self.images:
            for c, (a, b) in zip(v, box):
                if c < a - slack or c > b + slack:
                    raise InvalidArgumentError(f"image {v!r} escapes the box")

    @property
    def dim(self) -> int:
        return len(self.box)

    @cached_property
    def shape(self) -> tuple[int, ...]:
        return tuple(int(round((b - a) / self.resolution)) + 1 for a, b in self.box)

    @cached_property
    def axes(self) -> tuple[np.ndarray, ...]:
        return tuple(np.linspace(a, b, n) for (a, b), n in zip(self.box, self.shape))

    @cached_property
    def _images_np(self) -> np.ndarray:
        return np.array(self.images, dtype=float).reshape(self.shape + (self.dim,))

    def lattice_points(self) -> list[Vector]:
        if self.dim == 1:
            return [(float(x),) for x in self.axes[0]]
        xs, ys = self.axes
        return [(float(a), float(b)) for a in xs for b in ys]

    def _snap(self, p: Vector) -> tuple[int, ...]:
        idx = []
        for c, (a, _), n in zip(p, self.box, self.shape):
            i = int(round((c - a) / self.resolution))
            idx.append(min(max(i, 0), n - 1))
        return tuple(idx)

    def eval_vec(self, p) -> Vector:
        v = as_vector(p, self.dim)
        return tuple(float(c) for c in self._images_np[self._snap(v)])

    def neighbor_images(self, p) -> tuple[Vector, ...]:
        """Images of the lattice nodes adjacent to p (p's own node
        excluded): the grid surrogate for limit values at p."""
        v = as_vector(p, self.dim)
        base = self._snap(v)
        out = []
        offsets = [-1, 0, 1]
        for off in np.ndindex(*(3,) * self.dim):
            d = tuple(offsets[o] for o in off)
            if all(x == 0 for x in d):
                continue
            idx = tuple(b + x for b, x in zip(base, d))
            if all(0 <= i < n for i, n in zip(idx, self.shape)):
                out.append(tuple(float(c) for c in self._images_np[idx]))
        return tuple(out)

    @classmethod
    def from_function(cls, fn: Callable, box, resolution: float) -> "SampledMap":
        box = tuple((float(a), float(b)) for a, b in box)
        shape = tuple(int(round((b - a) / float(resolution))) + 1 for a, b in box)
        axes = [np.linspace(a, b, n) for (a, b), n in zip(box, shape)]
        pts = [(float(x),) for x in axes[0]] if len(box) == 1 else \
              [(float(a), float(b)) for a in axes[0] for b in axes[1]]
        images = [as_vector(fn(p), len(box)) for p in pts]
        return cls(box=box, resolution=float(resolution), images=tuple(images))

    def to_json_obj(self) -> dict:
        return {"box": [[a, b] for a, b in self.box],
                "resolution": self.resolution,
                "images": [list(v) for v in self.images]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SampledMap":
        try:
            return cls(box=tuple((float(a), float(b)) for a, b in obj["box"]),
                       resolution=float(obj["resolution"]),
                       images=tuple(tuple(float(c) for c in v) for v in obj["images"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgumentError(f"sampled map spec: {exc}") from exc


def map_dim(m) -> int:
    if isinstance(m, PiecewiseMap1D):
        return 1
    if isinstance(m, SampledMap):
        return m.dim
    raise InvalidArgumentError(f"unsupported map type {type(m).__name__}")


def map_eval_vec(m, p) -> Vector:
    """Evaluate either map kind on a coordinate tuple."""
    if isinstance(m, PiecewiseMap1D):
        v = as_vector(p, 1)
        return (m.eval(v[0]),)
    return m.eval_vec(p)


def map_box(m) -> tuple[tuple[float, float], ...]:
    if isinstance(m, PiecewiseMap1D):
        return (m.domain,)
    return m.box


def discontinuity_exact(space: PnSpace, pw: PiecewiseMap1D) -> Ddf:
    """Exact measure of discontinuity of a 1-d piecewise-affine map.

    Over the breakpoints (continuity points contribute the maximal
    element and drop out of the infimum), take the pointwise infimum of
    the norm profiles of f(b) minus each one-sided limit.  The profiles
    are the generator rescaled by each |f(b) - limit|, a family totally
    ordered in the scale factor, so the infimum is the generator
    rescaled by the largest gap -- exactly, for any generator.
    """
    if space.dimension != 1:
        raise InvalidArgumentError("exact route requires a 1-d space")
    worst = 0.0
    for b in pw.breakpoints:
        fb = pw.eval(b)
        for q in limit_set(pw, b).values:
            worst = max(worst, abs(fb - q))
    if worst == 0.0:
        return make_epsilon(0.0)
    return space.generator.scale_locations(worst)


def _neighbor_offsets_1d(space: PnSpace, delta: float, step: float, n: int) -> int:
    """Largest j >= 1 with the j-th lattice neighbor inside the strong
    delta-neighborhood; 0 when even the nearest neighbor is outside."""
    g = space.generator
    j = 0
    while j < n:
        r = (j + 1) * step
        if g.eval(delta / r) > 1.0 - delta:
            j += 1
        else:
            break
    return j


@dataclass(frozen=True)
class RefinementLevel:
    grid_h: float
    delta: float
    largest_pair_gap: float | None  # None when the level was skipped

    def to_json_obj(self) -> dict:
        return {"grid_h": self.grid_h, "delta": self.delta,
                "largest_pair_gap": self.largest_pair_gap}


@dataclass(frozen=True)
class DiscontinuityEstimate:
    """Grid estimate of the discontinuity measure with refinement history.

    `ddf` is the final (finest-grid, smallest-delta) estimate.  For each
    t in `t_grid`, `values` holds the final per-t estimate and
    `brackets` the last two refinement values, a convergence bracket in
    place of an error bound.
    """

    ddf: Ddf
    t_grid: tuple[float, ...]
    values: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]
    levels: tuple[RefinementLevel, ...]

    def to_json_obj(self) -> dict:
        return {
            "ddf": self.ddf.to_json_obj(),
            "t_grid": list(self.t_grid),
            "values": list(self.values),
            "brackets": [list(b) for b in self.brackets],
            "levels": [lv.to_json_obj() for lv in self.levels],
        }


def _validate_descending(name: str, values: Sequence[float]) -> tuple[float, ...]:
    vals = tuple(float(v) for v in values)
    if not vals:
        raise InvalidArgumentError(f"{name} must be nonempty")
    if any(v <= 0.0 or not math.isfinite(v) for v in vals):
        raise InvalidArgumentError(f"{name} entries must be positive and finite")
    if any(b >= a for a, b in zip(vals, vals[1:])):
        raise InvalidArgumentError(f"{name} must be strictly descending")
    return vals


def _largest_gap_1d(fv: np.ndarray, max_offset: int) -> float:
    worst = 0.0
    for j in range(1, max_offset + 1):
        worst = max(worst, float(np.max(np.abs(fv[j:] - fv[:-j]))))
    return worst


def _largest_gap_sampled(m: SampledMap, space: PnSpace, delta: float) -> float | None:
    img = m._images_np
    g = space.generator
    worst = None
    max_off = max(m.shape)
    for off in np.ndindex(*(2 * max_off + 1,) * m.dim):
        d = tuple(o - max_off for o in off)
        if all(x == 0 for x in d):
            continue
        r = m.resolution * math.sqrt(sum(x * x for x in d))
        if g.eval(delta / r) <= 1.0 - delta:
            continue
        src = tuple(slice(max(x, 0), img.shape[k] + min(x, 0)) for k, x in enumerate(d))
        dst = tuple(slice(max(-x, 0), img.shape[k] + min(-x, 0)) for k, x in enumerate(d))
        if any(s.start >= s.stop for s in src):
            continue
        diff = img[src] - img[dst]
        gap = float(np.max(np.sqrt(np.sum(diff * diff, axis=-1))))
        worst = gap if worst is None else max(worst, gap)
    return worst


def discontinuity_estimate(space: PnSpace, m, *,
                           delta_schedule: Sequence[float] = DEFAULT_DELTA_SCHEDULE,
                           grid_resolutions: Sequence[float] = DEFAULT_GRID_RESOLUTIONS,
                           t_grid: Sequence[float] = DEFAULT_T_GRID) -> DiscontinuityEstimate:
    """Estimate the discontinuity measure from point evaluations only.

    For the spaces built here every norm profile is the generator
    rescaled by a displacement, so the double infimum at each t reduces
    to the generator rescaled by the largest displacement between
    neighborhood pairs -- the code tracks that one scalar per refinement
    level and rebuilds the per-t curves from it exactly.

    A refinement level whose neighborhood contains no lattice point
    besides p itself is skipped with a warning (grid too coarse for that
    delta).  Per-level largest gaps may only shrink as delta descends;
    that is checked, not assumed.
    """
    deltas = _validate_descending("delta_schedule", delta_schedule)
    grids = _validate_descending("grid_resolutions", grid_resolutions)
    ts = tuple(float(t) for t in t_grid)
    if not ts:
        raise InvalidArgumentError("t_grid must be nonempty")
    if any(t <= 0.0 for t in ts):
        raise InvalidArgumentError("t_grid entries must be positive")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise InvalidArgumentError("t_grid must be strictly ascending")
    if map_dim(m) != space.dimension:
        raise InvalidArgumentError(
            f"map dimension {map_dim(m)} does not match space dimension {space.dimension}")

    levels: list[RefinementLevel] = []
    final_gap: float | None = None
    prev_final_gap: float | None = None

    if isinstance(m, SampledMap):
        grids = (m.resolution,)

    for h in grids:
        if isinstance(m, PiecewiseMap1D):
            lo, hi = m.domain
            n = max(1, int(round((hi - lo) / h)))
            xs = np.linspace(lo, hi, n + 1)
            fv = m.eval_many(xs)
            step = (hi - lo) / n
        level_gap_prev = None
        for delta in deltas:
            if isinstance(m, PiecewiseMap1D):
                max_off = _neighbor_offsets_1d(space, delta, step, n)
                gap = _largest_gap_1d(fv, max_off) if max_off >= 1 else None
            else:
                gap = _largest_gap_sampled(m, space, delta)
            if gap is None:
                warnings.warn(
                    f"delta={delta} admits no lattice neighbors at grid step; level skipped",
                    RuntimeWarning, stacklevel=2)
                levels.append(RefinementLevel(h, delta, None))
                continue
            if level_gap_prev is not None and gap > level_gap_prev + 1e-15:
                raise PnkitError(
                    "neighborhood infimum decreased under refinement; "
                    "nested-neighborhood monotonicity is broken")
            level_gap_prev = gap
            levels.append(RefinementLevel(h, delta, gap))
            prev_final_gap = final_gap
            final_gap = gap

    if final_gap is None:
        raise InvalidArgumentError(
            "every refinement level was below the grid resolution; nothing estimated")

    def curve(gap: float) -> Ddf:
        return make_epsilon(0.0) if gap == 0.0 else space.generator.scale_locations(gap)

    est = curve(final_gap)
    prev = curve(prev_final_gap) if prev_final_gap is not None else est
    ts_np = np.array(ts, dtype=float)
    vals = est.eval_many(ts_np)
    prev_vals = prev.eval_many(ts_np)
    return DiscontinuityEstimate(
        ddf=est,
        t_grid=ts,
        values=tuple(float(v) for v in vals),
        brackets=tuple((float(a), float(b)) for a, b in zip(prev_vals, vals)),
        levels=tuple(levels),
    )


@dataclass(frozen=True)
class RouteComparison:
    """Agreement report between the exact route and the grid estimator."""

    exact: Ddf
    estimate: DiscontinuityEstimate
    distance: float
    bound: float

    @property
    def agree(self) -> bool:
        return self.distance <= self.bound + VALUE_TOL

    def to_json_obj(self) -> dict:
        return {"exact": self.exact.to_json_obj(),
                "estimate": self.estimate.ddf.to_json_obj(),
                "distance": self.distance,
                "bound": self.bound,
                "agree": self.agree}


def compare_discontinuity_routes(space: PnSpace, pw: PiecewiseMap1D, *,
                                 delta_schedule: Sequence[float] = DEFAULT_DELTA_SCHEDULE,
                                 grid_resolutions: Sequence[float] = DEFAULT_GRID_RESOLUTIONS,
                                 t_grid: Sequence[float] = DEFAULT_T_GRID) -> RouteComparison:
    """Compute the discontinuity measure along both routes (exact limit
    gaps vs. grid estimation) and report their metric distance, which
    must stay within twice the finest grid resolution."""
    exact = discontinuity_exact(space, pw)
    est = discontinuity_estimate(space, pw, delta_schedule=delta_schedule,
                                 grid_resolutions=grid_resolutions, t_grid=t_grid)
    dist = sibley_distance(est.ddf, exact)
    return RouteComparison(exact=exact, estimate=est, distance=dist,
                           bound=2.0 * min(grid_resolutions))
