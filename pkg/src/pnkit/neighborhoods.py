"""Strong neighborhoods, probabilistic diameter, and continuity testing.

The strong neighborhood of p at threshold t collects the points whose
difference profile exceeds 1 - t at t.  The probabilistic diameter of a
finite point set is the left-continuous regularization of the pointwise
infimum of the members' norm profiles -- a radius about the origin, not
a pairwise spread; it is implemented exactly as defined.

Continuity testing is a semi-decision.  The existential threshold  "some
smaller neighborhood has a well-concentrated image" is scanned over a
finite descending schedule; each point either receives a witness
threshold or the scan is inconclusive (reported as such, never as
disproof).  Neighborhood contents are approximated by a probe lattice.
A diameter computed on a lattice subset can only overestimate the true
concentration, so lattice witnesses are confirmed against the exact
interval-image bound whenever the generator is a single step (the case
where the neighborhood is exactly a ball and the image supremum is an
exact finite computation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ddf import Ddf, left_limit_of_infimum
from .discont import PiecewiseMap1D, map_box, map_dim, map_eval_vec
from .errors import InvalidArgumentError
from .pn_space import PnSpace, Vector, as_vector, prob_norm, vec_norm, vec_sub


@dataclass(frozen=True)
class PointSet:
    """A nonempty finite set of vectors of one dimension; duplicates are
    deduplicated at construction."""

    points: tuple[Vector, ...]

    def __post_init__(self):
        pts = [as_vector(p) for p in self.points]
        if not pts:
            raise InvalidArgumentError("point set must be nonempty")
        dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise InvalidArgumentError("point set mixes dimensions")
        object.__setattr__(self, "points", tuple(dict.fromkeys(pts)))

    @property
    def dimension(self) -> int:
        return len(self.points[0])


def in_strong_neighborhood(space: PnSpace, p, t: float, q) -> bool:
    """Membership of q in the strong neighborhood of p at threshold t > 0."""
    t = float(t)
    if not (t > 0.0):
        raise InvalidArgumentError(f"threshold must be positive, got {t!r}")
    diff = vec_sub(as_vector(p, space.dimension), as_vector(q, space.dimension))
    return prob_norm(space, diff).eval(t) > 1.0 - t


def prob_diameter(space: PnSpace, A: PointSet) -> Ddf:
    """Probabilistic diameter of a finite set: the left-continuous
    regularization of the pointwise infimum of the members' profiles.
    Dominated by every member's own profile."""
    if A.dimension != space.dimension:
        raise InvalidArgumentError(
            f"point set dimension {A.dimension} does not match space dimension {space.dimension}")
    return left_limit_of_infimum([prob_norm(space, p) for p in A.points])


@dataclass(frozen=True)
class ContinuityWitness:
    point: Vector
    witness_tprime: float | None

    def to_json_obj(self) -> dict:
        return {"p": list(self.point), "witness_tprime": self.witness_tprime}


@dataclass(frozen=True)
class ContinuityReport:
    """Per-point witness thresholds; `passed` iff every point has one.

    A missing witness is inconclusive on the probed schedule, not a
    disproof of continuity.
    """

    t: float
    entries: tuple[ContinuityWitness, ...]

    @property
    def passed(self) -> bool:
        return all(e.witness_tprime is not None for e in self.entries)

    def to_json_obj(self) -> dict:
        return {"t": self.t,
                "points": [e.to_json_obj() for e in self.entries],
                "pass": self.passed}


def default_tprime_schedule(t: float, levels: int = 21) -> tuple[float, ...]:
    """Descending geometric schedule t, t/2, ..., t / 2^(levels-1)."""
    return tuple(t * 2.0 ** -k for k in range(levels))


def _probe_lattice(m, budget: int) -> list[Vector]:
    box = map_box(m)
    if len(box) == 1:
        lo, hi = box[0]
        return [(float(x),) for x in np.linspace(lo, hi, budget)]
    side = max(2, int(math.isqrt(budget)))
    xs = np.linspace(box[0][0], box[0][1], side)
    ys = np.linspace(box[1][0], box[1][1], side)
    return [(float(a), float(b)) for a in xs for b in ys]


def _lattice_image_concentration(space: PnSpace, m, p: Vector, tprime: float,
                                 lattice: Sequence[Vector], t: float) -> bool:
    # Diameter of the image of the lattice points inside the
    # neighborhood, evaluated at t.  For the simple spaces here the
    # diameter is the generator rescaled by the largest image norm, so
    # only that scalar is needed.
    members = [q for q in lattice if in_strong_neighborhood(space, p, tprime, q)]
    members.append(p)
    worst = max(vec_norm(map_eval_vec(m, q)) for q in members)
    if worst == 0.0:
        return True  # image profile is maximal
    return space.generator.eval(t / worst) > 1.0 - t


def _exact_ball_confirmation(space: PnSpace, pw: PiecewiseMap1D, p: float,
                             tprime: float, t: float) -> bool:
    # Single-step generator: the neighborhood is exactly the ball of
    # radius tprime / step-location (everything, above threshold 1), and
    # the image supremum over the clipped interval is exact.
    g_loc = space.generator.jumps[0][0]
    if g_loc == 0.0:
        return True
    if tprime > 1.0:
        lo, hi = pw.domain
        sup = pw.sup_abs_on_interval(lo, hi)
    else:
        r = tprime / g_loc
        sup = pw.sup_abs_on_interval(p - r, p + r)
    if t > 1.0:
        return True
    return g_loc * sup < t


def strong_t_continuity_test(space: PnSpace, m, domain_sample: PointSet, t: float,
                             tprime_schedule: Sequence[float] | None = None,
                             probe_budget: int = 512) -> ContinuityReport:
    """Scan a descending threshold schedule for image-concentration
    witnesses at each sample point.

    A witness at threshold t' certifies that the image of the probed
    neighborhood has diameter value above 1 - t at t.  When the
    generator is a single step and the map is piecewise-affine, lattice
    witnesses are confirmed against the exact ball-image bound before
    being reported; otherwise the lattice evidence stands on its own.
    """
    t = float(t)
    if not (t > 0.0):
        raise InvalidArgumentError(f"threshold must be positive, got {t!r}")
    schedule = tuple(float(x) for x in (tprime_schedule if tprime_schedule is not None
                                        else default_tprime_schedule(t)))
    if not schedule:
        raise InvalidArgumentError("threshold schedule must be nonempty")
    if any(x <= 0.0 for x in schedule):
        raise InvalidArgumentError("threshold schedule entries must be positive")
    if any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise InvalidArgumentError("threshold schedule must be strictly descending")
    if domain_sample.dimension != map_dim(m) or map_dim(m) != space.dimension:
        raise InvalidArgumentError("sample, map, and space dimensions must agree")

    lattice = _probe_lattice(m, probe_budget)
    exact_route = isinstance(m, PiecewiseMap1D) and len(space.generator.jumps) == 1

    entries = []
    for p in domain_sample.points:
        witness = None
        for tprime in schedule:
            if not _lattice_image_concentration(space, m, p, tprime, lattice, t):
                continue
            if exact_route and not _exact_ball_confirmation(space, m, p[0], tprime, t):
                continue
            witness = tprime
            break
        entries.append(ContinuityWitness(point=p, witness_tprime=witness))
    return ContinuityReport(t=t, entries=tuple(entries))


@dataclass(frozen=True)
class PairwiseViolation:
    p: Vector
    q: Vector
    value: float

    def to_json_obj(self) -> dict:
        return {"p": list(self.p), "q": list(self.q), "value": self.value}


@dataclass(frozen=True)
class PairwiseReport:
    t: float
    checked: int
    violations: tuple[PairwiseViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {"t": self.t, "checked": self.checked, "passed": self.passed,
                "violations": [v.to_json_obj() for v in self.violations]}


def check_pairwise_image_separation(space: PnSpace, m, pairs: Sequence[tuple], t: float,
                                    report: ContinuityReport) -> PairwiseReport:
    """For a map certified at threshold t (minimum-t-norm spaces only),
    verify that every distinct sampled pair has a difference profile
    above 1 - t at t.

    The certification report is a precondition: a map that failed (or
    was certified at a different threshold) is rejected before any pair
    is checked.
    """
    from .tnorms import TNormKind

    if space.tau.kind is not TNormKind.M:
        raise InvalidArgumentError("pairwise separation requires the minimum t-norm on tau")
    t = float(t)
    if not (t > 0.0):
        raise InvalidArgumentError(f"threshold must be positive, got {t!r}")
    if report.t != t:
        raise InvalidArgumentError(
            f"continuity report was computed at t={report.t!r}, not t={t!r}")
    if not report.passed:
        raise InvalidArgumentError("map is not certified: continuity report has unwitnessed points")

    violations = []
    checked = 0
    for raw_p, raw_q in pairs:
        p = as_vector(raw_p, space.dimension)
        q = as_vector(raw_q, space.dimension)
        if p == q:
            raise InvalidArgumentError(f"pairs must be distinct, got {p!r} twice")
        diff = vec_sub(map_eval_vec(m, p), map_eval_vec(m, q))
        val = prob_norm(space, diff).eval(t)
        checked += 1
        if not val > 1.0 - t:
            violations.append(PairwiseViolation(p=p, q=q, value=val))
    return PairwiseReport(t=t, checked=checked, violations=tuple(violations))
