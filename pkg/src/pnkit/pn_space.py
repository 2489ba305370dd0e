"""Concrete probabilistic-normed spaces over R^d and an axiom checker.

The instance family implemented here is the simple space built from a
generator d.d.f. G: the probabilistic norm of a point p is G with every
jump location rescaled by the Euclidean norm of p (and the unit step at
0 for the null vector).  With the minimum t-norm on both slots this
family satisfies all four axioms, which the checker verifies on seeded
samples by exact step-function comparisons:

    N1  norm profile is the unit step at 0 iff the point is null
    N2  negation leaves the profile unchanged
    N3  profile of a sum dominates the triangle function of the profiles
    N4  profile of p is dominated by tau*(profile of lam*p, profile of (1-lam)*p)

A failed check is a counterexample; a passed check is evidence.  For
single-step generators N3/N4 reduce provably to scalar inequalities of
the Euclidean norm, so a pass there is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .ddf import Ddf, VALUE_TOL, ddf_leq_witness, make_epsilon
from .errors import InvalidArgumentError
from .tnorms import TNormKind, TriangleFn, tau_apply

Vector = tuple[float, ...]

DEFAULT_LAMBDAS: tuple[float, ...] = tuple(k / 10.0 for k in range(11))


def as_vector(coords, dim: int | None = None) -> Vector:
    v = tuple(float(c) for c in coords)
    if not v:
        raise InvalidArgumentError("vector must have at least one coordinate")
    if any(not math.isfinite(c) for c in v):
        raise InvalidArgumentError(f"vector coordinates must be finite, got {v!r}")
    if dim is not None and len(v) != dim:
        raise InvalidArgumentError(f"expected dimension {dim}, got vector of length {len(v)}")
    return v


def vec_norm(v: Vector) -> float:
    if len(v) == 1:
        return abs(v[0])
    return math.sqrt(math.fsum(c * c for c in v))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: float, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def vec_neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def is_null(v: Vector) -> bool:
    return all(c == 0.0 for c in v)


@dataclass(frozen=True)
class PnSpace:
    """A simple probabilistic-normed space over R^dimension.

    The generator must carry total finite mass 1 on at least one jump
    (otherwise no point could have a full norm profile and N1 would be
    unverifiable).  Instances are immutable; all derived operations are
    pure.
    """

    dimension: int
    generator: Ddf = field(default_factory=lambda: make_epsilon(1.0))
    tau: TriangleFn = field(default_factory=lambda: TriangleFn(TNormKind.M))
    tau_star: TriangleFn = field(default_factory=lambda: TriangleFn(TNormKind.M))

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise InvalidArgumentError(f"dimension must be a positive integer, got {self.dimension!r}")
        object.__setattr__(self, "dimension", int(self.dimension))
        if not self.generator.jumps:
            raise InvalidArgumentError("generator must have at least one finite jump")
        if abs(self.generator.total_mass - 1.0) > 1e-9:
            raise InvalidArgumentError(
                f"generator must carry total finite mass 1, got {self.generator.total_mass!r}")

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "generator": self.generator.to_json_obj(),
            "tau": self.tau.kind.value,
            "tau_star": self.tau_star.kind.value,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PnSpace":
        if not isinstance(obj, dict):
            raise InvalidArgumentError("space spec must be a JSON object")
        dim = obj.get("dimension", 1)
        gen = Ddf.from_json_obj(obj["generator"]) if "generator" in obj else make_epsilon(1.0)
        try:
            tau = TriangleFn(TNormKind(obj.get("tau", "M")))
            tau_star = TriangleFn(TNormKind(obj.get("tau_star", "M")))
        except ValueError as exc:
            raise InvalidArgumentError(f"unknown t-norm tag in space spec: {exc}") from exc
        return cls(dimension=dim, generator=gen, tau=tau, tau_star=tau_star)


def prob_norm(space: PnSpace, p) -> Ddf:
    """Norm profile of a point: the generator rescaled by its Euclidean
    norm, or the unit step at 0 for the null vector."""
    v = as_vector(p, space.dimension)
    if is_null(v):
        return make_epsilon(0.0)
    return space.generator.scale_locations(vec_norm(v))


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    passed: bool
    checked: int
    worst: dict | None = None

    def to_json_obj(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed,
                "checked": self.checked, "worst": self.worst}


@dataclass(frozen=True)
class AxiomReport:
    results: tuple[AxiomResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def to_json_obj(self) -> dict:
        return {"all_passed": self.all_passed,
                "results": [r.to_json_obj() for r in self.results]}


def check_axioms(space: PnSpace,
                 samples: Sequence[tuple],
                 lambdas: Sequence[float] = DEFAULT_LAMBDAS) -> AxiomReport:
    """Check N1-N4 on sample vector pairs and a grid of scalars in [0, 1].

    N1 is checked at the null vector and at every nonzero sample
    coordinate vector; N2 by jump-list equality; N3 and N4 by exact
    step-function comparison of the triangle-function outputs.  The
    worst violating sample (with the probe x where the gap is largest)
    is recorded per axiom.
    """
    if not samples:
        raise InvalidArgumentError("samples must be nonempty")
    for lam in lambdas:
        if not (0.0 <= lam <= 1.0):
            raise InvalidArgumentError(f"lambda {lam!r} outside [0, 1]")

    pairs = [(as_vector(p, space.dimension), as_vector(q, space.dimension))
             for p, q in samples]
    vectors: list[Vector] = []
    seen = set()
    for p, q in pairs:
        for v in (p, q):
            if v not in seen:
                seen.add(v)
                vectors.append(v)

    eps0 = make_epsilon(0.0)
    theta = tuple(0.0 for _ in range(space.dimension))

    # N1: null vector maps to the maximal element, nothing else does.
    n1_worst = None
    n1_checked = 1
    if prob_norm(space, theta).jumps != eps0.jumps:
        n1_worst = {"p": list(theta), "note": "null vector profile differs from unit step at 0"}
    for v in vectors:
        if is_null(v):
            continue
        n1_checked += 1
        if n1_worst is None and prob_norm(space, v).jumps == eps0.jumps:
            n1_worst = {"p": list(v), "note": "nonzero vector has maximal profile"}
    n1 = AxiomResult("N1", n1_worst is None, n1_checked, n1_worst)

    # N2: negation symmetry, exact jump-list equality.
    n2_worst = None
    for v in vectors:
        if prob_norm(space, v).jumps != prob_norm(space, vec_neg(v)).jumps:
            n2_worst = {"p": list(v), "note": "profile changed under negation"}
            break
    n2 = AxiomResult("N2", n2_worst is None, len(vectors), n2_worst)

    # N3: triangle dominance for each sampled pair.
    n3_worst = None
    n3_gap = -math.inf
    for p, q in pairs:
        lhs = tau_apply(space.tau.kind, prob_norm(space, p), prob_norm(space, q))
        gap, x = ddf_leq_witness(lhs, prob_norm(space, vec_add(p, q)))
        if gap > n3_gap:
            n3_gap = gap
            n3_worst = {"p": list(p), "q": list(q), "x": x, "gap": gap}
    n3 = AxiomResult("N3", n3_gap <= VALUE_TOL, len(pairs),
                     None if n3_gap <= VALUE_TOL else n3_worst)

    # N4: convexity-style upper bound over the scalar grid.
    n4_worst = None
    n4_gap = -math.inf
    n4_checked = 0
    for v in vectors:
        nu_v = prob_norm(space, v)
        for lam in lambdas:
            rhs = tau_apply(space.tau_star.kind,
                            prob_norm(space, vec_scale(lam, v)),
                            prob_norm(space, vec_scale(1.0 - lam, v)))
            gap, x = ddf_leq_witness(nu_v, rhs)
            n4_checked += 1
            if gap > n4_gap:
                n4_gap = gap
                n4_worst = {"p": list(v), "lambda": lam, "x": x, "gap": gap}
    n4 = AxiomResult("N4", n4_gap <= VALUE_TOL, n4_checked,
                     None if n4_gap <= VALUE_TOL else n4_worst)

    return AxiomReport((n1, n2, n3, n4))


def random_vector_pairs(dim: int, count: int, seed: int,
                        scale: float = 1.0) -> list[tuple[Vector, Vector]]:
    """Seeded standard-normal vector pairs for sample-based checks."""
    if count < 1:
        raise InvalidArgumentError("count must be positive")
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((count, 2, dim)) * scale
    return [(tuple(float(c) for c in pq[0]), tuple(float(c) for c in pq[1]))
            for pq in draws]
