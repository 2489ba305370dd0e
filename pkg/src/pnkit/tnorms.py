"""Triangular norms and the triangle functions they induce on step d.d.f.s.

Three t-norms are provided: W (Lukasiewicz), Prod, and M (minimum).
Each induces a binary operation on distance distribution functions,

    (F, G) -> sup over u + v = x of T(F(u), G(v)),

computed here exactly: for step inputs the integrand is piecewise
constant in u, the output is a step function whose jump locations lie
among the pairwise sums of input jump locations, and the supremum on
each output piece is decided at finitely many probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .ddf import Ddf, _cluster_representatives
from .errors import InvalidArgumentError


class TNormKind(Enum):
    W = "W"        # max(a + b - 1, 0)
    PROD = "Prod"  # a * b
    M = "M"        # min(a, b)


def tnorm_apply(kind: TNormKind, a: float, b: float) -> float:
    """Apply the t-norm to a pair in [0, 1]."""
    a = float(a)
    b = float(b)
    if not (0.0 <= a <= 1.0) or not (0.0 <= b <= 1.0):
        raise InvalidArgumentError(f"t-norm arguments must lie in [0, 1], got {a!r}, {b!r}")
    if kind is TNormKind.W:
        return max(a + b - 1.0, 0.0)
    if kind is TNormKind.PROD:
        return a * b
    if kind is TNormKind.M:
        return min(a, b)
    raise InvalidArgumentError(f"unknown t-norm kind {kind!r}")


def tnorm_apply_np(kind: TNormKind, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized t-norm on arrays already known to lie in [0, 1]."""
    if kind is TNormKind.W:
        return np.maximum(a + b - 1.0, 0.0)
    if kind is TNormKind.PROD:
        return a * b
    if kind is TNormKind.M:
        return np.minimum(a, b)
    raise InvalidArgumentError(f"unknown t-norm kind {kind!r}")


@dataclass(frozen=True)
class TriangleFn:
    """The triangle function induced by a t-norm.

    Commutativity, monotonicity, and the identity at the unit step at 0
    are consequences of the t-norm axioms; the test suite checks them
    rather than assuming them.
    """

    kind: TNormKind

    def __call__(self, F: Ddf, G: Ddf) -> Ddf:
        return tau_apply(self.kind, F, G)


def _sup_on_split(kind: TNormKind, F: Ddf, G: Ddf, x: float) -> float:
    # sup over u in [0, x] of T(F(u), G(x - u)).  The integrand is
    # piecewise constant with breakpoints at F's knots and at x minus
    # G's knots; boundary values never exceed adjacent piece interiors,
    # so midpoints of the pieces decide the supremum exactly.
    cuts = {0.0, x}
    for a, _ in F.jumps:
        if 0.0 < a < x:
            cuts.add(a)
    for b, _ in G.jumps:
        c = x - b
        if 0.0 < c < x:
            cuts.add(c)
    grid = sorted(cuts)
    best = 0.0
    for u0, u1 in zip(grid, grid[1:]):
        u = 0.5 * (u0 + u1)
        val = tnorm_apply(kind, F.eval(u), G.eval(x - u))
        if val > best:
            best = val
    return best


def tau_apply(kind: TNormKind, F: Ddf, G: Ddf) -> Ddf:
    """Exact sup-convolution of two step d.d.f.s under the given t-norm.

    Candidate output knots are the pairwise sums of input jump
    locations; the output level on each candidate interval is evaluated
    at its midpoint and the jump list is rebuilt from the level
    increases.  Zero-mass entries are pruned and knots within 1e-12
    merge.
    """
    if not F.jumps or not G.jumps:
        # One side carries all mass at +inf; every finite supremum is
        # T(., 0) = 0.
        return Ddf(())
    sums = sorted({a + b for a, _ in F.jumps for b, _ in G.jumps})
    reps = _cluster_representatives(sums)
    jumps: list[tuple[float, float]] = []
    prev = 0.0
    for i, rep in enumerate(reps):
        probe = (rep + reps[i + 1]) / 2.0 if i + 1 < len(reps) else rep + 1.0
        v = _sup_on_split(kind, F, G, probe)
        if v - prev > 0.0:
            jumps.append((rep, v - prev))
            prev = v
    return Ddf(tuple(jumps))


@dataclass(frozen=True)
class TNormAxiomReport:
    """Maximal per-axiom violation over a sample of triples."""

    kind: TNormKind
    commutativity: float
    associativity: float
    monotonicity: float
    identity: float
    samples: int
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return max(self.commutativity, self.associativity,
                   self.monotonicity, self.identity) <= self.tolerance

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind.value,
            "commutativity": self.commutativity,
            "associativity": self.associativity,
            "monotonicity": self.monotonicity,
            "identity": self.identity,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_tnorm_axioms(kind: TNormKind, samples: Iterable) -> TNormAxiomReport:
    """Measure axiom residuals (commutativity, associativity,
    monotonicity in each place, identity at 1) over sample triples in
    [0, 1]^3."""
    comm = assoc = mono = ident = 0.0
    n = 0
    for triple in samples:
        a, b, c = (float(v) for v in triple)
        for v in (a, b, c):
            if not (0.0 <= v <= 1.0):
                raise InvalidArgumentError(f"sample value {v!r} outside [0, 1]")
        comm = max(comm, abs(tnorm_apply(kind, a, b) - tnorm_apply(kind, b, a)))
        assoc = max(assoc, abs(tnorm_apply(kind, a, tnorm_apply(kind, b, c))
                               - tnorm_apply(kind, tnorm_apply(kind, a, b), c)))
        lo, hi = min(a, b), max(a, b)
        mono = max(mono, tnorm_apply(kind, lo, c) - tnorm_apply(kind, hi, c))
        ident = max(ident, abs(tnorm_apply(kind, a, 1.0) - a))
        n += 1
    return TNormAxiomReport(kind=kind, commutativity=comm, associativity=assoc,
                            monotonicity=mono, identity=ident, samples=n)
