"""Shared test utilities: dyadic random d.d.f.s and brute-force oracles.

Random step functions here use locations that are multiples of 2^-10
and cumulative levels that are multiples of 2^-20.  Sums, differences,
minima, and products of such levels are exactly representable in
binary floating point, so jump-list equality assertions are meaningful
wherever the algebra is exact in the reals.

The oracles recompute results along routes independent of the library
internals (dense grids, direct scans) and are deliberately slow.
"""

from __future__ import annotations

import numpy as np

from pnkit import Ddf
from pnkit.tnorms import TNormKind, tnorm_apply_np


def dyadic_ddf(rng: np.random.Generator, max_jumps: int = 6,
               full_mass: bool | None = None) -> Ddf:
    k = int(rng.integers(1, max_jumps + 1))
    locs = np.sort(rng.choice(np.arange(1, 4097), size=k, replace=False)) * 2.0 ** -10
    if full_mass is None:
        full_mass = bool(rng.integers(0, 2))
    top = 2 ** 20 if full_mass else int(rng.integers(2 ** 18, 2 ** 20))
    if k == 1:
        levels = np.array([top], dtype=float)
    else:
        levels = np.sort(rng.choice(np.arange(1, top), size=k - 1, replace=False)).astype(float)
        levels = np.append(levels, float(top))
    levels *= 2.0 ** -20
    masses = np.diff(np.concatenate([[0.0], levels]))
    return Ddf(tuple((float(l), float(m)) for l, m in zip(locs, masses)))


def ddf_pointwise_max(F: Ddf, G: Ddf) -> Ddf:
    """Pointwise maximum of two step d.d.f.s, rebuilt as a jump list.
    Guarantees F <= result and G <= result; used to manufacture ordered
    pairs for monotonicity and transitivity checks."""
    knots = sorted({loc for D in (F, G) for loc, _ in D.jumps})
    jumps: list[tuple[float, float]] = []
    prev = 0.0
    for i, k in enumerate(knots):
        probe = (k + knots[i + 1]) / 2.0 if i + 1 < len(knots) else k + 1.0
        v = max(F.eval(probe), G.eval(probe))
        if v > prev:
            jumps.append((k, v - prev))
            prev = v
    return Ddf(tuple(jumps))


def brute_force_tau_curve(kind: TNormKind, F: Ddf, G: Ddf,
                          xs: np.ndarray, u_count: int = 4096) -> np.ndarray:
    """sup over a uniform split grid u + v = x of T(F(u), G(v)), per x.

    A lower bound of the exact supremum: any value the exact operation
    attains strictly before x - 2*(x/u_count) is seen by some grid
    split, so the curve lags the exact one by at most that shift.
    """
    out = np.empty(len(xs))
    for i, x in enumerate(xs):
        us = np.linspace(0.0, float(x), u_count)
        vals = tnorm_apply_np(kind, F.eval_many(us), G.eval_many(np.maximum(x - us, 0.0)))
        out[i] = np.max(vals)
    return out


def sibley_scan(F: Ddf, G: Ddf, h_step: float = 1e-4, h_max: float = 1.0) -> float:
    """Smallest h on a uniform h-grid satisfying the two-sided shift
    condition, checked on a dense x-grid.  Independent of the library's
    bisection; resolution is h_step."""
    h = h_step
    while h <= h_max:
        xmax = min(1.0 / h, 8.0)
        xs = np.arange(h_step, xmax, h_step)
        ok = (np.all(G.eval_many(xs) <= F.eval_many(xs + h) + h + 1e-12) and
              np.all(F.eval_many(xs) <= G.eval_many(xs + h) + h + 1e-12))
        if ok:
            return h
        h += h_step
    return h_max


def pointwise_min_curve(fns, xs: np.ndarray) -> np.ndarray:
    """Dense-grid pointwise infimum of a family, as raw values."""
    vals = np.stack([F.eval_many(xs) for F in fns])
    return np.min(vals, axis=0)
