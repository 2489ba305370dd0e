"""Acceptance suite: one test per acceptance criterion.

Each test prints a `[criterion] name: PASS/FAIL` line; run with

    pytest tests/test_acceptance.py -v -s

to see them.  Criteria with runtime budgets measure their core loop
with a monotonic clock and assert the budget.
"""

import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from helpers import brute_force_tau_curve, dyadic_ddf
from pnkit import (Ddf, PiecewiseMap1D, Piece, PnSpace, PointSet, TNormKind,
                   check_axioms, check_pairwise_image_separation,
                   check_tnorm_axioms, compare_discontinuity_routes,
                   constant_map, ddf_leq, discontinuity_exact,
                   find_approx_fixed_point, kakutani_search, make_epsilon,
                   prob_diameter, prob_norm, random_vector_pairs,
                   strong_t_continuity_test, tau_apply)
from pnkit.cli import main as cli_main

H = 1.0 / 1024
ALL_KINDS = (TNormKind.W, TNormKind.PROD, TNormKind.M)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[criterion] {name}: FAIL")
        raise
    print(f"[criterion] {name}: PASS")


def canonical_jump_map() -> PiecewiseMap1D:
    return PiecewiseMap1D(domain=(0.0, 1.0),
                          pieces=(Piece(0.0, 0.5, "left", 0.0, 0.6),
                                  Piece(0.5, 1.0, "left", 0.0, 0.2)))


def test_tnorm_axiom_suite():
    with criterion("tnorm-axioms (10k triples, residual <= 1e-12, < 1 s)"):
        rng = np.random.default_rng(101)
        triples = rng.uniform(0.0, 1.0, (10_000, 3))
        start = time.perf_counter()
        worst = 0.0
        for kind in ALL_KINDS:
            report = check_tnorm_axioms(kind, triples)
            assert report.passed, report.to_json_obj()
            worst = max(worst, report.commutativity, report.associativity,
                        report.monotonicity, report.identity)
        elapsed = time.perf_counter() - start
        print(f"  worst residual {worst:.3e}, elapsed {elapsed:.2f}s")
        assert worst <= 1e-12
        assert elapsed < 1.0


def test_triangle_fn_oracle_equivalence():
    with criterion("triangle-fn oracle (100 pairs/kind vs 4096-pt split grid, < 30 s)"):
        rng = np.random.default_rng(202)
        pairs = [(dyadic_ddf(rng), dyadic_ddf(rng)) for _ in range(100)]
        start = time.perf_counter()

        for kind in ALL_KINDS:
            for F, G in pairs:
                exact = tau_apply(kind, F, G)
                span = F.jumps[-1][0] + G.jumps[-1][0] + 1.0
                cell = span / 128
                xs = np.linspace(cell, span, 128)
                bf = brute_force_tau_curve(kind, F, G, xs, u_count=4096)
                for x, v in zip(xs, bf):
                    assert exact.eval(max(x - cell, 0.0)) - 1e-12 <= v <= exact.eval(x) + 1e-12

        e0 = make_epsilon(0.0)
        for kind in ALL_KINDS:
            for F, _ in pairs[:50]:
                assert tau_apply(kind, e0, F).jumps == F.jumps

        for _ in range(50):
            a, b = rng.uniform(0.0, 2.0, 2)
            out = tau_apply(TNormKind.M, make_epsilon(a), make_epsilon(b))
            assert out.jumps == make_epsilon(a + b).jumps

        for F, G in pairs:
            w = tau_apply(TNormKind.W, F, G)
            p = tau_apply(TNormKind.PROD, F, G)
            m = tau_apply(TNormKind.M, F, G)
            assert ddf_leq(w, p, atol=0.0) and ddf_leq(p, m, atol=0.0)

        elapsed = time.perf_counter() - start
        print(f"  elapsed {elapsed:.2f}s")
        assert elapsed < 30.0


def test_space_axioms_across_dimensions():
    with criterion("space axioms (unit-step generator, 500 pairs in R^1/2/3, zero violations)"):
        lambdas = tuple(k / 10.0 for k in range(11))
        for dim in (1, 2, 3):
            space = PnSpace(dimension=dim)
            pairs = random_vector_pairs(dim, 500, seed=300 + dim)
            report = check_axioms(space, pairs, lambdas)
            assert report.all_passed, report.to_json_obj()
            print(f"  dim {dim}: all axioms pass on {len(pairs)} pairs")


def test_diameter_dominated_by_member_profiles():
    with criterion("diameter vs member profiles (200 random finite sets)"):
        rng = np.random.default_rng(404)
        multi = Ddf(((0.5, 0.25), (1.0, 0.5), (2.5, 0.25)))
        for k in range(200):
            dim = int(rng.integers(1, 4))
            gen = multi if k % 2 else make_epsilon(1.0)
            space = PnSpace(dimension=dim, generator=gen)
            pts = tuple(tuple(float(c) for c in rng.standard_normal(dim))
                        for _ in range(int(rng.integers(1, 9))))
            A = PointSet(pts)
            R = prob_diameter(space, A)
            for p in A.points:
                assert ddf_leq(R, prob_norm(space, p))


def _concentrated_corpus(seed: int, count: int = 100) -> list[PiecewiseMap1D]:
    """Constant and small-slope maps with values in [0, 0.4]: image
    profiles concentrated well inside the 0.5 threshold."""
    rng = np.random.default_rng(seed)
    maps = []
    for i in range(count):
        if i % 2 == 0:
            maps.append(constant_map((0.0, 1.0), float(rng.uniform(0.0, 0.4))))
            continue
        n = int(rng.integers(1, 4))
        while True:
            bps = np.sort(rng.uniform(0.0, 1.0, n - 1))
            edges = np.concatenate([[0.0], bps, [1.0]])
            if n == 1 or float(np.min(np.diff(edges))) >= 0.05:
                break
        pieces = []
        for k in range(n):
            lo, hi = float(edges[k]), float(edges[k + 1])
            y0 = float(rng.uniform(0.0, 0.4))
            slope = float(rng.uniform(-0.2, 0.2))
            y1 = min(max(y0 + slope * (hi - lo), 0.0), 0.4)
            a = (y1 - y0) / (hi - lo)
            pieces.append(Piece(lo, hi, "left", a, y0 - a * lo))
        maps.append(PiecewiseMap1D(domain=(0.0, 1.0), pieces=tuple(pieces)))
    return maps


def test_certified_maps_keep_image_pairs_close():
    with criterion("certified maps: pairwise threshold holds (100 maps, zero violations)"):
        space = PnSpace(dimension=1)
        t = 0.5
        sample = PointSet(tuple((float(x),) for x in np.linspace(0.0, 1.0, 7)))
        lattice = [(float(x),) for x in np.linspace(0.0, 1.0, 10)]
        pairs = [(p, q) for i, p in enumerate(lattice) for q in lattice[i + 1:]]
        violations = 0
        for m in _concentrated_corpus(505):
            report = strong_t_continuity_test(space, m, sample, t)
            assert report.passed, "corpus map failed certification"
            out = check_pairwise_image_separation(space, m, pairs, t, report)
            violations += len(out.violations)
        print(f"  100 maps certified, {len(pairs)} pairs each, {violations} violations")
        assert violations == 0


def test_discontinuity_estimator_matches_oracle(unit_space, corpus_maps):
    with criterion("discontinuity estimator vs oracle (100 maps, <= 2/1024, < 60 s)"):
        start = time.perf_counter()
        worst = 0.0
        for m in corpus_maps:
            cmp = compare_discontinuity_routes(unit_space, m)
            worst = max(worst, cmp.distance)
            assert cmp.distance <= 2.0 / 1024, m.to_json_obj()
        elapsed = time.perf_counter() - start
        print(f"  worst distance {worst:.3e}, elapsed {elapsed:.1f}s")
        assert elapsed < 60.0


def test_dominating_candidate_exists_on_corpus(unit_space, corpus_maps):
    with criterion("dominance search succeeds (100/100) and canonical gap is exact"):
        successes = 0
        for m in corpus_maps:
            psi = discontinuity_exact(unit_space, m)
            fp = find_approx_fixed_point(unit_space, m, psi, H)
            assert ddf_leq(fp.psi, fp.residual_ddf)
            successes += fp.dominance
        assert successes == 100

        m = canonical_jump_map()
        psi = discontinuity_exact(unit_space, m)
        assert len(psi.jumps) == 1
        assert psi.jumps[0][0] == pytest.approx(0.4, abs=1e-12)
        assert psi.jumps[0][1] == 1.0
        fp = find_approx_fixed_point(unit_space, m, psi, H)
        print(f"  canonical candidate {fp.candidate[0]:.6f}, displacement {fp.displacement:.6f}")
        assert fp.dominance
        assert fp.displacement <= 0.4


def test_hull_containment_search_on_corpus(corpus_maps):
    with criterion("hull containment within one cell (100/100) and canonical point"):
        hits = 0
        for m in corpus_maps:
            kk = kakutani_search(m, H)
            assert kk.distance <= H
            hits += 1
        assert hits == 100

        kk = kakutani_search(canonical_jump_map(), H)
        print(f"  canonical point {kk.point[0]}, hull {kk.hull}, distance {kk.distance}")
        assert kk.point == (0.5,)
        assert kk.hull == (0.2, 0.6)
        assert kk.distance == 0.0


def test_discontinuity_route_agreement(unit_space, corpus_maps):
    with criterion("both discontinuity routes agree within 2h on the corpus"):
        for m in corpus_maps:
            cmp = compare_discontinuity_routes(unit_space, m)
            assert cmp.agree, m.to_json_obj()


def test_report_determinism(tmp_path):
    with criterion("verify pipeline is byte-identical across reruns"):
        cfg = {
            "space": {"dimension": 1, "generator": [[1.0, 1.0]], "tau": "M", "tau_star": "M"},
            "scenarios": {"count": 5, "pieces": [1, 5], "values": [0.0, 1.0],
                          "kind": "constant"},
            "seed": 424242,
            "schedules": {"t_grid": {"count": 256, "max": 1.0}},
        }
        cfg_path = tmp_path / "det.json"
        cfg_path.write_text(json.dumps(cfg))
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli_main(["verify-t34", "--config", str(cfg_path), "--output", str(a)]) == 0
        assert cli_main(["verify-t34", "--config", str(cfg_path), "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.with_suffix(".csv").read_bytes() == b.with_suffix(".csv").read_bytes()
        print(f"  report {len(a.read_bytes())} bytes, curves "
              f"{len(a.with_suffix('.csv').read_bytes())} bytes")
