"""Deterministic property sweeps over enumerated instance families.

Wider than the curated corpus, narrower than the offline fuzz runs; these
pin the exact/empirical agreement and the chain inequalities on families
nobody hand-picked.
"""

import random
from fractions import Fraction
from itertools import product as iproduct

from kodaira.fibration import hirzebruch_fibration, product_fibration
from kodaira.lattice import convex_hull
from kodaira.multiplier import SingularMetricData
from kodaira.semigroup import (
    GradedSemigroup,
    growth_law_check,
    hilbert,
    hilbert_reg,
    regularize,
)
from kodaira.toric import (
    SectionSystem,
    ToricDivisorData,
    ToricVariety,
    kappa_report,
    kappa_sigma,
    kappa_sigma_hor,
)

from _oracles import hull_vertex_set, semigroup_level_points

P1 = ToricVariety.projective_space(1)


def test_chain_sweep_product_and_hirzebruch():
    fibs = [product_fibration(P1, P1), hirzebruch_fibration(2)]
    metrics = [None, SingularMetricData([(0, 1)]),
               SingularMetricData([(3, Fraction(3, 2))])]
    for fib in fibs:
        # one metric per coefficient combo, cycling deterministically; the
        # full cross product ran clean offline
        for idx, coeffs in enumerate(iproduct((-1, 0, 1), repeat=4)):
            h = metrics[idx % len(metrics)]
            m = ToricDivisorData(coeffs)
            sys = SectionSystem(fib.total, m, metric=h, degree_bound=12)
            k = kappa_report(sys).kappa
            ks = kappa_sigma(fib.total, m, h, degree_bound=12)
            kh = kappa_sigma_hor(fib.total, m, h, fib, degree_bound=12)
            assert k <= kh <= ks, (fib.total.name, coeffs, h)


def test_hull_sweep_against_caratheodory():
    rng = random.Random(11)
    for trial in range(40):
        dim = 2 if trial % 2 == 0 else 3
        npts = rng.randint(2, 8)
        pts = [tuple(Fraction(rng.randint(-5, 5), rng.choice((1, 2)))
                     for _ in range(dim)) for _ in range(npts)]
        hull = convex_hull(pts)
        assert set(hull.vertices()) == hull_vertex_set(pts), pts
        assert all(hull.contains(p) for p in pts)


def test_semigroup_sweep_against_enumeration():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.choice((1, 1, 2))
        gens = [tuple(rng.randint(-3, 3) for _ in range(n)) + (rng.randint(1, 3),)
                for _ in range(rng.randint(1, 3 + n))]
        sg = GradedSemigroup.from_generators(gens)
        reg = regularize(sg)
        for k in range(8):
            assert hilbert(sg, k) == len(semigroup_level_points(gens, k)), (gens, k)
            assert hilbert(sg, k) <= hilbert_reg(sg, k, reg=reg), (gens, k)
        rep = growth_law_check(sg, k_max=150, reg=reg)
        assert rep.relative_gap <= Fraction(15, 100), (gens, rep)


def test_polytope_sweep_against_grid_oracle():
    import math

    from kodaira.lattice import Polytope
    from _oracles import grid_lattice_points

    rng = random.Random(99)
    for _ in range(120):
        n = rng.randint(1, 3)
        cons = []
        for _ in range(rng.randint(n + 1, n + 4)):
            v = tuple(rng.randint(-3, 3) for _ in range(n))
            if any(v):
                cons.append((v, Fraction(rng.randint(-6, 6), rng.choice((1, 2)))))
        poly = Polytope(n, cons)
        if not poly.is_bounded():
            continue
        if poly.is_empty():
            assert poly.lattice_points() == []
            assert not grid_lattice_points(poly.constraints, [(-40, 40)] * n)
            continue
        box = [(math.floor(min(v[i] for v in poly.vertices())) - 2,
                math.ceil(max(v[i] for v in poly.vertices())) + 2)
               for i in range(n)]
        pts = grid_lattice_points(poly.constraints, box)
        assert poly.lattice_points() == pts
        assert poly.count_lattice_points() == len(pts)


def test_hnf_sweep_canonical_and_unimodular():
    from kodaira.lattice import det_int, hnf, hnf_basis, in_row_lattice

    rng = random.Random(3)
    for _ in range(120):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        mat = [tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(m)]
        h, u = hnf(mat)
        assert abs(det_int(u)) == 1
        prod = [tuple(sum(u[i][k] * mat[k][j] for k in range(m))
                      for j in range(n)) for i in range(m)]
        assert prod == h
        hb = hnf_basis(mat)
        assert all(in_row_lattice(r, hb) for r in mat)
        pivots = [next(j for j, x in enumerate(r) if x) for r in hb]
        assert pivots == sorted(set(pivots))
        for i, r in enumerate(hb):
            assert r[pivots[i]] > 0
            for jrow in range(i):
                assert 0 <= hb[jrow][pivots[i]] < r[pivots[i]]
