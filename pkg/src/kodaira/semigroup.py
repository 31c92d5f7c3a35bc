"""Graded sub-semigroups of Z^n x Z>=0 and their Newton-Okounkov bodies.

A graded semigroup is given either by a finite generator list (each generator
a point of Z^n at a positive level) or degreewise, as point sets A_k up to a
degree bound.  Regularization intersects the generated group G with the
closed convex cone C over the points; the Okounkov body is the level-1 slice
of C, and the growth coefficient of the regularized Hilbert function is
m^q * Vol(Delta) measured in the lattice G ∩ {level 0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import (
    GeometryError,
    Polytope,
    convex_hull,
    det_int,
    dot,
    hnf_basis,
    int_kernel,
    lattice_volume,
    rat_rank,
    vadd,
)


class EmptySemigroupError(ValueError):
    """All levels of the semigroup are empty."""


class DegreeBoundError(ValueError):
    """A degreewise semigroup was queried beyond its stored bound."""


_CLOSURE_CHECK_BUDGET = 200_000  # pairwise sums; larger inputs get sampled


class GradedSemigroup:
    """Sub-semigroup of Z^n x Z>=0 with zero as the only level-0 element.

    `generators`: finite list of (u, level) rows in Z^n x Z>0, or None.
    `levels`: dict {k: set of points in Z^n} for k up to `degree_bound`, used
    when no generator list is given; `closed_under_addition` declares that
    A_k + A_l is contained in A_{k+l}, which the constructor spot-checks.
    """

    def __init__(self, ambient_rank, generators=None, levels=None,
                 degree_bound=None, closed_under_addition=True,
                 check_closure=True):
        self.ambient_rank = int(ambient_rank)
        if (generators is None) == (levels is None):
            raise ValueError("exactly one of generators/levels must be given")
        if generators is not None:
            gens = []
            for g in generators:
                g = tuple(int(x) for x in g)
                if len(g) != self.ambient_rank + 1:
                    raise ValueError("generator dimension mismatch")
                if g[-1] <= 0:
                    raise ValueError("generator level must be positive")
                gens.append(g)
            self.generators = tuple(sorted(set(gens)))
            self.levels = None
            self.degree_bound = degree_bound
            self.closed_under_addition = True
            self._level_cache = {0: {tuple([0] * self.ambient_rank)}}
        else:
            self.generators = None
            lv = {}
            for k, pts in levels.items():
                k = int(k)
                if k <= 0:
                    raise ValueError("levels are indexed by positive degrees")
                lv[k] = {tuple(int(x) for x in p) for p in pts}
                for p in lv[k]:
                    if len(p) != self.ambient_rank:
                        raise ValueError("point dimension mismatch")
            self.levels = lv
            self.degree_bound = int(degree_bound if degree_bound is not None
                                    else (max(lv) if lv else 0))
            self.closed_under_addition = closed_under_addition
            if closed_under_addition and check_closure:
                self._spot_check_closure()
            self._level_cache = None

    @classmethod
    def from_generators(cls, generators, ambient_rank=None):
        gens = [tuple(g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient_rank required for empty generators")
            ambient_rank = len(gens[0]) - 1
        return cls(ambient_rank, generators=gens)

    @classmethod
    def from_levels(cls, ambient_rank, levels, closed_under_addition=True,
                    check_closure=True, degree_bound=None):
        return cls(ambient_rank, levels=levels, degree_bound=degree_bound,
                   closed_under_addition=closed_under_addition,
                   check_closure=check_closure)

    # -- structure -----------------------------------------------------------

    def _spot_check_closure(self):
        pairs = sorted((k, l) for k in self.levels for l in self.levels
                       if k <= l and k + l <= self.degree_bound)
        budget = _CLOSURE_CHECK_BUDGET
        for k, l in pairs:
            ak, al = self.levels.get(k, set()), self.levels.get(l, set())
            target = self.levels.get(k + l, set())
            if len(ak) * len(al) > budget:
                ak = sorted(ak)[:: max(1, len(ak) // 14)]
                al = sorted(al)[:: max(1, len(al) // 14)]
            budget -= len(ak) * len(al)
            for a in ak:
                for b in al:
                    if vadd(a, b) not in target:
                        raise ValueError(
                            f"declared closure fails: A_{k}+A_{l} escapes A_{k + l}")
            if budget <= 0:
                break

    def level_points(self, k):
        """The set A_k (computed for generated semigroups, stored otherwise)."""
        k = int(k)
        if k < 0:
            raise ValueError("negative degree")
        if self.generators is not None:
            if k not in self._level_cache:
                for t in range(1, k + 1):
                    if t in self._level_cache:
                        continue
                    acc = set()
                    for g in self.generators:
                        lv = g[-1]
                        if lv <= t:
                            prev = self._level_cache.get(t - lv)
                            if prev:
                                head = g[:-1]
                                acc.update(vadd(p, head) for p in prev)
                    self._level_cache[t] = acc
            return self._level_cache[k]
        if k == 0:
            return {tuple([0] * self.ambient_rank)}
        if k > self.degree_bound:
            raise DegreeBoundError(f"degree {k} beyond stored bound {self.degree_bound}")
        return self.levels.get(k, set())

    def support(self, bound=None):
        """N(P): positive degrees with nonempty A_k, up to the bound."""
        if bound is None:
            bound = self.degree_bound
        if bound is None:
            raise ValueError("a degree bound is required")
        return [k for k in range(1, bound + 1) if self.level_points(k)]

    def graded_points(self, bound=None):
        """All (u, k) with u in A_k, over stored degrees (or generators)."""
        if self.generators is not None and bound is None:
            return list(self.generators)
        if bound is None:
            bound = self.degree_bound
        pts = []
        for k in range(1, bound + 1):
            for u in sorted(self.level_points(k)):
                pts.append(u + (k,))
        return pts


@dataclass
class Regularization:
    """Group, cone and Okounkov-body data of a graded semigroup."""

    group_basis: tuple
    cone: Polytope | None    # unbounded H-rep in Z^n x R, apex 0
    strongly_convex: bool
    m: int                   # index of the level projection of G in Z
    boundary_lattice: tuple  # basis of G ∩ {level = 0}
    ind: int | None          # index of boundary lattice in Z^n x {0}, or None
    okounkov_dim: int
    _body: Polytope | None = field(default=None, repr=False)

    @staticmethod
    def level_map(point):
        """The grading projection: last coordinate of a graded point."""
        return point[-1]

    @property
    def okounkov_body(self):
        """Delta(P) = C ∩ {level = 1}, a polytope in Z^n x R."""
        if self._body is None:
            raise GeometryError("okounkov body was not constructed")
        return self._body


def regularize(sg, build_body=True):
    """Regularization of a graded semigroup.

    Computes the group G generated by the graded points, the convex cone C
    over them, the level index m, the boundary lattice G ∩ {level 0} with its
    index in Z^n x {0} (None when rank-deficient), and the Okounkov body
    Delta = C ∩ {level 1}.  Raises EmptySemigroupError when no level is
    populated.  With build_body=False the hull is skipped; the body dimension
    rank(G) - 1 is available regardless.
    """
    pts = sg.graded_points()
    if not pts:
        raise EmptySemigroupError("empty semigroup")
    n = sg.ambient_rank

    basis = hnf_basis(pts)
    rank = len(basis)
    m = 0
    for row in basis:
        m = math.gcd(m, row[-1])

    # boundary lattice: integer combinations of basis rows with level zero
    coeff_kernel = int_kernel([(row[-1],) for row in basis])
    boundary = []
    for coeffs in coeff_kernel:
        vec = [0] * (n + 1)
        for c, row in zip(coeffs, basis):
            for j in range(n + 1):
                vec[j] += c * row[j]
        boundary.append(tuple(vec))
    boundary = hnf_basis(boundary)

    ind = abs(det_int([row[:-1] for row in boundary])) if len(boundary) == n else None

    body = None
    cone = None
    body_dim = rank - 1
    # cone over the generators equals the cone over the level-1 hull because
    # every graded point sits at a positive level
    if build_body:
        slice_pts = sorted({tuple(Fraction(x, p[-1]) for x in p[:-1]) for p in pts})
        hull = convex_hull(slice_pts)
        if hull.affine_dim() != body_dim:
            raise GeometryError("okounkov dimension disagrees with group rank")
        lifted = [(v + (0,), c) for v, c in hull.constraints]
        lifted.append((tuple([0] * n) + (1,), Fraction(1)))
        lifted.append((tuple([0] * n) + (-1,), Fraction(-1)))
        body = Polytope(n + 1, lifted)
        body._vertices = tuple(sorted(v + (Fraction(1),) for v in hull.vertices()))
        body._empty = False
        body._bounded = True
        body._affine_dim = body_dim

        cone_cons = []
        for v, c in hull.constraints:
            scale = c.denominator
            cone_cons.append((tuple(scale * x for x in v) + (-c.numerator,), 0))
        cone_cons.append((tuple([0] * n) + (1,), 0))
        cone = Polytope(n + 1, cone_cons)
        strongly_convex = rat_rank([v for v, _ in cone.constraints]) == n + 1
    else:
        strongly_convex = True  # positive-level generators force strong convexity

    return Regularization(
        group_basis=tuple(basis),
        cone=cone,
        strongly_convex=strongly_convex,
        m=m,
        boundary_lattice=tuple(boundary),
        ind=ind,
        okounkov_dim=body_dim,
        _body=body,
    )


def hilbert(sg, k):
    """Card(A_k): the Hilbert function of the semigroup itself."""
    return len(sg.level_points(k))


def hilbert_reg(sg, k, reg=None):
    """Hilbert function of the regularization: Card(G ∩ C ∩ {level k}).

    Valid for any k >= 0, also beyond a degreewise bound (the regularization
    is determined once and sliced at any level).
    """
    k = int(k)
    if k == 0:
        return 1
    if reg is None:
        reg = regularize(sg)
    if reg.cone is None:
        raise GeometryError("regularization was built without its cone")
    base = _group_point_at_level(reg, sg.ambient_rank, k)
    if base is None:
        return 0
    # substitute level = k into the cone constraints
    cons = [(v[:-1], c - v[-1] * k) for v, c in reg.cone.constraints]
    b = reg.boundary_lattice
    if not b:
        pt = base[:-1]
        return 1 if all(dot(pt, v) >= c for v, c in cons) else 0
    # points of G at level k form base + (boundary lattice); count in those
    # coordinates, where the slice is a bounded rational polytope
    new_cons = []
    for v, c in cons:
        w = tuple(dot(row[:-1], v) for row in b)
        new_cons.append((w, c - dot(base[:-1], v)))
    poly = Polytope(len(b), new_cons)
    if poly.is_empty():
        return 0
    return poly.count_lattice_points()


def _group_point_at_level(reg, n, k):
    """Some point of the group G at the given level, or None (m does not
    divide k).  Built from an extended-gcd combination of basis levels."""
    basis = list(reg.group_basis)
    cur_g, cur_comb = 0, [0] * len(basis)
    for i, row in enumerate(basis):
        lv = row[-1]
        if lv == 0:
            continue
        if cur_g == 0:
            cur_g = abs(lv)
            cur_comb = [0] * len(basis)
            cur_comb[i] = 1 if lv > 0 else -1
        else:
            gg, x, y = _xgcd(cur_g, lv)
            cur_comb = [x * c for c in cur_comb]
            cur_comb[i] += y
            cur_g = gg
            if cur_g < 0:
                cur_g, cur_comb = -cur_g, [-c for c in cur_comb]
    if cur_g == 0 or k % cur_g != 0:
        return None
    t = k // cur_g
    point = [0] * (n + 1)
    for c, row in zip(cur_comb, basis):
        if c:
            for j in range(n + 1):
                point[j] += t * c * row[j]
    return tuple(point)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass
class GrowthLawReport:
    q: int
    m: int
    a_q_empirical: Fraction
    a_q_predicted: Fraction
    relative_gap: Fraction
    k_max: int


def growth_law_check(sg, k_max=200, reg=None):
    """Growth coefficient of the regularized Hilbert function vs. the body.

    predicted = m^q * Vol(Delta) in boundary-lattice coordinates;
    empirical = H_reg(m * k_max) / k_max^q.  Requires a strongly convex cone.
    """
    if reg is None:
        reg = regularize(sg)
    if not reg.strongly_convex:
        raise GeometryError("growth law requires a strongly convex cone")
    q = reg.okounkov_dim
    m = reg.m
    # boundary lattice rank is exactly rank(G) - 1 = q here
    vol = lattice_volume(reg.okounkov_body, list(reg.boundary_lattice))
    predicted = Fraction(m) ** q * vol
    count = hilbert_reg(sg, m * k_max, reg=reg)
    empirical = Fraction(count, k_max ** q)
    gap = abs(empirical - predicted) / predicted
    return GrowthLawReport(q=q, m=m, a_q_empirical=empirical,
                           a_q_predicted=predicted, relative_gap=gap,
                           k_max=k_max)
