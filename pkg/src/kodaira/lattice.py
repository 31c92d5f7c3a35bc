"""Exact rational linear algebra and lattice/convex geometry primitives.

Everything in this module is exact: vectors are tuples of ints or Fractions,
matrices are lists of row tuples, and no geometric predicate ever touches a
float.  The distinguished value NEG_INF (= float("-inf")) is the dimension of
an empty polytope and propagates through every dimension-like quantity
downstream; it is never encoded as -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

Rat = Fraction

NEG_INF = float("-inf")


class GeometryError(ValueError):
    """Raised on contract violations in geometric operations."""


class UnboundedPolytopeError(GeometryError):
    """Raised when an operation requires a bounded polytope."""


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def is_zero(u):
    return all(a == 0 for a in u)


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for a in v:
        g = math.gcd(g, abs(int(a)))
    if g <= 1:
        return tuple(int(a) for a in v)
    return tuple(int(a) // g for a in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector, keep direction."""
    fracs = [Fraction(a) for a in v]
    lcm = 1
    for a in fracs:
        lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
    return primitive(tuple(int(a * lcm) for a in fracs))


# ---------------------------------------------------------------------------
# integer matrices: Hermite normal form and friends
# ---------------------------------------------------------------------------

def hnf(rows):
    """Row Hermite normal form with unimodular transform.

    Returns (H, U) with H = U * rows, U unimodular, H in row echelon form:
    pivots positive, entries below a pivot zero, entries above reduced into
    [0, pivot).  Zero rows sink to the bottom.  The integer row space is
    preserved.  Empty input returns ([], []).
    """
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    h = [list(int(x) for x in r) for r in rows]
    if any(len(r) != n for r in h):
        raise GeometryError("ragged matrix")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    row = 0
    for col in range(n):
        # chase entries in this column below `row` down to a single pivot
        while True:
            nz = [i for i in range(row, m) if h[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][col]))
            if piv != row:
                h[row], h[piv] = h[piv], h[row]
                u[row], u[piv] = u[piv], u[row]
            done = True
            for i in range(row + 1, m):
                if h[i][col] != 0:
                    q = h[i][col] // h[row][col]
                    if q:
                        for j in range(n):
                            h[i][j] -= q * h[row][j]
                        for j in range(m):
                            u[i][j] -= q * u[row][j]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if row < m and h[row][col] != 0:
            if h[row][col] < 0:
                h[row] = [-x for x in h[row]]
                u[row] = [-x for x in u[row]]
            p = h[row][col]
            for i in range(row):
                q = h[i][col] // p
                if q:
                    for j in range(n):
                        h[i][j] -= q * h[row][j]
                    for j in range(m):
                        u[i][j] -= q * u[row][j]
            row += 1
            if row == m:
                break
    return [tuple(r) for r in h], [tuple(r) for r in u]


def hnf_basis(rows):
    """Nonzero rows of the HNF: a canonical basis of the generated lattice.

    Reduces incrementally first, so huge generating sets cost O(rows * n^2)
    without building the transform.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return []
    lat = IntLattice(len(rows[0]))
    for r in rows:
        lat.add(r)
    h, _ = hnf(lat.basis())
    return [r for r in h if not is_zero(r)]


def int_rank(rows):
    return len(hnf_basis(rows))


def in_row_lattice(vec, basis):
    """Membership of an integer vector in the lattice spanned by HNF rows."""
    v = [int(x) for x in vec]
    for row in basis:
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            continue
        if v[col] % row[col] != 0:
            return False
        q = v[col] // row[col]
        if q:
            for j in range(len(v)):
                v[j] -= q * row[j]
    return all(x == 0 for x in v)


def solve_in_lattice(target, rows):
    """Integer coefficients x with x * rows == target, or None."""
    h, u = hnf(rows)
    v = [int(x) for x in target]
    coeff = [0] * len(h)
    for i, row in enumerate(h):
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            continue
        if v[col] % row[col] != 0:
            return None
        q = v[col] // row[col]
        coeff[i] = q
        if q:
            for j in range(len(v)):
                v[j] -= q * row[j]
    if any(x != 0 for x in v):
        return None
    m = len(rows)
    out = [0] * m
    for i in range(len(h)):
        if coeff[i]:
            for j in range(m):
                out[j] += coeff[i] * u[i][j]
    return tuple(out)


def int_kernel(rows):
    """Basis of the left kernel {x integer : x * rows = 0}."""
    h, u = hnf(rows)
    return [u[i] for i in range(len(h)) if is_zero(h[i])]


def saturate_rows(rows):
    """Basis of the saturation (rational row span intersected with Z^n)."""
    basis = hnf_basis(rows)
    if not basis:
        return []
    n = len(basis[0])
    # orthogonal complement of the span, then complement again
    perp = int_kernel([tuple(r[i] for r in basis) for i in range(n)])
    if not perp:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    sat = int_kernel([tuple(p[i] for p in perp) for i in range(n)])
    return hnf_basis(sat)


def det_int(rows):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(int(x) for x in r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class IntLattice:
    """Mutable integer lattice kept in row-echelon form via gcd insertion.

    Supports incremental generation: add vectors one at a time, query rank
    and membership cheaply.  Entries stay small because insertions use
    extended-gcd row operations, never fraction-free elimination.
    """

    def __init__(self, ambient_dim):
        self.n = int(ambient_dim)
        self.rows = []        # echelon rows, pivot columns strictly increase
        self.pivots = []      # pivot column per row

    @property
    def rank(self):
        return len(self.rows)

    def add(self, vec):
        v = [int(x) for x in vec]
        for idx in range(len(self.rows)):
            row, piv = self.rows[idx], self.pivots[idx]
            j = next((jj for jj, x in enumerate(v) if x != 0), None)
            if j is None:
                return False
            if j < piv:
                self.rows.insert(idx, v)
                self.pivots.insert(idx, j)
                self._normalize(idx)
                return True
            if j > piv:
                continue
            a, b = row[piv], v[piv]
            if b % a == 0:
                q = b // a
                for jj in range(piv, self.n):
                    v[jj] -= q * row[jj]
            else:
                g, x, y = _xgcd_int(a, b)
                new_row = [x * r + y * w for r, w in zip(row, v)]
                factor_r, factor_v = a // g, b // g
                v = [factor_r * w - factor_v * r for r, w in zip(row, v)]
                self.rows[idx] = new_row
        j = next((jj for jj, x in enumerate(v) if x != 0), None)
        if j is None:
            return False
        self.rows.append(v)
        self.pivots.append(j)
        self._normalize(len(self.rows) - 1)
        return True

    def _normalize(self, idx):
        if self.rows[idx][self.pivots[idx]] < 0:
            self.rows[idx] = [-x for x in self.rows[idx]]

    def contains(self, vec):
        v = [int(x) for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            if v[piv] != 0:
                if v[piv] % row[piv] != 0:
                    return False
                q = v[piv] // row[piv]
                for jj in range(piv, self.n):
                    v[jj] -= q * row[jj]
        return all(x == 0 for x in v)

    def basis(self):
        return [tuple(r) for r in self.rows]


def _xgcd_int(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def int_points_rank(points):
    """Affine rank of a set of integer points (rank of differences)."""
    pts = list(points)
    if not pts:
        return NEG_INF
    base = pts[0]
    lat = IntLattice(len(base))
    for p in pts[1:]:
        lat.add(vsub(p, base))
        if lat.rank == len(base):
            break
    return lat.rank


def subgroup_rank_index(generators, ambient=None):
    """Rank and index of the group generated by integer vectors.

    `ambient` is a basis of a saturated sublattice containing the generators
    (defaults to the standard lattice).  Returns (rank, index) where index is
    the subgroup index when rank equals the ambient rank, and None (infinite)
    otherwise.  A generator outside the ambient span raises GeometryError.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if ambient is not None:
        amb = hnf_basis(ambient)
        ambient_rank = len(amb)
        cols = [list(col) for col in zip(*amb)]
        coords = []
        for g in gens:
            c = solve_linear_system(cols, g)
            if c is None or any(x.denominator != 1 for x in c):
                raise GeometryError("not in ambient lattice")
            coords.append(tuple(int(x) for x in c))
        gens = coords
    else:
        ambient_rank = len(gens[0]) if gens else 0
    basis = hnf_basis(gens)
    rank = len(basis)
    if rank < ambient_rank or rank == 0:
        return rank, None
    pivot_cols = [next(j for j, x in enumerate(r) if x != 0) for r in basis]
    square = [tuple(r[j] for j in pivot_cols) for r in basis]
    return rank, abs(det_int(square))


# ---------------------------------------------------------------------------
# rational linear algebra
# ---------------------------------------------------------------------------

def solve_rational(a_rows, b):
    """Solve A x = b exactly (A square, rows of rationals); None if singular."""
    n = len(a_rows)
    a = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][n] for i in range(n))


def rat_rank(rows):
    """Rank of a matrix of rationals (Gaussian elimination)."""
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def solve_linear_system(a_rows, b):
    """One exact solution x of A x = b for a consistent (possibly non-square)
    system, or None if inconsistent."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(x) for x in a_rows[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)


def affine_rank(points):
    """Dimension of the affine hull of a point set (NEG_INF when empty)."""
    pts = list(points)
    if not pts:
        return NEG_INF
    p0 = pts[0]
    return rat_rank([vsub(p, p0) for p in pts[1:]]) if len(pts) > 1 else 0


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination (exact feasibility and coordinate bounds)
# ---------------------------------------------------------------------------

def _normalize_constraint(v, c):
    g = 0
    for a in v:
        g = math.gcd(g, abs(a))
    if g > 1:
        return tuple(a // g for a in v), Fraction(c) / g
    return tuple(v), Fraction(c)


def _fm_eliminate(constraints, var):
    lower, upper, rest = [], [], []
    for v, c in constraints:
        a = v[var]
        if a > 0:
            lower.append((v, c))
        elif a < 0:
            upper.append((v, c))
        else:
            rest.append((v, c))
    best = {}
    for v, c in rest:
        key = v
        if key not in best or c > best[key]:
            best[key] = c
    for vp, cp in lower:
        for vn, cn in upper:
            a, b = vp[var], -vn[var]
            w = tuple(b * x + a * y for x, y in zip(vp, vn))
            d = b * cp + a * cn
            w, d = _normalize_constraint(w, d)
            if w not in best or d > best[w]:
                best[w] = d
    return [(v, c) for v, c in best.items()]


def _fm_project_to(constraints, keep_var, nvars):
    cons = [_normalize_constraint(tuple(int(x) for x in v), c) for v, c in constraints]
    for var in range(nvars):
        if var == keep_var:
            continue
        cons = _fm_eliminate(cons, var)
    return cons


# ---------------------------------------------------------------------------
# Polytope
# ---------------------------------------------------------------------------

class Polytope:
    """Rational polyhedron in H-representation: {u : <u, normal> >= bound}.

    Normals are integer vectors, bounds are Fractions.  The vertex list,
    affine dimension and emptiness flag are computed lazily and cached;
    instances are immutable after construction and safe to share.
    """

    def __init__(self, ambient_dim, constraints, int_box=None):
        self.ambient_dim = int(ambient_dim)
        cons = []
        for v, c in constraints:
            vv = tuple(int(x) for x in v)
            if len(vv) != self.ambient_dim:
                raise GeometryError("constraint dimension mismatch")
            cons.append(_normalize_constraint(vv, Fraction(c)))
        self.constraints = tuple(cons)
        self._vertices = None
        self._empty = None
        self._bounded = None
        self._affine_dim = None
        # a caller-supplied enclosing integer box certifies boundedness and
        # lets lattice scans skip feasibility preprocessing
        self._box = list(int_box) if int_box is not None else None
        if int_box is not None:
            self._bounded = True

    def __repr__(self):
        return f"Polytope(dim={self.ambient_dim}, constraints={len(self.constraints)})"

    # -- predicates --------------------------------------------------------

    def contains(self, point):
        return all(dot(point, v) >= c for v, c in self.constraints)

    def is_empty(self):
        if self._empty is None:
            if self._vertices is not None and self._vertices:
                self._empty = False
            elif self.ambient_dim == 0:
                self._empty = any(c > 0 for _, c in self.constraints)
            else:
                cons = list(self.constraints)
                for var in range(self.ambient_dim):
                    cons = _fm_eliminate(cons, var)
                self._empty = any(c > 0 for _, c in cons)
        return self._empty

    def coordinate_bounds(self, i):
        """Exact (lo, hi) of coordinate i over the polytope; None = unbounded
        on that side.  Raises on empty polytope."""
        if self.is_empty():
            raise GeometryError("empty polytope has no coordinate bounds")
        cons = _fm_project_to(self.constraints, i, self.ambient_dim)
        lo, hi = None, None
        for v, c in cons:
            a = v[i]
            if a > 0:
                b = Fraction(c, a)
                lo = b if lo is None or b > lo else lo
            elif a < 0:
                b = Fraction(c, a)
                hi = b if hi is None or b < hi else hi
        return lo, hi

    def is_bounded(self):
        if self._bounded is None:
            if self.is_empty():
                self._bounded = True
            else:
                self._bounded = True
                for i in range(self.ambient_dim):
                    lo, hi = self.coordinate_bounds(i)
                    if lo is None or hi is None:
                        self._bounded = False
                        break
        return self._bounded

    # -- V-representation ---------------------------------------------------

    def vertices(self):
        """All vertices (basic feasible solutions), lexicographically sorted."""
        if self._vertices is None:
            n = self.ambient_dim
            found = set()
            if n == 0:
                if not self.is_empty():
                    found.add(())
            else:
                for idx in combinations(range(len(self.constraints)), n):
                    rows = [self.constraints[i][0] for i in idx]
                    rhs = [self.constraints[i][1] for i in idx]
                    sol = solve_rational(rows, rhs)
                    if sol is not None and self.contains(sol):
                        found.add(sol)
            self._vertices = tuple(sorted(found))
            if self._vertices:
                self._empty = False
        return self._vertices

    def affine_dim(self):
        """Affine dimension; NEG_INF for the empty polytope.

        Exact for bounded polytopes (vertex based); unbounded polytopes are
        rejected since their hull is not spanned by vertices.
        """
        if self._affine_dim is None:
            if self.is_empty():
                self._affine_dim = NEG_INF
            else:
                if not self.is_bounded():
                    raise UnboundedPolytopeError("affine_dim requires bounded polytope")
                self._affine_dim = affine_rank(self.vertices())
        return self._affine_dim

    def dilate(self, k):
        """The dilate k*P (bounds scale, normals do not)."""
        p = Polytope(self.ambient_dim, [(v, c * k) for v, c in self.constraints])
        return p

    # -- lattice points ------------------------------------------------------

    def _int_box(self):
        box = []
        for i in range(self.ambient_dim):
            lo = min(v[i] for v in self.vertices())
            hi = max(v[i] for v in self.vertices())
            box.append((math.ceil(lo), math.floor(hi)))
        return box

    def lattice_points(self):
        """All integer points, in lexicographic order.  Unbounded input is an
        error; the empty polytope yields []."""
        return self._lattice_scan(collect=True)

    def count_lattice_points(self):
        """Number of integer points (last coordinate counted by interval)."""
        return self._lattice_scan(collect=False)

    def _lattice_scan(self, collect):
        n = self.ambient_dim
        if n == 0:
            ok = not self.is_empty()
            return ([()] if ok else []) if collect else int(ok)
        if self._box is not None:
            box = self._box
            if any(lo > hi for lo, hi in box):
                return [] if collect else 0
        else:
            if self.is_empty():
                return [] if collect else 0
            if not self.is_bounded():
                raise UnboundedPolytopeError("unbounded")
            box = self._int_box()
        # integer points see each bound only through its ceiling
        normals = []
        residuals = []
        lasts = []
        for v, c in self.constraints:
            last = max((j for j, x in enumerate(v) if x != 0), default=-1)
            if last < 0:
                if c > 0:
                    return [] if collect else 0
                continue
            normals.append(v)
            residuals.append(math.ceil(c))
            lasts.append(last)
        m = len(normals)
        touching = [[] for _ in range(n)]  # residual updates at this depth
        bounding = [[] for _ in range(n)]  # becomes a 1-var bound here
        for i in range(m):
            bounding[lasts[i]].append(i)
            for d in range(lasts[i]):
                if normals[i][d] != 0:
                    touching[d].append(i)

        out = [] if collect else None
        counter = [0]
        prefix = [0] * n

        def rec(depth):
            lo, hi = box[depth]
            for i in bounding[depth]:
                a = normals[i][depth]
                c = residuals[i]
                if a > 0:
                    b = -(-c // a)
                    if b > lo:
                        lo = b
                else:
                    b = c // a  # floor division with negative a rounds down
                    if b < hi:
                        hi = b
            if lo > hi:
                return
            if depth == n - 1:
                if collect:
                    head = tuple(prefix[: n - 1])
                    for x in range(lo, hi + 1):
                        out.append(head + (x,))
                else:
                    counter[0] += hi - lo + 1
                return
            touch = touching[depth]
            saved = [residuals[i] for i in touch]
            coeffs = [normals[i][depth] for i in touch]
            for i, a, c in zip(touch, coeffs, saved):
                residuals[i] = c - a * lo
            for x in range(lo, hi + 1):
                prefix[depth] = x
                rec(depth + 1)
                for i, a in zip(touch, coeffs):
                    residuals[i] -= a
            for i, c in zip(touch, saved):
                residuals[i] = c
        rec(0)
        return out if collect else counter[0]


def lattice_points(poly):
    return poly.lattice_points()


# ---------------------------------------------------------------------------
# convex hull (exact, dims 0..3 intrinsic)
# ---------------------------------------------------------------------------

_HULL3_MAX_POINTS = 160


def _hull_2d(points):
    """Andrew monotone chain.  Returns hull vertices in ccw order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_3d(points):
    """Facet constraints of a full-dimensional 3D hull by triple enumeration.

    Quadratic-cubed scan; guarded so it only runs on small inputs.
    """
    pts = sorted(set(points))
    if len(pts) > _HULL3_MAX_POINTS:
        raise GeometryError(
            f"3D hull limited to {_HULL3_MAX_POINTS} points ({len(pts)} given)")
    facets = {}
    m = len(pts)
    for i, j, k in combinations(range(m), 3):
        a, b, c = pts[i], pts[j], pts[k]
        u, v = vsub(b, a), vsub(c, a)
        nrm = (u[1] * v[2] - u[2] * v[1],
               u[2] * v[0] - u[0] * v[2],
               u[0] * v[1] - u[1] * v[0])
        if is_zero(nrm):
            continue
        nrm = clear_denominators(nrm)
        pos = neg = False
        for p in pts:
            s = dot(vsub(p, a), nrm)
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        inward = nrm if pos else tuple(-x for x in nrm)
        bound = dot(a, inward)
        facets[(inward, bound)] = True
    return [(_normalize_constraint(v, Fraction(c))) for v, c in facets]


def convex_hull(points, ambient_dim=None):
    """Exact convex hull of rational points as a Polytope.

    The returned polytope caches the minimal vertex set (lexicographically
    sorted) and its affine dimension; lower-dimensional hulls get explicit
    affine-hull equality constraints.  Empty input yields an empty polytope.
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        n = 0 if ambient_dim is None else ambient_dim
        p = Polytope(n, [(tuple([0] * n), Fraction(1))])
        p._vertices = ()
        p._empty = True
        p._affine_dim = NEG_INF
        return p
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise GeometryError("points of mixed dimension")
    p0 = pts[0]
    diffs = [vsub(p, p0) for p in pts[1:]]
    d = rat_rank(diffs) if diffs else 0

    constraints = []
    # affine-hull equalities from an integer basis of the orthogonal complement
    if d < n:
        diff_int = [clear_denominators(v) for v in diffs if not is_zero(v)]
        cols = [tuple(r[i] for r in diff_int) for i in range(n)] if diff_int else []
        if diff_int:
            perp = int_kernel(cols)
        else:
            perp = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        for w in perp:
            b = dot(p0, w)
            constraints.append((w, b))
            constraints.append((tuple(-x for x in w), -b))

    if d == 0:
        poly = Polytope(n, constraints)
        poly._vertices = (p0,)
        poly._empty = False
        poly._affine_dim = 0
        return poly

    # pick d coordinates on which the difference matrix has full rank
    proj_cols = []
    work = [list(v) for v in diffs]
    for col in range(n):
        if len(proj_cols) == d:
            break
        piv = next((i for i in range(len(proj_cols), len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[len(proj_cols)], work[piv] = work[piv], work[len(proj_cols)]
        pv = work[len(proj_cols)][col]
        r0 = [x / pv for x in work[len(proj_cols)]]
        work[len(proj_cols)] = r0
        for i in range(len(work)):
            if i != len(proj_cols) and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], r0)]
        proj_cols.append(col)

    proj = [tuple(p[c] for c in proj_cols) for p in pts]

    def embed(v_small):
        w = [Fraction(0)] * n
        for c, val in zip(proj_cols, v_small):
            w[c] = Fraction(val)
        return clear_denominators(w)

    if d == 1:
        order = sorted(range(len(pts)), key=lambda i: proj[i][0])
        vmin, vmax = pts[order[0]], pts[order[-1]]
        e = embed((1,))
        constraints.append((e, dot(vmin, e)))
        ne = tuple(-x for x in e)
        constraints.append((ne, dot(vmax, ne)))
        verts = tuple(sorted({vmin, vmax}))
    elif d == 2:
        hull = _hull_2d(proj)
        back = {q: [] for q in hull}
        for i, q in enumerate(proj):
            if q in back:
                back[q].append(pts[i])
        verts = tuple(sorted(back[q][0] for q in hull))
        k = len(hull)
        for i in range(k):
            a, b = hull[i], hull[(i + 1) % k]
            edge = vsub(b, a)
            inward = (-edge[1], edge[0])  # ccw order: interior on the left
            e = embed(inward)
            constraints.append((e, min(dot(p, e) for p in verts)))
    else:  # d == 3
        facet_cons = _facets_3d(proj)
        for v_small, c_small in facet_cons:
            e = embed(v_small)
            constraints.append((e, min(dot(p, e) for p in pts)))
        # a hull point is a vertex iff its tight facet normals span 3 dims
        verts = []
        for i, q in enumerate(proj):
            tight = [v for v, c in facet_cons if dot(q, v) == c]
            if len(tight) >= 3 and rat_rank(tight) == 3:
                verts.append(pts[i])
        verts = tuple(sorted(set(verts)))

    poly = Polytope(n, constraints)
    poly._vertices = verts
    poly._empty = False
    poly._bounded = True
    poly._affine_dim = d
    return poly


# ---------------------------------------------------------------------------
# lattice-normalized volume
# ---------------------------------------------------------------------------

def _polygon_area(coords):
    hull = _hull_2d(coords)
    s = Fraction(0)
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def lattice_volume(poly, basis):
    """Volume of a bounded polytope in coordinates of a direction lattice.

    `basis` must span the direction space of the polytope's affine hull; the
    result is invariant under unimodular change of that basis.  Dimension 0
    returns 1.  Computed exactly by triangulating the vertex hull.
    """
    verts = poly.vertices()
    if not verts:
        raise GeometryError("volume of empty polytope")
    q = len(basis)
    v0 = verts[0]
    diffs = [vsub(v, v0) for v in verts[1:]]
    dim = rat_rank(diffs) if diffs else 0
    basis_rank = rat_rank(basis) if basis else 0
    if basis_rank != q or dim != q or (diffs and rat_rank(list(basis) + diffs) != q):
        raise GeometryError("basis does not span direction space")
    if q == 0:
        return Fraction(1)
    bt = [list(col) for col in zip(*basis)]
    coords = []
    for v in verts:
        c = solve_linear_system(bt, vsub(v, v0))
        if c is None:
            raise GeometryError("basis does not span direction space")
        coords.append(tuple(c))
    if q == 1:
        vals = [c[0] for c in coords]
        return max(vals) - min(vals)
    if q == 2:
        return _polygon_area(coords)
    if q == 3:
        hull3 = convex_hull(coords)
        origin = hull3.vertices()[0]
        total = Fraction(0)
        seen = set()
        for v, c in hull3.constraints:
            if (v, c) in seen:
                continue
            seen.add((v, c))
            ring = [p for p in hull3.vertices() if dot(p, v) == c]
            if len(ring) < 3 or dot(origin, v) == c:
                continue
            flat = _order_facet_cycle(ring, v)
            for i in range(1, len(flat) - 1):
                mat = [vsub(flat[0], origin), vsub(flat[i], origin), vsub(flat[i + 1], origin)]
                det = (mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
                       - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
                       + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]))
                total += abs(det)
        return total / 6
    raise GeometryError("volume only implemented through dimension 3")


def _order_facet_cycle(ring, normal):
    """Order coplanar points into a convex cycle (project out the normal)."""
    i = max(range(3), key=lambda j: abs(normal[j]))
    keep = [j for j in range(3) if j != i]
    flat = [(p[keep[0]], p[keep[1]]) for p in ring]
    hull = _hull_2d(flat)
    back = {}
    for p, f in zip(ring, flat):
        back.setdefault(f, p)
    return [back[f] for f in hull]
