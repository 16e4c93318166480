"""Projective points, planes and lines over exact scalars.

Points and planes are homogeneous 4-vectors canonicalized so that the
first nonzero coordinate equals 1; the canonical form is unique per
projective object, which makes equality and hashing exact.  Lines carry a
canonical Plucker key so that span and meet representations of the same
line compare equal.
"""

from __future__ import annotations

from .cyclotomic import Scalar
from .errors import CollinearInputError, TargetEqualsCenterError
from .linalg import nullspace, rank

Vec4 = tuple[Scalar, Scalar, Scalar, Scalar]


def _canonicalize(coords) -> Vec4:
    coords = tuple(Scalar.coerce(c) for c in coords)
    if len(coords) != 4:
        raise ValueError("homogeneous 4-vector expected")
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective object")
    if lead.is_one():
        return coords
    inv = lead.inverse()
    return tuple(c * inv for c in coords)


class _Homogeneous:
    __slots__ = ("coords", "_key")

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        self.coords = _canonicalize(coords)
        self._key = None

    def key(self):
        """Raw hash key; unique among objects in a common field order."""
        if self._key is None:
            self._key = tuple((c.order, c.num, c.den) for c in self.coords)
        return self._key

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(tuple(self.coords))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.coords))})"


class ProjPoint(_Homogeneous):
    pass


class ProjPlane(_Homogeneous):
    def contains(self, point: ProjPoint) -> bool:
        return dot4(self.coords, point.coords).is_zero()


def dot4(a, b) -> Scalar:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def det2(a, b, c, d) -> Scalar:
    return a * d - b * c


def det3(rows) -> Scalar:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det4(points) -> Scalar:
    """Determinant of four projective points' canonical coordinates.

    Zero exactly when the four points are coplanar.  Expansion by
    complementary 2x2 minors of the first and last two rows.
    """
    r0, r1, r2, r3 = (p.coords if isinstance(p, ProjPoint) else tuple(map(Scalar.coerce, p))
                      for p in points)
    p01 = det2(r0[0], r0[1], r1[0], r1[1])
    p02 = det2(r0[0], r0[2], r1[0], r1[2])
    p03 = det2(r0[0], r0[3], r1[0], r1[3])
    p12 = det2(r0[1], r0[2], r1[1], r1[2])
    p13 = det2(r0[1], r0[3], r1[1], r1[3])
    p23 = det2(r0[2], r0[3], r1[2], r1[3])
    q01 = det2(r2[0], r2[1], r3[0], r3[1])
    q02 = det2(r2[0], r2[2], r3[0], r3[2])
    q03 = det2(r2[0], r2[3], r3[0], r3[3])
    q12 = det2(r2[1], r2[2], r3[1], r3[2])
    q13 = det2(r2[1], r2[3], r3[1], r3[3])
    q23 = det2(r2[2], r2[3], r3[2], r3[3])
    return p01 * q23 - p02 * q13 + p03 * q12 + p12 * q03 - p13 * q02 + p23 * q01


def are_coplanar(p0, p1, p2, p3) -> bool:
    return det4((p0, p1, p2, p3)).is_zero()


def plane_through(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> ProjPlane:
    """The unique plane through three non-collinear points."""
    rows = [p1.coords, p2.coords, p3.coords]
    cof = []
    sign = 1
    for k in range(4):
        minor = [[row[c] for c in range(4) if c != k] for row in rows]
        d = det3(minor)
        cof.append(d if sign > 0 else -d)
        sign = -sign
    if not any(cof):
        raise CollinearInputError(f"collinear points {p1}, {p2}, {p3}")
    return ProjPlane(*cof)


def project_from(center: ProjPoint, targets, screen: ProjPlane):
    """Project each target from the center onto the screen plane."""
    sp = dot4(screen.coords, center.coords)
    if sp.is_zero():
        raise ValueError("projection center lies on the screen")
    out = []
    for t in targets:
        if t == center:
            raise TargetEqualsCenterError(f"target {t} equals the center")
        st = dot4(screen.coords, t.coords)
        coords = tuple(st * pc - sp * tc for pc, tc in zip(center.coords, t.coords))
        out.append(ProjPoint(*coords))
    return out


class ProjLine:
    """A projective line, stored as a spanning pair of points."""

    __slots__ = ("points", "_plucker")

    def __init__(self, a: ProjPoint, b: ProjPoint):
        if a == b:
            raise ValueError("a line needs two distinct points")
        self.points = (a, b)
        self._plucker = None

    @classmethod
    def from_points(cls, a: ProjPoint, b: ProjPoint) -> "ProjLine":
        return cls(a, b)

    @classmethod
    def from_planes(cls, pi1: ProjPlane, pi2: ProjPlane) -> "ProjLine":
        if pi1 == pi2:
            raise ValueError("a line needs two distinct planes")
        basis = nullspace([list(pi1.coords), list(pi2.coords)])
        if len(basis) != 2:
            raise ValueError("planes do not meet in a line")
        return cls(ProjPoint(*basis[0]), ProjPoint(*basis[1]))

    def plucker(self):
        """Canonical Plucker six-tuple (p01, p02, p03, p12, p13, p23)."""
        if self._plucker is None:
            x, y = (p.coords for p in self.points)
            raw = (det2(x[0], x[1], y[0], y[1]),
                   det2(x[0], x[2], y[0], y[2]),
                   det2(x[0], x[3], y[0], y[3]),
                   det2(x[1], x[2], y[1], y[2]),
                   det2(x[1], x[3], y[1], y[3]),
                   det2(x[2], x[3], y[2], y[3]))
            lead = next(c for c in raw if c)
            inv = lead.inverse()
            self._plucker = tuple(c * inv for c in raw)
        return self._plucker

    def contains(self, point: ProjPoint) -> bool:
        rows = [list(self.points[0].coords), list(self.points[1].coords),
                list(point.coords)]
        return rank(rows) == 2

    def meet_plane(self, plane: ProjPlane) -> ProjPoint:
        """Intersection point with a plane not containing the line."""
        a, b = self.points
        da = dot4(plane.coords, a.coords)
        db = dot4(plane.coords, b.coords)
        if da.is_zero() and db.is_zero():
            raise ValueError("line lies inside the plane")
        coords = tuple(db * ac - da * bc for ac, bc in zip(a.coords, b.coords))
        return ProjPoint(*coords)

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.plucker() == other.plucker()

    def __hash__(self):
        return hash(self.plucker())

    def __repr__(self):
        return f"ProjLine({self.points[0]!r}, {self.points[1]!r})"


def intersect_three_planes(pi1: ProjPlane, pi2: ProjPlane, pi3: ProjPlane):
    """The common point of three planes, or None when they share a line."""
    basis = nullspace([list(pi1.coords), list(pi2.coords), list(pi3.coords)])
    if len(basis) != 1:
        return None
    return ProjPoint(*basis[0])


def plane_basis(plane: ProjPlane):
    """Three 4-vectors spanning the plane (rows of the chart)."""
    return nullspace([list(plane.coords)])


def in_plane_coords(basis, point: ProjPoint):
    """Coordinates of a point of the plane in the given 3-vector basis."""
    cols = [list(v) for v in basis]
    matrix = [[cols[j][i] for j in range(3)] for i in range(4)]
    sol = solve_overdetermined(matrix, list(point.coords))
    if sol is None:
        raise ValueError("point does not lie in the plane")
    return tuple(sol)


def solve_overdetermined(matrix, rhs):
    from .linalg import solve
    return solve(matrix, rhs)


def apply_matrix(matrix, point: ProjPoint) -> ProjPoint:
    coords = [dot4(row, point.coords) for row in
              [tuple(Scalar.coerce(x) for x in r) for r in matrix]]
    return ProjPoint(*coords)


def matrix_inverse(matrix):
    n = len(matrix)
    aug = [[Scalar.coerce(x) for x in row] +
           [Scalar.one() if i == j else Scalar.zero() for j in range(n)]
           for i, row in enumerate(matrix)]
    reduced, pivots = rref_copy(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def rref_copy(rows):
    from .linalg import rref
    return rref(rows)
