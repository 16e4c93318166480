"""Inverse stereographic lifting and ordinary-circle counting.

The sphere is x^2 + y^2 + z^2 = z (diameter 1, tangent to the plane at
the origin), so the lift (u, v) -> (u, v, u^2+v^2, 1+u^2+v^2) is a
rational map and all arithmetic stays exact.  Circles of the plane
correspond to plane sections of the sphere avoiding the north pole
(0, 0, 1, 1); lines correspond to sections through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .census import plane_census
from .cyclotomic import Scalar
from .errors import DuplicatePointError, PencilDegenerateAtPoleError
from .generators import PointSet
from .projective import ProjPoint, dot4, matrix_inverse
from .quadrics import HPoly, Pencil, QForm


@dataclass(frozen=True)
class PlanarPointSet:
    points: tuple  # pairs of Scalars

    @classmethod
    def of(cls, pairs) -> "PlanarPointSet":
        pts = tuple((Scalar.coerce(u), Scalar.coerce(v)) for u, v in pairs)
        seen = set()
        for u, v in pts:
            key = (u.canonical_key(), v.canonical_key())
            if key in seen:
                raise DuplicatePointError("planar set contains a repeated point")
            seen.add(key)
        return cls(pts)

    def __len__(self):
        return len(self.points)


NORTH_POLE = ProjPoint(Scalar.zero(), Scalar.zero(), Scalar.one(), Scalar.one())


def lift(ps: PlanarPointSet) -> PointSet:
    """Inverse stereographic image of the set, with the pole appended last."""
    out = []
    labels = []
    for i, (u, v) in enumerate(ps.points):
        w = u * u + v * v
        out.append(ProjPoint(u, v, w, w + 1))
        labels.append(f"t_{i}")
    out.append(NORTH_POLE)
    labels.append("pole")
    return PointSet(out, labels=labels)


@dataclass(frozen=True)
class CircleKey:
    """Canonical (center_x, center_y, radius^2) of a circle through 3 points."""
    center_x: Scalar
    center_y: Scalar
    radius_sq: Scalar

    def key(self):
        return (self.center_x.canonical_key(), self.center_y.canonical_key(),
                self.radius_sq.canonical_key())

    def passes_through(self, u, v) -> bool:
        dx = u - self.center_x
        dy = v - self.center_y
        return (dx * dx + dy * dy - self.radius_sq).is_zero()


def circle_through(p1, p2, p3) -> CircleKey | None:
    """The circle through three points, or None when they are collinear."""
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    a11 = (x2 - x1) * 2
    a12 = (y2 - y1) * 2
    b1 = x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1
    a21 = (x3 - x1) * 2
    a22 = (y3 - y1) * 2
    b2 = x3 * x3 + y3 * y3 - x1 * x1 - y1 * y1
    det = a11 * a22 - a12 * a21
    if det.is_zero():
        return None
    inv = det.inverse()
    cx = (b1 * a22 - b2 * a12) * inv
    cy = (a11 * b2 - a21 * b1) * inv
    dx = x1 - cx
    dy = y1 - cy
    return CircleKey(cx, cy, dx * dx + dy * dy)


def ordinary_circles_direct(ps: PlanarPointSet):
    """Circles through exactly three points, by exhaustive triple enumeration.

    Collinear triples define lines, not circles, and are skipped.
    """
    pts = ps.points
    circles = {}
    for i, j, k in combinations(range(len(pts)), 3):
        c = circle_through(pts[i], pts[j], pts[k])
        if c is not None:
            circles.setdefault(c.key(), c)
    ordinary = []
    for key in sorted(circles):
        c = circles[key]
        count = sum(1 for u, v in pts if c.passes_through(u, v))
        if count == 3:
            ordinary.append(c)
    return len(ordinary), ordinary


def ordinary_lines_planar(ps: PlanarPointSet) -> int:
    """Lines through exactly two points of the planar set."""
    pts = ps.points
    lines = {}
    for i, j in combinations(range(len(pts)), 2):
        (x1, y1), (x2, y2) = pts[i], pts[j]
        a = y2 - y1
        b = x1 - x2
        c = a * x1 + b * y1
        lead = a if a else b
        inv = lead.inverse()
        key = ((a * inv).canonical_key(), (b * inv).canonical_key(),
               (c * inv).canonical_key())
        lines.setdefault(key, set()).update((i, j))
    return sum(1 for members in lines.values() if len(members) == 2)


@dataclass
class LiftCounts:
    ordinary_circles: int
    pole_planes: int      # ordinary planes through the pole = ordinary lines
    total_ordinary_planes: int


def ordinary_circles_via_lift(ps: PlanarPointSet, jobs: int = 1) -> LiftCounts:
    """Count ordinary circles as ordinary planes of the lift avoiding the pole."""
    lifted = lift(ps)
    report = plane_census(lifted, check=True, jobs=jobs)
    pole = NORTH_POLE
    through = sum(1 for plane in report.ordinary_planes
                  if dot4(plane.coords, pole.coords).is_zero())
    total = report.ordinary_count
    return LiftCounts(total - through, through, total)


def adapt_pencil_to_pole(pencil: Pencil, pole: ProjPoint):
    """A change of basis sending the pole to (0, 0, 0, 1).

    The pole's canonical leading coordinate is 1, so the three standard
    vectors at the other positions complete it to a basis.  Returns a
    QForm transformer and the column matrix of the new basis.
    """
    lead = next(i for i in range(4) if not pole.coords[i].is_zero())
    cols = []
    for i in range(4):
        if i != lead:
            e = [Scalar.zero()] * 4
            e[i] = Scalar.one()
            cols.append(e)
    cols.append(list(pole.coords))
    matrix = _columns_matrix(cols)
    lin = [HPoly.linear([matrix[r][c] for c in range(4)]) for r in range(4)]

    def transform(q: QForm) -> QForm:
        out = HPoly(4, 2, {})
        for exp, coeff in q.poly.terms.items():
            idx = [i for i, e in enumerate(exp) for _ in range(e)]
            out = out + (lin[idx[0]] * lin[idx[1]]).scale(coeff)
        return QForm(out)

    return transform, matrix


def _columns_matrix(cols):
    return [[cols[j][i] for j in range(len(cols))] for i in range(4)]


def quartic_from_pencil(pencil: Pencil, pole: ProjPoint = NORTH_POLE) -> HPoly:
    """The ternary quartic cutting out the planar image of the base locus.

    With psi = phi(x1,x2,x3) + x4*alpha and psi' = phi' + x4*alpha' +
    gamma*x4^2 in a basis where the pole is (0,0,0,1), the quartic is
    alpha^2 phi' - alpha alpha' phi + phi^2 gamma, congruent to
    alpha^2 psi' modulo psi.
    """
    transform, _ = adapt_pencil_to_pole(pencil, pole)
    psi = transform(pencil.psi1)
    psi_prime = transform(pencil.psi2)
    if not psi(ProjPoint(0, 0, 0, 1)).is_zero():
        if psi_prime(ProjPoint(0, 0, 0, 1)).is_zero():
            psi, psi_prime = psi_prime, psi
        else:
            raise PencilDegenerateAtPoleError("no pencil form vanishes at the pole")
    phi, alpha, gamma = _split_at_pole(psi)
    if not gamma.is_zero():
        raise PencilDegenerateAtPoleError("sphere form has an x4^2 term")
    if alpha.is_zero():
        raise PencilDegenerateAtPoleError("sphere form has no linear part at the pole")
    phi_p, alpha_p, gamma_p = _split_at_pole(psi_prime)
    quartic = alpha * alpha * phi_p - alpha * alpha_p * phi
    if gamma_p:
        quartic = quartic + (phi * phi).scale(gamma_p)
    return quartic


def _split_at_pole(q: QForm):
    """q = phi(x1..x3) + x4 * alpha(x1..x3) + gamma x4^2."""
    phi_terms = {}
    alpha_coeffs = [Scalar.zero()] * 3
    gamma = Scalar.zero()
    for exp, c in q.poly.terms.items():
        if exp[3] == 0:
            phi_terms[exp[:3]] = c
        elif exp[3] == 1:
            i = next(i for i in range(3) if exp[i])
            alpha_coeffs[i] = c
        else:
            gamma = c
    phi = HPoly(3, 2, phi_terms)
    alpha = HPoly.linear(alpha_coeffs)
    return phi, alpha, gamma


def planar_image_from_pole(point: ProjPoint, pencil: Pencil,
                           pole: ProjPoint = NORTH_POLE):
    """Coordinates (y1, y2, y3) of a non-pole point in the adapted basis."""
    _, matrix = adapt_pencil_to_pole(pencil, pole)
    inv = matrix_inverse(matrix)
    y = [sum((inv[i][j] * point.coords[j] for j in range(4)), Scalar.zero())
         for i in range(4)]
    return tuple(y[:3])
