"""Homogeneous polynomial algebra: pencils of quadrics, polarization,
interpolation spaces and the associated-points verifiers.

Polarization follows the normalization b(X, Y) = psi(X+Y) - psi(X) - psi(Y),
so b(x, x) = 2 psi(x) and the polar matrix of x^T M x is M + M^T; nothing
is ever divided by two, which keeps coefficients integral whenever the
inputs are.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .cyclotomic import Scalar
from .errors import (CoincidentIntersectionPointsError,
                     DegenerateConfigurationError, DependentFormsError,
                     EqualOrDegenerateKernelsError, PointNotOnBaseLocusError,
                     SingularPointError)
from .linalg import left_nullspace, nullspace, rank, solve
from .projective import (ProjLine, ProjPlane, ProjPoint, intersect_three_planes,
                         matrix_inverse)
from .univariate import UPoly, count_real_roots, rational_roots


def monomials(k: int, d: int):
    """Exponent tuples of the degree-d monomials in k variables.

    Lexicographically descending, so X1^d comes first; this is the column
    order of every Veronese matrix and the serialization order.
    """
    exps = set()
    for combo in combinations_with_replacement(range(k), d):
        e = [0] * k
        for i in combo:
            e[i] += 1
        exps.add(tuple(e))
    return sorted(exps, reverse=True)


class HPoly:
    """A homogeneous polynomial of degree d in k variables."""

    __slots__ = ("k", "d", "terms")

    def __init__(self, k: int, d: int, terms=None):
        self.k = k
        self.d = d
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != k or sum(exp) != d or any(e < 0 for e in exp):
                raise ValueError(f"exponent {exp} is not degree {d} in {k} variables")
            c = Scalar.coerce(c)
            if c:
                clean[exp] = c
        self.terms = clean

    @classmethod
    def linear(cls, coeffs) -> "HPoly":
        coeffs = list(coeffs)
        k = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(k, 1, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, HPoly) and self.k == other.k
                and self.d == other.d and self.terms == other.terms)

    def __add__(self, other):
        if self.k != other.k or self.d != other.d:
            raise ValueError("mismatched polynomial spaces")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Scalar.zero()) + c
        return HPoly(self.k, self.d, terms)

    def __sub__(self, other):
        return self + other.scale(Scalar.from_rational(-1))

    def __neg__(self):
        return self.scale(Scalar.from_rational(-1))

    def scale(self, c) -> "HPoly":
        c = Scalar.coerce(c)
        return HPoly(self.k, self.d, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other: "HPoly") -> "HPoly":
        if self.k != other.k:
            raise ValueError("mismatched variable counts")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                terms[e] = terms.get(e, Scalar.zero()) + prod
        return HPoly(self.k, self.d + other.d, terms)

    def __call__(self, point) -> Scalar:
        coords = _coords(point, self.k)
        total = Scalar.zero()
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(coords, exp):
                for _ in range(e):
                    v = v * x
            total = total + v
        return total

    def partial(self, i: int) -> "HPoly":
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = terms.get(tuple(e), Scalar.zero()) + c * exp[i]
        return HPoly(self.k, self.d - 1, terms)

    def restrict_line(self, base, direction) -> UPoly:
        """The univariate polynomial t -> self(base + t*direction)."""
        base = _coords(base, self.k)
        direction = _coords(direction, self.k)
        result = UPoly([])
        for exp, c in self.terms.items():
            factor = UPoly([c])
            for x, v, e in zip(base, direction, exp):
                binom = UPoly([x, v])
                for _ in range(e):
                    factor = factor * binom
            result = result + factor
        return result

    def coeff_vector(self):
        return [self.terms.get(e, Scalar.zero()) for e in monomials(self.k, self.d)]

    @classmethod
    def from_coeff_vector(cls, k: int, d: int, vector) -> "HPoly":
        return cls(k, d, dict(zip(monomials(k, d), vector)))

    def to_json(self):
        return {"k": self.k, "d": self.d,
                "terms": [[list(e), self.terms[e].to_json()]
                          for e in sorted(self.terms, reverse=True)]}

    @classmethod
    def from_json(cls, data) -> "HPoly":
        terms = {tuple(e): Scalar.from_json(c) for e, c in data["terms"]}
        return cls(int(data["k"]), int(data["d"]), terms)

    def __repr__(self):
        if not self.terms:
            return f"HPoly(k={self.k}, d={self.d}, 0)"
        bits = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"X{i+1}^{p}" if p > 1 else f"X{i+1}"
                            for i, p in enumerate(e) if p)
            bits.append(f"({self.terms[e]!r})*{mono}")
        return " + ".join(bits)


def _coords(point, k: int):
    if isinstance(point, ProjPoint):
        coords = point.coords
    elif isinstance(point, ProjPlane):
        coords = point.coords
    else:
        coords = tuple(Scalar.coerce(c) for c in point)
    if len(coords) != k:
        raise ValueError(f"expected {k} coordinates, got {len(coords)}")
    return coords


class QForm:
    """A quadratic form in four variables.

    Convertible between the polynomial view and the symmetric matrix M
    with psi(x) = x^T M x; the polar matrix B = M + M^T stays integral.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: HPoly):
        if poly.k != 4 or poly.d != 2:
            raise ValueError("QForm requires k=4, d=2")
        self.poly = poly

    @classmethod
    def from_terms(cls, terms) -> "QForm":
        return cls(HPoly(4, 2, terms))

    @classmethod
    def from_symmetric_matrix(cls, matrix) -> "QForm":
        terms = {}
        for i in range(4):
            for j in range(i, 4):
                e = [0] * 4
                e[i] += 1
                e[j] += 1
                c = Scalar.coerce(matrix[i][j])
                if i != j:
                    c = c + Scalar.coerce(matrix[j][i])
                terms[tuple(e)] = c
        return cls(HPoly(4, 2, terms))

    def symmetric_matrix(self):
        half = Scalar.from_rational(1) / 2
        b = self.polar_matrix()
        return [[b[i][j] * half for j in range(4)] for i in range(4)]

    def polar_matrix(self):
        """B with b(x, y) = x^T B y and b(x, x) = 2 psi(x)."""
        b = [[Scalar.zero() for _ in range(4)] for _ in range(4)]
        for exp, c in self.poly.terms.items():
            idx = [i for i, e in enumerate(exp) for _ in range(e)]
            i, j = idx
            if i == j:
                b[i][i] = b[i][i] + c + c
            else:
                b[i][j] = b[i][j] + c
                b[j][i] = b[j][i] + c
        return b

    def __call__(self, point) -> Scalar:
        return self.poly(point)

    def __eq__(self, other):
        return isinstance(other, QForm) and self.poly == other.poly

    def coeff_vector(self):
        return self.poly.coeff_vector()

    def __repr__(self):
        return f"QForm({self.poly!r})"


class BilinearForm:
    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = [[Scalar.coerce(x) for x in row] for row in matrix]

    def __call__(self, x, y) -> Scalar:
        xc = _coords(x, 4)
        yc = _coords(y, 4)
        total = Scalar.zero()
        for i in range(4):
            if xc[i]:
                row = self.matrix[i]
                for j in range(4):
                    if yc[j] and row[j]:
                        total = total + xc[i] * row[j] * yc[j]
        return total

    def apply(self, x):
        """The linear form b(x, .) as an HPoly of degree 1."""
        xc = _coords(x, 4)
        coeffs = []
        for j in range(4):
            c = Scalar.zero()
            for i in range(4):
                c = c + xc[i] * self.matrix[i][j]
            coeffs.append(c)
        return HPoly.linear(coeffs)

    def radical(self):
        return nullspace([list(row) for row in self.matrix])


def polarize(psi: QForm) -> BilinearForm:
    """b(X, Y) = psi(X+Y) - psi(X) - psi(Y)."""
    return BilinearForm(psi.polar_matrix())


class Pencil:
    """Two linearly independent quadratic forms."""

    __slots__ = ("psi1", "psi2", "b1", "b2")

    def __init__(self, psi1: QForm, psi2: QForm):
        if rank([psi1.coeff_vector(), psi2.coeff_vector()]) != 2:
            raise DependentFormsError("pencil forms are linearly dependent")
        self.psi1 = psi1
        self.psi2 = psi2
        self.b1 = polarize(psi1)
        self.b2 = polarize(psi2)

    def on_base_locus(self, p) -> bool:
        return self.psi1(p).is_zero() and self.psi2(p).is_zero()

    def require_base_point(self, p):
        if not self.on_base_locus(p):
            raise PointNotOnBaseLocusError(f"{p!r} is not on the base locus")


def phi_p(pencil: Pencil, p) -> HPoly:
    """The cubic b1(p, X) psi2(X) - b2(p, X) psi1(X); a cone with vertex p."""
    pencil.require_base_point(p)
    return pencil.b1.apply(p) * pencil.psi2.poly - pencil.b2.apply(p) * pencil.psi1.poly


def verify_cone(pencil: Pencil, q, y) -> bool:
    """Whether the line through q and y lies inside V(phi_q).

    Expands phi_q(y + t q) symbolically and requires the zero polynomial.
    """
    pencil.require_base_point(q)
    cubic = phi_p(pencil, q)
    if not cubic(y).is_zero():
        raise ValueError("y is not on V(phi_q)")
    return cubic.restrict_line(y, q).is_zero()


def tangent_plane(f: HPoly, p) -> ProjPlane:
    """The plane sum_i df/dX_i(p) X_i of the surface V(f) at p."""
    if not f(p).is_zero():
        raise ValueError("point is not on the surface")
    grads = [f.partial(i)(p) for i in range(f.k)]
    if not any(grads):
        raise SingularPointError(f"zero gradient at {p!r}")
    return ProjPlane(*grads)


def line_ell_p(pencil: Pencil, p) -> ProjLine:
    """ker b1(p, X) intersected with ker b2(p, X)."""
    pencil.require_base_point(p)
    k1 = pencil.b1.apply(p).coeff_vector()
    k2 = pencil.b2.apply(p).coeff_vector()
    if not any(k1) or not any(k2):
        raise EqualOrDegenerateKernelsError("a polar kernel is the whole space")
    if rank([k1, k2]) != 2:
        raise EqualOrDegenerateKernelsError("the two polar kernels coincide")
    return ProjLine.from_planes(ProjPlane(*k1), ProjPlane(*k2))


def phi_pq(pencil: Pencil, p, q) -> QForm:
    """b1(p, X) b2(q, X) - b1(q, X) b2(p, X)."""
    pencil.require_base_point(p)
    pencil.require_base_point(q)
    poly = (pencil.b1.apply(p) * pencil.b2.apply(q)
            - pencil.b1.apply(q) * pencil.b2.apply(p))
    if poly.is_zero():
        return QForm(HPoly(4, 2, {}))
    return QForm(poly)


def radical_analysis(psi: QForm):
    """Basis of the radical (null space of the polar matrix)."""
    return polarize(psi).radical()


@dataclass
class DegeneracyReport:
    det_poly: UPoly
    identically_zero: bool
    rational_roots: list
    real_root_count: int | None

    @property
    def degenerate_member_count(self):
        """Distinct real degenerate members psi1 + t psi2 (None if all are)."""
        return None if self.identically_zero else self.real_root_count


def pencil_degenerate_members(pencil: Pencil) -> DegeneracyReport:
    """Degenerate members psi1 + t psi2, found as real roots of det(M1 + t M2).

    Rational roots are listed exactly; irrational real roots are only
    counted, through an exact Sturm chain, since the cyclotomic field need
    not contain them.
    """
    m1 = pencil.psi1.polar_matrix()
    m2 = pencil.psi2.polar_matrix()
    entries = [[UPoly([m1[i][j], m2[i][j]]) for j in range(4)] for i in range(4)]
    det = _upoly_det4(entries)
    if det.is_zero():
        return DegeneracyReport(det, True, [], None)
    roots = rational_roots(det) if det.is_rational() else []
    return DegeneracyReport(det, False, roots, count_real_roots(det))


def _upoly_det4(m):
    def det2(a, b, c, d):
        return a * d - b * c

    def det3(rows):
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * det2(e, f, h, i) - b * det2(d, f, g, i) + c * det2(d, e, g, h)

    total = UPoly([])
    sign = 1
    for k in range(4):
        minor = [[m[r][c] for c in range(4) if c != k] for r in (1, 2, 3)]
        term = m[0][k] * det3(minor)
        total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


@dataclass
class InterpolationSpace:
    k: int
    degree: int
    basis: list[HPoly]

    @property
    def dim(self) -> int:
        return len(self.basis)


def veronese_row(point, k: int, t: int):
    coords = _coords(point, k)
    row = []
    for exp in monomials(k, t):
        v = Scalar.one()
        for x, e in zip(coords, exp):
            for _ in range(e):
                v = v * x
        row.append(v)
    return row


def interpolation_space(points, k: int, t: int) -> InterpolationSpace:
    """I(T): all degree-t forms in k variables vanishing on the points."""
    rows = [veronese_row(p, k, t) for p in points]
    ncols = len(monomials(k, t))
    kernel = nullspace(rows, ncols=ncols)
    basis = [HPoly.from_coeff_vector(k, t, v) for v in kernel]
    return InterpolationSpace(k, t, basis)


# -- eight associated points ---------------------------------------------------

# Point order: index (i, j, k) over the three pairs, grouped by how many
# second planes are used, then by position -- the order of the pairwise
# intersecting normal form's affine box (0,0,0), (0,0,-a3), (0,-a2,0), ...
_EIGHT_ORDER = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0),
                (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1))


@dataclass
class EightPointsResult:
    points: tuple
    verified: bool
    kernel_vector: tuple | None
    case: str  # "skew" or "meeting"
    subset_ranks: tuple


def _pair_line_meet(pair_a, pair_b):
    basis = nullspace([list(pair_a[0].coords), list(pair_a[1].coords),
                       list(pair_b[0].coords), list(pair_b[1].coords)],
                      ncols=4)
    if len(basis) == 0:
        return None  # skew
    if len(basis) == 1:
        return ProjPoint(*basis[0])
    raise DegenerateConfigurationError("pencil lines coincide")


def eight_associated_points(pairs) -> EightPointsResult:
    """Intersect three plane pairs and verify the seven-gives-eight property.

    For every 7-subset the Veronese rank must be 7, so dim I = 3 and every
    quadric through seven of the points passes through the eighth.  The
    kernel of the row space is one-dimensional exactly when that holds; in
    the pairwise-meeting case it is computed in the box normal form, where
    it equals the alternating pattern (-1,1,1,1,-1,-1,-1,1) up to scale.
    """
    pairs = [tuple(p) for p in pairs]
    if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
        raise ValueError("three pairs of planes required")
    points = []
    for (i, j, k) in _EIGHT_ORDER:
        pt = intersect_three_planes(pairs[0][i], pairs[1][j], pairs[2][k])
        if pt is None:
            raise DegenerateConfigurationError(
                f"planes ({i}, {j}, {k}) do not meet in a point")
        points.append(pt)
    if len(set(points)) != 8:
        raise CoincidentIntersectionPointsError("intersection points coincide")

    meets = [_pair_line_meet(pairs[a], pairs[b]) for a, b in ((0, 1), (0, 2), (1, 2))]
    case = "meeting" if all(m is not None for m in meets) else "skew"

    reps = [list(p.coords) for p in points]
    if case == "meeting":
        normalized = _box_normal_reps(pairs, meets, points)
        if normalized is not None:
            reps = normalized

    rows = [veronese_row(rep, 4, 2) for rep in reps]
    kernel = left_nullspace(rows)
    kernel_vector = None
    if len(kernel) == 1:
        lead = next(c for c in kernel[0] if c)
        inv = lead.inverse()
        kernel_vector = tuple(c * inv for c in kernel[0])

    subset_ranks = []
    verified = True
    for drop in range(8):
        sub = [rows[i] for i in range(8) if i != drop]
        space = nullspace(sub, ncols=10)
        r = 10 - len(space)
        subset_ranks.append(r)
        if r != 7 or len(space) != 3:
            verified = False
            continue
        vec = rows[drop]
        for basis_vec in space:
            value = sum((c * v for c, v in zip(basis_vec, vec)), Scalar.zero())
            if not value.is_zero():
                verified = False
    return EightPointsResult(tuple(points), verified, kernel_vector, case,
                             tuple(subset_ranks))


def _box_normal_reps(pairs, meets, points):
    """Affine representatives after moving to the appendix box basis."""
    corner = intersect_three_planes(pairs[0][0], pairs[1][0], pairs[2][0])
    if corner is None:
        return None
    x12, x13, x23 = meets
    columns = [x23.coords, x13.coords, x12.coords, corner.coords]
    matrix = [[columns[j][i] for j in range(4)] for i in range(4)]
    try:
        inv = matrix_inverse(matrix)
    except ValueError:
        return None
    reps = []
    for p in points:
        y = [sum((inv[i][j] * p.coords[j] for j in range(4)), Scalar.zero())
             for i in range(4)]
        if y[3].is_zero():
            return None
        scale = y[3].inverse()
        reps.append([c * scale for c in y])
    return reps


# -- Chasles in the plane ------------------------------------------------------

def nine_grid_points(lines_a, lines_b):
    """The nine intersections of two triples of plane lines, row-major."""
    points = []
    for la in lines_a:
        for lb in lines_b:
            a = [Scalar.coerce(c) for c in la]
            b = [Scalar.coerce(c) for c in lb]
            cross = (a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0])
            if not any(cross):
                raise DegenerateConfigurationError("coincident lines")
            points.append(cross)
    return points


def chasles_nine(points) -> bool:
    """Any cubic through eight of the nine points contains the ninth."""
    pts = [_coords(p, 3) for p in points]
    if len(pts) != 9:
        raise ValueError("nine points required")
    keys = set()
    for p in pts:
        lead = next(c for c in p if c)
        inv = lead.inverse()
        keys.add(tuple((v * inv).canonical_key() for v in p))
    if len(keys) != 9:
        raise CoincidentIntersectionPointsError("grid points coincide")
    rows = [veronese_row(p, 3, 3) for p in pts]
    for drop in range(9):
        sub = [rows[i] for i in range(9) if i != drop]
        space = nullspace(sub, ncols=10)
        if 10 - len(space) != 8:
            return False
        for basis_vec in space:
            value = sum((c * v for c, v in zip(basis_vec, rows[drop])), Scalar.zero())
            if not value.is_zero():
                return False
    return True
