"""Exact enumeration of spanned planes and their incidence multiplicities.

A plane is spanned when it contains at least three points of the set;
ordinary planes are those incident with exactly three.  Deduplication is
by canonical plane key in a hash map (O(n^3) insertions), and incidence
multiplicities come from a second pass over the deduplicated planes so
that planes with four or more points are never over-counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import NotCoplanarError, ValidationFailure
from .generators import ANTI_PRISM, PRISM, PointSet
from .parallel import pmap
from .projective import ProjLine, ProjPlane, dot4, plane_through
from .linalg import nullspace, rank


@dataclass
class ValidationReport:
    no3collinear: bool
    collinear_witness: tuple | None
    coplanar_all: bool
    coplanar_witness: ProjPlane | None

    @property
    def ok(self) -> bool:
        return self.no3collinear and not self.coplanar_all

    def describe(self) -> str:
        if not self.no3collinear:
            return f"three collinear points {self.collinear_witness}"
        if self.coplanar_all:
            return "all points coplanar"
        return "valid"


@dataclass
class CensusReport:
    n: int
    tau: dict[int, int]
    ordinary_planes: list[ProjPlane]
    per_point_ordinary: list[int]
    K_empirical: Fraction
    plane_incidences: list[tuple[ProjPlane, tuple[int, ...]]] = field(repr=False, default_factory=list)

    @property
    def ordinary_count(self) -> int:
        return self.tau.get(3, 0)

    def tau_sorted(self):
        return sorted(self.tau.items())

    def triple_identity_residual(self) -> int:
        """sum_i C(i,3) tau_i - C(n,3); zero when no 3 points are collinear."""
        return sum(comb(i, 3) * t for i, t in self.tau.items()) - comb(self.n, 3)


def validate(ps: PointSet) -> ValidationReport:
    """Exact no-3-collinear and not-all-coplanar checks with witnesses."""
    points = ps.points
    n = len(points)
    lines: dict[tuple, list[int]] = {}
    collinear = None
    for i, j in combinations(range(n), 2):
        key = ProjLine(points[i], points[j]).plucker()
        key = tuple((c.order, c.num, c.den) for c in key)
        members = lines.setdefault(key, [])
        for m in members:
            if m != i and m != j:
                collinear = tuple(sorted({m, i, j}))[:3]
                break
        if collinear:
            break
        members.extend(k for k in (i, j) if k not in members)
    coplanar = False
    witness_plane = None
    if n >= 1 and collinear is None:
        basis = nullspace([list(p.coords) for p in points])
        if basis:
            coplanar = True
            witness_plane = ProjPlane(*basis[0])
    return ValidationReport(collinear is None, collinear, coplanar, witness_plane)


def _census_chunk(args):
    points, start, stop = args
    found = {}
    for idx, (i, j, k) in enumerate(combinations(range(len(points)), 3)):
        if idx < start:
            continue
        if idx >= stop:
            break
        plane = plane_through(points[i], points[j], points[k])
        found.setdefault(plane.key(), plane)
    return found


def plane_census(ps: PointSet, check: bool = True, jobs: int = 1) -> CensusReport:
    """Count every spanned plane with its exact incidence multiplicity."""
    if check:
        report = validate(ps)
        if not report.ok:
            raise ValidationFailure(report)
    points = ps.points
    n = len(points)
    total = comb(n, 3)
    chunks = max(1, min(jobs * 4, total)) if jobs > 1 else 1
    bounds = [(points, t * total // chunks, (t + 1) * total // chunks)
              for t in range(chunks)]
    planes: dict = {}
    for part in pmap(_census_chunk, bounds, jobs):
        planes.update(part)

    tau: dict[int, int] = {}
    ordinary = []
    per_point = [0] * n
    incidences = []
    for key in sorted(planes):
        plane = planes[key]
        incident = tuple(i for i, p in enumerate(points)
                         if dot4(plane.coords, p.coords).is_zero())
        count = len(incident)
        tau[count] = tau.get(count, 0) + 1
        incidences.append((plane, incident))
        if count == 3:
            ordinary.append(plane)
            for i in incident:
                per_point[i] += 1
    k_emp = Fraction(tau.get(3, 0), n * n)
    return CensusReport(n, tau, ordinary, per_point, k_emp, incidences)


def predicted_extremal_count(kind: str, m: int) -> int:
    """The closed-form ordinary-plane count of a prism or anti-prism, n = 2m."""
    if m < 3:
        raise ValueError("m must be at least 3")
    if kind == PRISM:
        return m * (m - 1) if m % 2 else m * m - 2 * m
    if kind == ANTI_PRISM:
        return m * (m - 1) if m % 2 else m * m
    raise ValueError(f"unknown kind {kind!r}")


def ordinary_lines_2d(ps: PointSet) -> int:
    """Number of lines meeting exactly two points of a coplanar set."""
    points = ps.points
    if rank([list(p.coords) for p in points]) > 3:
        raise NotCoplanarError("points are not coplanar")
    lines: dict[tuple, set[int]] = {}
    for i, j in combinations(range(len(points)), 2):
        key = ProjLine(points[i], points[j]).plucker()
        key = tuple((c.order, c.num, c.den) for c in key)
        lines.setdefault(key, set()).update((i, j))
    return sum(1 for members in lines.values() if len(members) == 2)
