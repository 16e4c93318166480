"""Construction of the named point configurations.

The prism places a regular m-gon in the plane X3 = 0 and a translated
copy in X4 = 0, in perspective from the point (a, b, -1, 1); the
anti-prism offsets the second polygon by half a step.  Coordinates are
exact: the m-gon vertices live in Q(zeta_lcm(4, m)) and the half-step
variants in Q(zeta_lcm(4, 2m)).

Generators never validate collinearity or coplanarity; that is the
census's job, which keeps every constructor total.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Scalar, cos2pi, sin2pi
from .errors import DuplicatePointError, GenerationError
from .projective import ProjPoint, apply_matrix, matrix_inverse

PRISM = "prism"
ANTI_PRISM = "antiprism"


@dataclass(frozen=True)
class ExtremalSpec:
    kind: str  # PRISM or ANTI_PRISM
    m: int
    apex: tuple = (0, 0)
    removed: int | None = None

    def __post_init__(self):
        if self.kind not in (PRISM, ANTI_PRISM):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.m < 3:
            raise ValueError("m must be at least 3")


class PointSet:
    """An ordered list of distinct projective points over a common field."""

    __slots__ = ("points", "field_order", "labels")

    def __init__(self, points, field_order=None, labels=None):
        points = list(points)
        if field_order is None:
            field_order = 1
            for p in points:
                for c in p.coords:
                    field_order = _lcm(field_order, c.order)
        normalized = []
        for p in points:
            coords = tuple(c.promote(field_order) if c.order != field_order else c
                           for c in p.coords)
            normalized.append(ProjPoint(*coords))
        if len(set(normalized)) != len(normalized):
            raise DuplicatePointError("point set contains a repeated point")
        self.points = tuple(normalized)
        self.field_order = field_order
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(self.points):
                raise ValueError("one label per point required")
        self.labels = labels

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.points == other.points

    def remove_index(self, index: int) -> "PointSet":
        pts = [p for i, p in enumerate(self.points) if i != index]
        labels = None
        if self.labels is not None:
            labels = [l for i, l in enumerate(self.labels) if i != index]
        return PointSet(pts, self.field_order, labels)

    def __repr__(self):
        return f"PointSet(n={len(self.points)}, N={self.field_order})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _apex_scalars(apex):
    a, b = (Scalar.coerce(v) for v in apex)
    return a, b


def make_prism(spec: ExtremalSpec) -> PointSet:
    """Points p_i on the m-gon in X3=0 and q_k on its translate in X4=0."""
    if spec.kind != PRISM:
        raise ValueError("spec.kind must be prism")
    m = spec.m
    a, b = _apex_scalars(spec.apex)
    order = _lcm(_lcm(4, m), _lcm(a.order, b.order))
    points, labels = [], []
    for i in range(m):
        points.append(ProjPoint(cos2pi(i, m), sin2pi(i, m), Scalar.zero(), Scalar.one()))
        labels.append(f"p_{i}")
    for k in range(m):
        points.append(ProjPoint(cos2pi(k, m) - a, sin2pi(k, m) - b,
                                Scalar.one(), Scalar.zero()))
        labels.append(f"q_{k}")
    ps = PointSet(points, order, labels)
    if spec.removed is not None:
        ps = ps.remove_index(spec.removed)
    return ps


def make_anti_prism(spec: ExtremalSpec) -> PointSet:
    """Points p_i as in the prism and r_k offset by half a step in X4=0."""
    if spec.kind != ANTI_PRISM:
        raise ValueError("spec.kind must be antiprism")
    m = spec.m
    a, b = _apex_scalars(spec.apex)
    order = _lcm(_lcm(4, 2 * m), _lcm(a.order, b.order))
    points, labels = [], []
    for i in range(m):
        points.append(ProjPoint(cos2pi(i, m), sin2pi(i, m), Scalar.zero(), Scalar.one()))
        labels.append(f"p_{i}")
    for k in range(m):
        points.append(ProjPoint(cos2pi(2 * k + 1, 2 * m) - a,
                                sin2pi(2 * k + 1, 2 * m) - b,
                                Scalar.one(), Scalar.zero()))
        labels.append(f"r_{k}")
    ps = PointSet(points, order, labels)
    if spec.removed is not None:
        ps = ps.remove_index(spec.removed)
    return ps


def make_extremal(spec: ExtremalSpec) -> PointSet:
    return make_prism(spec) if spec.kind == PRISM else make_anti_prism(spec)


def prism_apex_point(spec: ExtremalSpec) -> ProjPoint:
    """The perspective point (a, b, -1, 1) of the prism."""
    a, b = _apex_scalars(spec.apex)
    return ProjPoint(a, b, Scalar.from_rational(-1), Scalar.one())


def boroczky_planar(m: int) -> PointSet:
    """The m-gon together with its m bisecant directions, inside X3 = 0.

    The direction s_theta = (sin(pi*theta/m), cos(pi*theta/m), 0, 0) is
    where every bisecant with index sum -theta (mod m) meets X4 = 0.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    points, labels = [], []
    for i in range(m):
        points.append(ProjPoint(cos2pi(i, m), sin2pi(i, m), Scalar.zero(), Scalar.one()))
        labels.append(f"p_{i}")
    for theta in range(m):
        points.append(ProjPoint(sin2pi(theta, 2 * m), cos2pi(theta, 2 * m),
                                Scalar.zero(), Scalar.zero()))
        labels.append(f"s_{theta}")
    return PointSet(points, _lcm(4, 2 * m), labels)


def random_set(n: int, seed: int, bound: int = 100) -> PointSet:
    """n distinct rational affine points, reproducible in the seed."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    seen = set()
    points = []
    attempts = 0
    while len(points) < n:
        attempts += 1
        if attempts > 60 * n + 100:
            raise GenerationError(f"could not find {n} distinct points with bound {bound}")
        coords = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                       for _ in range(3))
        if coords in seen:
            continue
        seen.add(coords)
        points.append(ProjPoint(*(Scalar.from_rational(c) for c in coords),
                                Scalar.one()))
    return PointSet(points, 1)


def random_projectivity(seed: int, bound: int = 5):
    """A random invertible rational 4x4 matrix, as rows of Fractions."""
    rng = random.Random(seed)
    while True:
        matrix = [[Fraction(rng.randint(-bound, bound)) for _ in range(4)]
                  for _ in range(4)]
        try:
            matrix_inverse(matrix)
        except ValueError:
            continue
        return matrix


def apply_projectivity(ps: PointSet, matrix) -> PointSet:
    matrix_inverse(matrix)  # raises on a singular matrix
    points = [apply_matrix(matrix, p) for p in ps.points]
    return PointSet(points, ps.field_order, ps.labels)
