"""The dual plane-arrangement graph Gamma.

Each point of S dualises to a plane; any three of those planes meet in a
point because any three points of S span a plane.  Gamma has those triple
intersections as vertices, the arcs they cut on the pairwise intersection
lines as edges, and the 2-cells inside the dual planes as faces.

Faces are computed without floating point: a projective face of the line
arrangement inside one dual plane is an antipodal pair of sign vectors,
so sampling an exact interior point of each edge and reading the signs of
all dual planes at it (plus an infinitesimal side perturbation) names the
two adjacent faces in that plane.  An edge lies in exactly two dual
planes -- a third would force three collinear points of S -- so it is on
exactly four faces overall.

Edge quality follows the census of triangles: an edge is good when all
four of its faces are triangles and both endpoints lie on exactly four
dual planes (degree 12); rather good when additionally every edge at its
endpoints is good.  Bad and slightly bad are the complements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations

from .cyclotomic import Scalar
from .errors import (ArrangementError, CapExceededError, NotRatherGoodError,
                     StructureViolation, ValidationFailure)
from .generators import PointSet
from .linalg import rref
from .parallel import pmap
from .projective import ProjPoint, det4, dot4, plane_through
from .census import validate

DEFAULT_MAX_N = 24


@dataclass
class DualVertex:
    index: int
    location: ProjPoint
    planes: tuple[int, ...]  # primal point indices whose dual planes pass through

    @property
    def degree(self) -> int:
        i = len(self.planes)
        return i * (i - 1)


@dataclass
class DualEdge:
    index: int
    line: tuple[int, int]
    v1: int
    v2: int
    rep: tuple  # an exact interior point of the edge, as a 4-vector
    faces: list = field(default_factory=list)  # four (plane, face_key) ids
    triangle_count: int = 0
    good: bool = False
    rather_good: bool = False

    @property
    def bad(self) -> bool:
        return not self.good

    @property
    def slightly_bad(self) -> bool:
        return not self.rather_good


@dataclass
class LineData:
    pair: tuple[int, int]
    vertex_ids: list[int]   # cyclic order along the projective line
    edge_ids: list[int]     # edge i joins vertex i to vertex i+1 (cyclic)


@dataclass
class DoubleDiamond:
    edge: int
    roles: dict[str, int]   # "p_-1", "p_0", ..., "s_1" -> primal point index

    @property
    def point_indices(self) -> tuple[int, ...]:
        return tuple(self.roles[name] for name in
                     ("p_-1", "p_0", "p_1", "q_-1", "q_0", "q_1",
                      "r_-1", "r_0", "s_0", "s_1"))


@dataclass
class Gamma:
    points: PointSet
    vertices: list[DualVertex]
    edges: list[DualEdge]
    lines: dict[tuple[int, int], LineData]
    face_degrees: dict  # (plane index, sign key) -> number of boundary edges
    face_members: dict  # (plane index, sign key) -> list of (edge id, side)
    vertex_edges: dict[int, list[int]]
    classified: bool = False

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.face_degrees)

    def v_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.vertices:
            i = len(v.planes)
            out[i] = out.get(i, 0) + 1
        return out

    def f_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.face_degrees.values():
            out[d] = out.get(d, 0) + 1
        return out

    def edge_class_counts(self) -> dict[str, int]:
        return {
            "good": sum(1 for e in self.edges if e.good),
            "bad": sum(1 for e in self.edges if e.bad),
            "rather_good": sum(1 for e in self.edges if e.rather_good),
            "slightly_bad": sum(1 for e in self.edges if e.slightly_bad),
        }


def _vertex_chunk(args):
    coords, start, stop = args
    points = [ProjPoint(*c) for c in coords]
    found = {}
    for idx, (i, j, k) in enumerate(combinations(range(len(points)), 3)):
        if idx < start:
            continue
        if idx >= stop:
            break
        plane = plane_through(points[i], points[j], points[k])
        v = ProjPoint(*plane.coords)
        found.setdefault(v.key(), v)
    return found


def _edge_sign_chunk(args):
    coords, jobs_payload = args
    out = []
    for rep, p, q in jobs_payload:
        signs = {}
        for r, c in enumerate(coords):
            if r == p or r == q:
                continue
            signs[r] = dot4(c, rep).sign()
        out.append(signs)
    return out


def build_gamma(ps: PointSet, check: bool = True, jobs: int = 1,
                max_n: int = DEFAULT_MAX_N) -> Gamma:
    """Construct Gamma(S): vertices, cyclic edges, faces, no classification."""
    n = len(ps)
    if n > max_n:
        raise CapExceededError(f"n={n} exceeds the dual-arrangement cap {max_n}")
    if check:
        report = validate(ps)
        if not report.ok:
            raise ValidationFailure(report)
    points = ps.points
    coords = [p.coords for p in points]

    # Vertices: distinct triple intersections of the dual planes.
    from math import comb
    total = comb(n, 3)
    chunks = max(1, min(jobs * 4, total)) if jobs > 1 else 1
    bounds = [(coords, t * total // chunks, (t + 1) * total // chunks)
              for t in range(chunks)]
    vert_map: dict = {}
    for part in pmap(_vertex_chunk, bounds, jobs):
        for key, v in part.items():
            vert_map.setdefault(key, v)

    vertices = []
    for key in sorted(vert_map):
        loc = vert_map[key]
        incident = tuple(i for i, c in enumerate(coords)
                         if dot4(c, loc.coords).is_zero())
        if len(incident) < 3:
            raise ArrangementError("vertex incident with fewer than 3 planes")
        vertices.append(DualVertex(len(vertices), loc, incident))

    # Vertices per dual line p* cap q*.
    line_vertices: dict[tuple[int, int], list[int]] = {}
    for v in vertices:
        for a, b in combinations(v.planes, 2):
            line_vertices.setdefault((a, b), []).append(v.index)

    lines: dict[tuple[int, int], LineData] = {}
    edges: list[DualEdge] = []
    for pair in sorted(line_vertices):
        p, q = pair
        vids = line_vertices[pair]
        if not vids:
            raise ArrangementError(f"dual line {pair} carries no vertex")
        basis, free = _line_basis(coords[p], coords[q])
        a_vec, b_vec = basis
        f_a, f_b = free
        finite = []
        infinite = None
        for vid in vids:
            loc = vertices[vid].location.coords
            alpha, beta = loc[f_a], loc[f_b]
            if alpha.is_zero():
                if infinite is not None:
                    raise ArrangementError("two vertices at the line's infinity")
                infinite = vid
            else:
                finite.append((beta * alpha.inverse(), vid))
        finite.sort(key=cmp_to_key(lambda x, y: (x[0] - y[0]).sign()))
        ordered = [vid for _, vid in finite] + ([infinite] if infinite is not None else [])
        ts = [t for t, _ in finite]

        edge_ids = []
        k = len(ordered)
        for i in range(k):
            j = (i + 1) % k
            rep = _edge_rep(a_vec, b_vec, ts, infinite is not None, i, k)
            e = DualEdge(len(edges), pair, ordered[i], ordered[j], rep)
            edges.append(e)
            edge_ids.append(e.index)
        lines[pair] = LineData(pair, ordered, edge_ids)

    # Base sign vectors for all edges, then face keys per carrier plane.
    payload = [(e.rep, e.line[0], e.line[1]) for e in edges]
    chunks = max(1, jobs * 4) if jobs > 1 else 1
    size = (len(payload) + chunks - 1) // chunks
    parts = [(coords, payload[i:i + size]) for i in range(0, len(payload), size)] or [(coords, [])]
    base_signs: list[dict] = []
    for part in pmap(_edge_sign_chunk, parts, jobs):
        base_signs.extend(part)

    side_sign_cache: dict[tuple[int, int], int] = {}
    face_degrees: dict = {}
    face_members: dict = {}
    for e, signs in zip(edges, base_signs):
        if any(s == 0 for s in signs.values()):
            raise ArrangementError(f"edge {e.index} representative lies on a third plane")
        p, q = e.line
        for plane, other in ((p, q), (q, p)):
            side_base = _side_sign(coords, plane, other, side_sign_cache)
            for side in (1, -1):
                key = _face_key(signs, other, side * side_base, plane, len(coords))
                fid = (plane, key)
                face_degrees[fid] = face_degrees.get(fid, 0) + 1
                face_members.setdefault(fid, []).append((e.index, side))
                e.faces.append(fid)
        if len(set(e.faces)) != 4:
            raise ArrangementError(f"edge {e.index} is not on four distinct faces")

    gamma = Gamma(ps, vertices, edges, lines, face_degrees, face_members,
                  _vertex_edge_map(vertices, lines, edges))
    _check_euler_per_plane(gamma)
    for e in edges:
        e.triangle_count = sum(1 for fid in e.faces if face_degrees[fid] == 3)
    return gamma


def _line_basis(pc, qc):
    reduced, pivots = rref([list(pc), list(qc)])
    if len(pivots) != 2:
        raise ArrangementError("coincident dual planes")
    free = [c for c in range(4) if c not in pivots]
    basis = []
    for f in free:
        v = [Scalar.zero()] * 4
        v[f] = Scalar.one()
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return basis, free


def _edge_rep(a_vec, b_vec, ts, has_infinity, i, k):
    """An interior point of edge i on a line with k cyclically ordered vertices."""
    nf = len(ts)
    if k == 1:
        t = (ts[0] + 1) if nf else Scalar.one()
        return tuple(a + t * b for a, b in zip(a_vec, b_vec))
    if has_infinity:
        if i < nf - 1:
            t = (ts[i] + ts[i + 1]) / 2
        elif i == nf - 1:
            t = ts[nf - 1] + 1       # between the largest t and infinity
        else:
            t = ts[0] - 1            # between infinity and the smallest t
        return tuple(a + t * b for a, b in zip(a_vec, b_vec))
    if i < nf - 1:
        t = (ts[i] + ts[i + 1]) / 2
        return tuple(a + t * b for a, b in zip(a_vec, b_vec))
    return tuple(b_vec)              # the wrap edge passes through t = infinity


def _side_sign(coords, plane, other, cache):
    """sign(<other, u>) for the canonical in-plane perturbation u."""
    key = (plane, other)
    if key not in cache:
        cache[key] = _compute_side_sign(coords, plane, other)
    return cache[key]


def _compute_side_sign(coords, plane, other):
    from .linalg import nullspace
    for u in nullspace([list(coords[plane])]):
        s = dot4(coords[other], u).sign()
        if s != 0:
            return s
    raise ArrangementError("dual planes coincide")


def _face_key(signs, other, side_value, plane, n):
    values = []
    for r in range(n):
        if r == plane:
            continue
        values.append(side_value if r == other else signs[r])
    if values[0] < 0:
        values = [-v for v in values]
    return tuple(values)


def _vertex_edge_map(vertices, lines, edges):
    out: dict[int, list[int]] = {v.index: [] for v in vertices}
    for line in lines.values():
        k = len(line.vertex_ids)
        for i, eid in enumerate(line.edge_ids):
            out[line.vertex_ids[i]].append(eid)
            out[line.vertex_ids[(i + 1) % k]].append(eid)
    for v in vertices:
        if len(out[v.index]) != v.degree:
            raise ArrangementError(
                f"vertex {v.index} on {len(out[v.index])} edge-ends, expected {v.degree}")
    return out


def _check_euler_per_plane(gamma: Gamma):
    n = gamma.n
    for p in range(n):
        v = sum(1 for vert in gamma.vertices if p in vert.planes)
        e = sum(len(line.edge_ids) for pair, line in gamma.lines.items() if p in pair)
        f = sum(1 for (plane, _key) in gamma.face_degrees if plane == p)
        if v - e + f != 1:
            raise ArrangementError(
                f"Euler relation fails in dual plane {p}: V={v} E={e} F={f}")


def verify_identities(gamma: Gamma):
    """Exact residuals of the four counting identities; all must be zero."""
    n = gamma.n
    v_counts = gamma.v_counts()
    f_counts = gamma.f_counts()
    e_total = gamma.num_edges
    f_total = gamma.num_faces
    eq0 = sum(i * c for i, c in v_counts.items()) - 2 * e_total + f_total - n
    eq1 = 4 * e_total - sum(j * c for j, c in f_counts.items())
    eq2 = 2 * e_total - sum(i * (i - 1) * c for i, c in v_counts.items())
    v3 = v_counts.get(3, 0)
    eq3 = (3 * v3 - 3 * n
           - sum(i * (i - 4) * c for i, c in v_counts.items() if i >= 5)
           - sum((j - 3) * c for j, c in f_counts.items() if j >= 4))
    return (eq0, eq1, eq2, eq3)


def classify_edges(gamma: Gamma) -> Gamma:
    """Fill the good / rather-good flags on every edge, in place."""
    for e in gamma.edges:
        d1 = gamma.vertices[e.v1].degree
        d2 = gamma.vertices[e.v2].degree
        e.good = e.triangle_count == 4 and d1 == 12 and d2 == 12
    for e in gamma.edges:
        neighbours = gamma.vertex_edges[e.v1] + gamma.vertex_edges[e.v2]
        e.rather_good = e.good and all(gamma.edges[i].good for i in neighbours)
    gamma.classified = True
    return gamma


def find_segments(gamma: Gamma, p: int, q: int):
    """Maximal cyclic runs of rather-good edges on the line p* cap q*."""
    if not gamma.classified:
        raise ValueError("classify_edges must run first")
    pair = (p, q) if p < q else (q, p)
    line = gamma.lines.get(pair)
    if line is None:
        return []
    eids = line.edge_ids
    flags = [gamma.edges[e].rather_good for e in eids]
    k = len(eids)
    if all(flags):
        return [list(eids)]
    if not any(flags):
        return []
    start = next(i for i in range(k) if not flags[i])
    segments = []
    current: list[int] = []
    for step in range(1, k + 1):
        i = (start + step) % k
        if flags[i]:
            current.append(eids[i])
        elif current:
            segments.append(current)
            current = []
    if current:
        segments.append(current)
    return segments


def segment_vertices(gamma: Gamma, segment):
    """Vertex ids along a segment of edges, in walk order."""
    if len(segment) == len(gamma.lines[gamma.edges[segment[0]].line].edge_ids):
        line = gamma.lines[gamma.edges[segment[0]].line]
        return list(line.vertex_ids)
    out = []
    for eid in segment:
        e = gamma.edges[eid]
        if not out:
            nxt = gamma.edges[segment[1]] if len(segment) > 1 else None
            if nxt is not None and e.v2 in (nxt.v1, nxt.v2):
                out = [e.v1, e.v2]
            elif nxt is not None:
                out = [e.v2, e.v1]
            else:
                out = [e.v1, e.v2]
        else:
            out.append(e.v2 if e.v1 == out[-1] else e.v1)
    return out


def extract_double_diamond(gamma: Gamma, edge_index: int) -> DoubleDiamond:
    """The ten labelled points of the tetra-grid around a rather good edge.

    Verifies the no-twisting pairing and every in-range index-sum-zero
    coplanarity exactly; any failure raises StructureViolation.
    """
    if not gamma.classified:
        raise ValueError("classify_edges must run first")
    e = gamma.edges[edge_index]
    if not e.rather_good:
        raise NotRatherGoodError(f"edge {edge_index} is not rather good")
    p, q = e.line
    u, v = sorted((e.v1, e.v2))
    u_planes = set(gamma.vertices[u].planes)
    v_planes = set(gamma.vertices[v].planes)
    u_extras = sorted(u_planes - {p, q})
    v_extras = sorted(v_planes - {p, q})
    if len(u_extras) != 2 or len(v_extras) != 2:
        raise StructureViolation("endpoint of a rather good edge not on 4 planes")

    pairings = {}
    thirds = {}
    for carrier in (p, q):
        pairs = set()
        for fid in e.faces:
            if fid[0] != carrier:
                continue
            members = gamma.face_members[fid]
            if len(members) != 3:
                raise StructureViolation("face of a good edge is not a triangle")
            vertex_ids = set()
            for eid, _side in members:
                vertex_ids.update((gamma.edges[eid].v1, gamma.edges[eid].v2))
            others = vertex_ids - {u, v}
            if len(others) != 1:
                raise StructureViolation("triangle does not close on a third vertex")
            w = others.pop()
            w_planes = set(gamma.vertices[w].planes)
            if len(w_planes) != 4:
                raise StructureViolation("diamond vertex not on exactly 4 planes")
            ux = w_planes & set(u_extras)
            vx = w_planes & set(v_extras)
            if len(ux) != 1 or len(vx) != 1:
                raise StructureViolation("triangle sides not cut by the extras")
            pair = (ux.pop(), vx.pop())
            pairs.add(pair)
            thirds[(carrier, pair)] = w
        if len(pairs) != 2:
            raise StructureViolation("expected two distinct triangle pairings")
        pairings[carrier] = pairs
    if pairings[p] != pairings[q]:
        raise StructureViolation("triangle pairings twist between the carrier planes")

    r0, s0 = u_extras
    s1 = next(y for (x, y) in pairings[p] if x == r0)
    r_m1 = next(y for (x, y) in pairings[p] if x == s0)
    if {s1, r_m1} != set(v_extras):
        raise StructureViolation("pairing does not exhaust the far extras")

    def fourth(carrier, pair, known):
        w = thirds[(carrier, pair)]
        rest = set(gamma.vertices[w].planes) - known
        if len(rest) != 1:
            raise StructureViolation("diamond vertex has no unique fourth plane")
        return rest.pop()

    p_m1 = fourth(q, (r0, s1), {q, r0, s1})
    p_1 = fourth(q, (s0, r_m1), {q, s0, r_m1})
    q_m1 = fourth(p, (r0, s1), {p, r0, s1})
    q_1 = fourth(p, (s0, r_m1), {p, s0, r_m1})

    roles = {"p_-1": p_m1, "p_0": p, "p_1": p_1,
             "q_-1": q_m1, "q_0": q, "q_1": q_1,
             "r_-1": r_m1, "r_0": r0, "s_0": s0, "s_1": s1}
    if len(set(roles.values())) != 10:
        raise StructureViolation("double diamond points are not distinct")

    pts = gamma.points.points
    fam_p = {-1: p_m1, 0: p, 1: p_1}
    fam_q = {-1: q_m1, 0: q, 1: q_1}
    fam_r = {-1: r_m1, 0: r0}
    fam_s = {0: s0, 1: s1}
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            for k in (-1, 0):
                l = -(i + j + k)
                if l in fam_s:
                    quad = (pts[fam_p[i]], pts[fam_q[j]], pts[fam_r[k]], pts[fam_s[l]])
                    if not det4(quad).is_zero():
                        raise StructureViolation(
                            f"tetra-grid coplanarity fails at (i,j,k,l)=({i},{j},{k},{l})")
    return DoubleDiamond(edge_index, roles)
