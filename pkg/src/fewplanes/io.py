"""Canonical JSON file formats and deterministic report serialization.

Scalars serialize as "a/b" strings when rational and as
{"N": order, "c": [coefficients]} otherwise; a point-set file is
{"field_order": N, "points": [[s, s, s, s], ...], "labels": [...]}.
All reports are emitted with sorted keys and a fixed layout so that runs
are byte-identical for a fixed input, seed and worker count.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .cyclotomic import Scalar
from .generators import PointSet
from .lifting import PlanarPointSet
from .projective import ProjPoint


def scalar_to_json(s: Scalar):
    return s.to_json()


def scalar_from_json(data) -> Scalar:
    return Scalar.from_json(data)


def pointset_to_json(ps: PointSet) -> dict:
    data = {
        "field_order": ps.field_order,
        "points": [[scalar_to_json(c) for c in p.coords] for p in ps.points],
    }
    if ps.labels is not None:
        data["labels"] = list(ps.labels)
    return data


def pointset_from_json(data) -> PointSet:
    points = [ProjPoint(*(scalar_from_json(c) for c in row))
              for row in data["points"]]
    return PointSet(points, int(data["field_order"]), data.get("labels"))


def planar_to_json(ps: PlanarPointSet) -> dict:
    return {"points": [[scalar_to_json(u), scalar_to_json(v)]
                       for u, v in ps.points]}


def planar_from_json(data) -> PlanarPointSet:
    return PlanarPointSet.of([(scalar_from_json(u), scalar_from_json(v))
                              for u, v in data["points"]])


def fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_report(data))


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def input_hash(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def tau_rows(tau: dict) -> list:
    return [[i, tau[i]] for i in sorted(tau)]


def tau_csv(tau: dict) -> str:
    lines = ["i,count"]
    lines += [f"{i},{tau[i]}" for i in sorted(tau)]
    return "\n".join(lines) + "\n"
