"""JSON conventions: exchange matrices in, exact rational data out.

Rationals serialize as "p/q" strings ("p" when integral); roots and weight
vectors as coordinate lists; series as {"normal": ..., "coeffs": [...]}.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cartan import ExchangeMatrix


class InputError(ValueError):
    pass


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


def vec_json(v):
    return [frac_str(c) for c in v]


def int_vec_json(v):
    return [int(c) for c in v]


def read_exchange_matrix(data) -> ExchangeMatrix:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        n = int(data["n"])
        rows = data["b"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"expected an object with 'n' and 'b': {exc}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError("'b' must be an n x n integer matrix")
    try:
        return ExchangeMatrix.from_rows(rows)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def series_json(f):
    return {"normal": int_vec_json(f.normal), "coeffs": [frac_str(c) for c in f.coeffs]}


def wall_json(w):
    return {
        "normal": int_vec_json(w.normal),
        "ineqs": [int_vec_json(g) for g in w.ineq_roots],
        "series": series_json(w.f),
        "origin": w.origin,
    }


def diagram_json(d):
    return {
        "n": d.cartan_n,
        "height_cap": d.height_cap,
        "truncation": d.truncation,
        "provenance": d.provenance,
        "walls": [wall_json(w) for w in d.walls],
    }


def cone_json(cone):
    lin, rays = cone.generators
    return {
        "rays": [vec_json(r) for r in rays],
        "lineality": [vec_json(v) for v in lin],
        "ineqs": [vec_json(g) for g in cone.ineqs],
        "eqs": [vec_json(e) for e in cone.eqs],
    }


def diagram_from_json(data, symmetrizers):
    """Rebuild a ScatDiagram from its wall dump.  The symmetrizers convert the
    root-coordinate inequality functionals back into cone covectors."""
    from .cones import Cone
    from .linalg import primitive_vector
    from .scattering import ScatDiagram, Wall
    from .series import TruncatedSeries

    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    n = int(data["n"])
    d = tuple(Fraction(x) for x in symmetrizers)

    def cov(phi):
        return primitive_vector(tuple(d[i] * phi[i] for i in range(n)))

    walls = []
    for w in data["walls"]:
        normal = tuple(int(c) for c in w["normal"])
        ineqs = [tuple(int(c) for c in g) for g in w["ineqs"]]
        coeffs = [parse_frac(c) for c in w["series"]["coeffs"]]
        f = TruncatedSeries.make(normal, len(coeffs) - 1, coeffs)
        cone = Cone.from_constraints(
            n, eqs=[cov(normal)], ineqs=[cov(g) for g in ineqs]
        )
        walls.append(
            Wall(
                normal=normal,
                cone=cone,
                ineq_roots=tuple(sorted(ineqs)),
                f=f,
                origin=w["origin"],
            )
        )
    return ScatDiagram(
        cartan_n=n,
        walls=tuple(walls),
        height_cap=int(data["height_cap"]),
        truncation=int(data["truncation"]),
        provenance=dict(data.get("provenance", {})),
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
