"""JSON encoding of curves, centers and numbers.

Complex numbers are ``[re, im]`` pairs, exact rationals are ``"p/q"``
strings, plain JSON numbers are accepted as real floats.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import PlaneCurveImplicit, ProjectionCenter, RationalCurveMap
from .polynomial import ComplexPoly, RatPoly


def encode_number(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else f"{x.numerator}/1"
    if isinstance(x, int) and not isinstance(x, bool):
        return f"{x}/1"
    z = complex(x)
    return [z.real, z.imag]


def decode_number(v):
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError as exc:
            raise ValueError(f"bad rational {v!r}") from exc
    if isinstance(v, list):
        if len(v) != 2:
            raise ValueError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"not a number: {v!r}")
    return float(v)


def _poly(coeffs):
    vals = [decode_number(c) for c in coeffs]
    if all(isinstance(c, Fraction) for c in vals):
        return RatPoly(vals)
    return ComplexPoly([complex(c) for c in vals])


def curve_to_json(curve) -> dict:
    if isinstance(curve, PlaneCurveImplicit):
        return {
            "type": "plane_implicit",
            "degree": curve.degree,
            "monomials": [[i, j, encode_number(c)] for (i, j), c in sorted(curve.monomials.items())],
        }
    return {
        "type": "rational",
        "r": curve.r,
        "degree": curve.degree,
        "forms": [[encode_number(c) for c in f] for f in curve.forms],
        **({"name": curve.name} if curve.name else {}),
    }


def curve_from_json(doc: dict):
    kind = doc.get("type")
    if kind == "rational":
        forms = tuple(_poly(f) for f in doc["forms"])
        if "r" in doc and len(forms) != doc["r"] + 1:
            raise ValueError(f"r = {doc['r']} needs {doc['r'] + 1} forms, got {len(forms)}")
        if any(isinstance(f, ComplexPoly) for f in forms):
            forms = tuple(f.to_complex() if isinstance(f, RatPoly) else f for f in forms)
        return RationalCurveMap(forms, int(doc["degree"]), doc.get("name", ""))
    if kind == "plane_implicit":
        mons = {}
        for i, j, c in doc["monomials"]:
            mons[(int(i), int(j))] = mons.get((int(i), int(j)), 0) + decode_number(c)
        return PlaneCurveImplicit(mons, int(doc["degree"]), doc.get("name", ""))
    raise ValueError(f"unknown curve type {kind!r}")


def center_to_json(center) -> dict:
    if isinstance(center, ProjectionCenter):
        return {"H0": [encode_number(h) for h in center.H0], "H1": [encode_number(h) for h in center.H1]}
    return {"point": [encode_number(x) for x in center]}


def center_from_json(doc: dict):
    """A ``ProjectionCenter`` for ``{"H0", "H1"}`` or a point list for ``{"point"}``."""
    if "point" in doc:
        return [decode_number(x) for x in doc["point"]]
    if "H0" in doc and "H1" in doc:
        return ProjectionCenter(tuple(decode_number(h) for h in doc["H0"]), tuple(decode_number(h) for h in doc["H1"]))
    raise ValueError("center needs H0 and H1, or point")
