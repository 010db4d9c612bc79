"""Explicit curves and centers with known monodromy.

Twisted-cubic osculating lines, the quartic and sextic whose linear series
contain a curve of squares (so secant lines to that curve give coverings
that factor through ``z -> z^2``), a quartic with a point of non-birational
projection, and seeded samplers of projection centers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import linalg
from .curve import (
    INF,
    PencilFamily,
    ProjectionCenter,
    RationalCurveMap,
    _is_inf,
    _is_rational,
    make_pencil,
    osculating_kplane,
)
from .errors import FloatingInconclusive, SpanDimensionMismatch, UnknownConstruction
from .jsonio import center_to_json, curve_to_json, encode_number
from .monodromy import compute_branch_points
from .polynomial import ComplexPoly, RatPoly, as_complex, gcd, perfect_square_part


def _x(k: int) -> RatPoly:
    return RatPoly.monomial(k, Fraction(1))


# ---------------------------------------------------------------- twisted cubic


def twisted_cubic() -> RationalCurveMap:
    return RationalCurveMap(tuple(_x(k) for k in range(4)), 3, "twisted-cubic")


def osculating_center(t1, t2, curve: RationalCurveMap | None = None) -> ProjectionCenter:
    """Intersection of the osculating planes at ``t1`` and ``t2``."""
    if (_is_inf(t1) and _is_inf(t2)) or (not _is_inf(t1) and not _is_inf(t2) and t1 == t2):
        raise ValueError("osculating planes at the same point do not meet in a line")
    curve = curve or twisted_cubic()
    (H0,) = osculating_kplane(curve, t1, 2)
    (H1,) = osculating_kplane(curve, t2, 2)
    return ProjectionCenter(H0, H1)


# ---------------------------------------------------------------- squares in V


@dataclass(frozen=True)
class VeroneseSpace:
    """A 4-dimensional space ``V`` of forms of degree ``2d`` with a curve of
    forms ``g`` of degree ``d`` whose squares lie in ``V``.

    ``member(lam, mu)`` evaluates that curve of ``g``'s.
    """

    d: int
    V_basis: tuple
    member: Callable
    description: str = ""
    certificate: dict = field(default_factory=dict, compare=False)

    def coordinates(self, f):
        """Coordinates of ``f`` in ``V_basis``; ``ValueError`` if ``f`` is not in ``V``."""
        n = 2 * self.d + 1
        exact = f.exact if hasattr(f, "exact") else False
        cols = [[b[k] for b in self.V_basis] for k in range(n)]
        rhs = [f[k] for k in range(n)]
        if exact:
            rows = [c + [r] for c, r in zip(cols, rhs)]
            red, piv = linalg.rref(rows)
            if 4 in piv:
                raise ValueError("form is not in V")
            x = [Fraction(0)] * 4
            for row, p in zip(red, piv):
                x[p] = row[4]
            return x
        a = np.array(cols, dtype=complex)
        b = np.array([complex(v) for v in rhs])
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        if np.linalg.norm(a @ x - b) > 1e-9 * max(np.linalg.norm(b), 1e-300):
            raise ValueError("form is not in V")
        return list(x)

    def contains(self, f) -> bool:
        try:
            self.coordinates(f)
            return True
        except ValueError:
            return False

    def square(self, p):
        lam, mu = _pair(p)
        g = self.member(lam, mu)
        return g * g

    def curve(self, name="") -> RationalCurveMap:
        return RationalCurveMap(self.V_basis, 2 * self.d, name)


def _pair(p):
    """``(lam, mu)`` from a pair, an affine parameter, or ``oo``."""
    if isinstance(p, (tuple, list)):
        return p[0], p[1]
    if _is_inf(p):
        return 1, 0
    return p, 1


def _span_certificate(basis, squares, d):
    """Exact rank of ``basis`` alone and with the listed squares appended."""
    n = 2 * d + 1
    rows = [[b[k] for k in range(n)] for b in basis]
    rank_v = linalg.exact_rank(rows)
    rank_all = linalg.exact_rank(rows + [[s[k] for k in range(n)] for s in squares])
    return {"rank_V": rank_v, "rank_with_squares": rank_all, "samples": len(squares)}


_CERT_PARAMS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 3), (-3, 2), (5, -2), (1, 2)]


def quartic_special():
    """Quartic ``t -> [1 : t : t^3 : t^4]`` and the conic of ``g = a t^2 + b t + c``
    with ``b^2 + 2ac = 0``, on which ``g^2`` has no ``t^2`` term."""
    basis = (_x(0), _x(1), _x(3), _x(4))

    def member(lam, mu):
        lam, mu = _num(lam), _num(mu)
        cls = RatPoly if _is_rational(lam) and _is_rational(mu) else ComplexPoly
        return cls([-mu * mu, 2 * lam * mu, 2 * lam * lam])

    squares = [member(lm, mu) ** 2 for lm, mu in _CERT_PARAMS[:5]]
    cert = _span_certificate(basis, squares, 2)
    # the t^2 coefficient of g^2 is a quartic form in (lam : mu); five zeros make it vanish
    cert["identity"] = "t^2 coefficient of g^2 vanishes at 5 points of P^1, degree 4 in (lam:mu)"
    if cert["rank_V"] != 4 or cert["rank_with_squares"] != 4:
        raise SpanDimensionMismatch(f"quartic certificate failed: {cert}")
    vs = VeroneseSpace(2, basis, member, "b^2 + 2ac = 0", cert)
    return vs.curve("quartic-special"), vs


def _sextic_g(lam, mu):
    """``g = X + u X^3 + u^2 - u^3 X^2`` at ``u = lam/mu``, homogenised."""
    lam, mu = _num(lam), _num(mu)
    cls = RatPoly if _is_rational(lam) and _is_rational(mu) else ComplexPoly
    return cls([lam * lam * mu, mu**3, -(lam**3), lam * mu * mu])


def sextic_special():
    """Sextic defined by ``V = span{coefficients in u of g(u)^2}``."""
    # g(u)^2 = sum_k u^k c_k(X); c_3 = 0 and c_5, c_6 are multiples of c_0, c_1
    coeffs = _u_expansion_of_square()
    rank = linalg.exact_rank([[c[k] for k in range(7)] for c in coeffs])
    if rank != 4:
        raise SpanDimensionMismatch(f"span of the square coefficients has rank {rank}, not 4")
    # a basis that reads well: X^2, X^4, X^6 + 2X, 1 - 2X^5
    basis = (coeffs[0], coeffs[1] * Fraction(1, 2), coeffs[2], coeffs[4])
    squares = [_sextic_g(lm, mu) ** 2 for lm, mu in _CERT_PARAMS]
    cert = _span_certificate(basis, squares, 3)
    cert["rank_coefficients"] = rank
    cert["coefficient_forms"] = [[str(c[k]) for k in range(7)] for c in coeffs]
    if cert["rank_V"] != 4 or cert["rank_with_squares"] != 4:
        raise SpanDimensionMismatch(f"sextic certificate failed: {cert}")
    vs = VeroneseSpace(3, basis, _sextic_g, "g(u) = X + uX^3 + u^2 - u^3X^2", cert)
    return vs.curve("sextic-special"), vs


def _u_expansion_of_square():
    """Forms ``c_k(X)`` with ``g(u)^2 = sum_k u^k c_k``."""
    # g = a0 + a1 u + a2 u^2 + a3 u^3 with a_i forms in X
    a = [RatPoly([0, 1]), RatPoly([0, 0, 0, 1]), RatPoly([1]), RatPoly([0, 0, -1])]
    out = [RatPoly() for _ in range(7)]
    for i in range(4):
        for j in range(4):
            out[i + j] = out[i + j] + a[i] * a[j]
    return out


def _num(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    return complex(x)


# ---------------------------------------------------------------- secant pencils


@dataclass(frozen=True)
class SecantPencil(PencilFamily):
    """``g1^2 - s g2^2``: the covering is ``t -> [g1 : g2]`` followed by ``z -> z^2``."""

    g1: object = None
    g2: object = None

    def intermediate_map(self):
        """The degree ``d`` factor ``t -> g1(t) / g2(t)``."""
        return self.g1, self.g2


def secant_center(vs: VeroneseSpace, p1, p2) -> SecantPencil:
    """Pencil spanned by the squares at two points of the square locus."""
    l1, m1 = _pair(p1)
    l2, m2 = _pair(p2)
    if _num(l1) * _num(m2) == _num(l2) * _num(m1):
        raise ValueError("secant needs two distinct points")
    g1, g2 = vs.member(l1, m1), vs.member(l2, m2)
    A, B = g1 * g1, g2 * g2
    exact = A.exact and B.exact
    # floating coprimality is checked by the pencil's resultant test
    if exact and gcd(g1, g2).degree > 0:
        raise ValueError("g1 and g2 share a root; the secant has base points")
    n = 2 * vs.d
    return SecantPencil(
        as_complex(A),
        as_complex(B),
        n,
        0,
        f"secant to the square locus of {vs.description}",
        A if exact else None,
        B if exact else None,
        g1,
        g2,
    )


def secant_hyperplanes(vs: VeroneseSpace, p1, p2) -> ProjectionCenter:
    """The same secant as a center for ``vs.curve()``: ``H . basis = g^2``."""
    sp = secant_center(vs, p1, p2)
    A = sp.A_exact if sp.exact else sp.A
    B = sp.B_exact if sp.exact else sp.B
    return ProjectionCenter(tuple(vs.coordinates(A)), tuple(vs.coordinates(B)))


# ---------------------------------------------------------------- non-birational point


def nonbirational_quartic():
    """``t -> [1 : t^2 : t^4 : t^3 + t]`` and ``x = [0:0:0:1]``; projection from
    ``x`` is two-to-one onto a conic."""
    forms = (_x(0), _x(2), _x(4), RatPoly([0, 1, 0, 1]))
    point = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    return RationalCurveMap(forms, 4, "nonbirational-quartic"), point


# ---------------------------------------------------------------- samplers


@dataclass
class CenterFamily:
    """Seeded stream of projection centers (or pencils)."""

    tag: str
    seed: int
    draw: Callable
    expected_degree: int | None = None

    def sample(self, count: int):
        rng = np.random.default_rng(self.seed)
        return [self.draw(rng) for _ in range(count)]

    def __iter__(self):
        rng = np.random.default_rng(self.seed)
        while True:
            yield self.draw(rng)


def grassmannian_sampler(r: int, seed: int = 0) -> CenterFamily:
    """Centers cut by two real Gaussian hyperplanes in ``P^r``."""

    def draw(rng):
        while True:
            H = rng.standard_normal((2, r + 1))
            H /= np.linalg.norm(H, axis=1, keepdims=True)
            if linalg.float_rank(H) == 2:
                return ProjectionCenter(tuple(H[0]), tuple(H[1]))

    return CenterFamily(f"grassmannian(r={r})", seed, draw)


def _rational_gaussian(rng, size, denom=1 << 10):
    return [Fraction(int(round(v * denom)), denom) for v in rng.standard_normal(size)]


def schubert_sampler(x, seed: int = 0) -> CenterFamily:
    """Centers through ``x``: rational Gaussian hyperplanes corrected in one
    coordinate so that they vanish at ``x`` exactly."""
    x = [Fraction(v) if _is_rational(v) else Fraction(float(complex(v).real)) for v in x]
    j = next(i for i, v in enumerate(x) if v != 0)

    def hyperplane(rng):
        h = _rational_gaussian(rng, len(x))
        h[j] = -sum(hi * xi for i, (hi, xi) in enumerate(zip(h, x)) if i != j) / x[j]
        return tuple(h)

    def draw(rng):
        while True:
            H0, H1 = hyperplane(rng), hyperplane(rng)
            if linalg.exact_rank([H0, H1]) == 2:
                center = ProjectionCenter(H0, H1)
                assert center.contains(x)
                return center

    return CenterFamily(f"schubert(x={[str(v) for v in x]})", seed, draw)


def secant_sampler(vs: VeroneseSpace, seed: int = 0) -> CenterFamily:
    """Secant pencils through two Gaussian points of the square locus."""

    def draw(rng):
        while True:
            p1, p2 = rng.standard_normal(2)
            try:
                return secant_center(vs, (float(p1), 1.0), (float(p2), 1.0))
            except ValueError:
                continue

    return CenterFamily(f"secant({vs.description})", seed, draw, 2 * vs.d)


# ---------------------------------------------------------------- squares on a line


SQUARE_CONFIDENT = 1e-8
SQUARE_REJECT = 1e-4


def _square_member(member, degree: int):
    """Is ``member`` (a form of degree ``degree``) a square? ``None`` when inconclusive."""
    m = member.normalize()
    if m.is_zero():
        return None
    drop = degree - m.degree
    if drop % 2:
        return False
    if m.degree == 0:
        return True
    sq = perfect_square_part(m)
    if m.exact:
        return sq.is_square
    if sq.defect <= SQUARE_CONFIDENT:
        return True
    if sq.defect >= SQUARE_REJECT:
        return False
    return None


def square_count_on_line(vs: VeroneseSpace, F, G, cap: int | None = None) -> int:
    """Number of distinct members ``F - s G`` (``s`` in ``P^1``) that are squares.

    Candidates are the branch points of the reduced pencil, the members that
    vanish at a common root of ``F`` and ``G``, and ``s = oo``. Stops once
    ``cap`` squares have been found.
    """
    deg = 2 * vs.d
    Fc, Gc = as_complex(F).normalize(), as_complex(G).normalize()
    h = gcd(F, G) if (F.exact and G.exact) else gcd(Fc, Gc)
    h = as_complex(h)
    Fr, Gr = Fc // h, Gc // h
    cands = []
    n_r = deg - h.degree
    pen = PencilFamily(Fr, Gr, n_r) if n_r >= 1 else None
    if pen is not None and n_r >= 2:
        cands.extend(compute_branch_points(pen).points)
    if h.degree >= 1:
        from .polynomial import roots_all

        for r in roots_all(h):
            if abs(Gr(r)) > 1e-12:
                cands.append(complex(Fr(r) / Gr(r)))
    # distinct values only
    uniq = []
    for s in cands:
        if all(abs(s - u) > 1e-7 * (1 + abs(u)) for u in uniq):
            uniq.append(s)
    count = 0
    verdicts = [_square_member(Gc, deg)] + [_square_member(Fc - Gc * s, deg) for s in uniq]
    for v in verdicts:
        if v is None:
            raise FloatingInconclusive("square test defect inside the confidence margin")
        count += bool(v)
        if cap is not None and count >= cap:
            break
    return count


def triple_square_pencil():
    """A line in ``P(V)`` of the quartic meeting the square conic three times.

    With ``l1 = t - 1`` and ``l2 = k (t - q)`` the forms ``l1^2 + l2^2``,
    ``l1^2 - l2^2`` and ``2 l1 l2`` satisfy ``(l1^2+l2^2)^2 - (l1^2-l2^2)^2 = (2 l1 l2)^2``;
    all three lie on ``b^2 + 2ac = 0`` when ``q^2 + 4q + 1 = 0`` and
    ``k^4 q^2 = -1``.
    """
    q = -2 + math.sqrt(3)
    k = cmath.sqrt(1j / q)
    l1 = ComplexPoly([-1, 1])
    l2 = ComplexPoly([-k * q, k])
    g1, g2, g3 = l1 * l1 + l2 * l2, l1 * l1 - l2 * l2, l1 * l2 * 2
    return g1 * g1, g2 * g2, (g1, g2, g3)


# ---------------------------------------------------------------- registry


def _certificate_json(cert: dict) -> dict:
    return {k: v for k, v in cert.items()}


def construct(name: str, params: dict | None = None) -> dict:
    """JSON bundle (curve, center, expected classification, certificate) for a
    named construction."""
    params = params or {}
    if name == "twisted-cubic":
        t1 = _param(params.get("t1", "0"))
        t2 = _param(params.get("t2", "1"))
        curve = twisted_cubic()
        center = osculating_center(t1, t2, curve)
        pen = make_pencil(curve, center)
        return {
            "name": name,
            "curve": curve_to_json(curve),
            "center": center_to_json(center),
            "expected": {"d_L": 3, "classification": "alternating", "order": "3"},
            "certificate": {"pencil": {"A": [encode_number(c) for c in pen.A_exact], "B": [encode_number(c) for c in pen.B_exact]}},
        }
    if name in ("quartic-special", "sextic-special"):
        curve, vs = quartic_special() if name == "quartic-special" else sextic_special()
        p1 = _param(params.get("p1", "1/2"))
        p2 = _param(params.get("p2", "-3"))
        center = secant_hyperplanes(vs, p1, p2)
        sp = secant_center(vs, p1, p2)
        blocks = [vs.d, vs.d]
        return {
            "name": name,
            "curve": curve_to_json(curve),
            "center": center_to_json(center),
            "expected": {"d_L": 2 * vs.d, "classification": "imprimitive", "block_sizes": blocks},
            "certificate": {
                "square_locus": vs.description,
                "span": _certificate_json(vs.certificate),
                "intermediate_map": [[encode_number(c) for c in sp.g1], [encode_number(c) for c in sp.g2]],
            },
        }
    if name == "nonbirational-quartic":
        curve, x = nonbirational_quartic()
        center = next(iter(schubert_sampler(x, int(params.get("seed", 0)))))
        return {
            "name": name,
            "curve": curve_to_json(curve),
            "center": center_to_json(center),
            "through": {"point": [encode_number(v) for v in x]},
            "expected": {"d_L": 4, "classification": "imprimitive", "block_sizes": [2, 2]},
            "certificate": {"center_contains_x": center.contains(x)},
        }
    raise UnknownConstruction(f"unknown construction {name!r}")


def _param(text):
    if not isinstance(text, str):
        return text
    t = text.strip().lower()
    if t in ("inf", "oo", "infinity"):
        return INF
    if ":" in t:
        a, b = t.split(":")
        return (Fraction(a), Fraction(b))
    return Fraction(t)


CONSTRUCTIONS = ("twisted-cubic", "quartic-special", "sextic-special", "nonbirational-quartic")
