"""Curves, projection centers and the fiber families they induce.

A projection from a codimension-two center ``L = {H0 = 0} ∩ {H1 = 0}``
restricts to the curve as the pencil of divisors cut by ``H0 - s*H1``; on a
rational curve ``t -> [f_0(t) : ... : f_r(t)]`` that is the polynomial family
``A(t) - s*B(t)`` with ``A = H0 . f`` and ``B = H1 . f``.

Every family is eventually handled as a ``FiberFamily``: a polynomial
``P(s, u)`` in the base coordinate ``s`` and the fiber coordinate ``u``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import numpy.polynomial.polynomial as npp
from scipy.cluster.hierarchy import linkage

from . import linalg
from .errors import (
    AmbiguousCluster,
    CenterContainsCurveComponent,
    DegenerateDirection,
    ExactModeRequired,
    IllConditioned,
    RankDeficient,
)
from .polynomial import (
    ComplexPoly,
    RatPoly,
    as_complex,
    discriminant,
    gcd,
    interpolate_on_circle,
    roots_all,
    _trim_scaled,
)

# Collision radius used while tracking, relative to 1 + max root modulus.
EPS_CLUSTER = 1e-6
# Expected relative error of inputs to a root clustering; a k-fold root
# spreads to about CLUSTER_DELTA ** (1/k).
CLUSTER_DELTA = 1e-12
CLUSTER_FACTOR = 10.0
CLUSTER_CAP = 0.05

INF = complex("inf")


def _is_inf(t) -> bool:
    return t is None or (isinstance(t, (int, float, complex)) and cmath.isinf(t))


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------- curves


@dataclass(frozen=True)
class RationalCurveMap:
    """``t -> [f_0(t) : ... : f_r(t)]`` with forms of degree ``degree``.

    A common factor of the forms (including a common zero at ``t = oo``) is
    divided out on construction.
    """

    forms: tuple
    degree: int
    name: str = ""

    def __post_init__(self):
        forms = [f if isinstance(f, (ComplexPoly, RatPoly)) else ComplexPoly(f) for f in self.forms]
        exact = all(f.exact for f in forms)
        if not exact:
            forms = [as_complex(f) for f in forms]
        d = self.degree
        common = None
        for f in forms:
            if f.is_zero():
                continue
            common = f if common is None else gcd(common, f)
        if common is None:
            raise ValueError("all forms vanish")
        if common.degree > 0:
            forms = [f // common for f in forms]
            d -= common.degree
        top = max(f.degree for f in forms)
        if top < d:
            d = top
        object.__setattr__(self, "forms", tuple(forms))
        object.__setattr__(self, "degree", d)
        mat = self.coefficient_matrix()
        rank = linalg.exact_rank(mat) if exact else linalg.float_rank(mat)
        if rank != len(forms):
            raise ValueError(f"forms are linearly dependent (rank {rank} < {len(forms)})")

    @property
    def r(self) -> int:
        return len(self.forms) - 1

    @property
    def exact(self) -> bool:
        return all(f.exact for f in self.forms)

    def coefficient_matrix(self):
        return [[f[k] for k in range(self.degree + 1)] for f in self.forms]

    def to_float(self) -> "RationalCurveMap":
        if not self.exact:
            return self
        return RationalCurveMap(tuple(f.to_complex() for f in self.forms), self.degree, self.name)

    def __call__(self, t):
        if _is_inf(t):
            return [f[self.degree] for f in self.forms]
        return [f(t) for f in self.forms]

    def taylor_rows(self, t0, count: int):
        """Rows ``j = 0..count-1`` of Taylor coefficients of the forms at ``t0``
        (in the chart ``tau = 1/t`` when ``t0`` is infinite)."""
        rows = []
        for j in range(count):
            row = []
            for f in self.forms:
                if _is_inf(t0):
                    row.append(f[self.degree - j] if j <= self.degree else f._coerce(0))
                else:
                    acc = f._coerce(0)
                    for i in range(j, len(f)):
                        acc += math.comb(i, j) * f[i] * t0 ** (i - j)
                    row.append(acc)
            rows.append(row)
        return rows


@dataclass(frozen=True)
class PlaneCurveImplicit:
    """Affine plane curve ``F(x, y) = 0``, homogenised with ``z`` for points
    ``[x : y : z]``. ``monomials`` maps ``(i, j)`` to the coefficient of
    ``x^i y^j``."""

    monomials: dict
    degree: int
    name: str = ""

    def __post_init__(self):
        top = max(i + j for (i, j), c in self.monomials.items() if c != 0)
        if top != self.degree:
            raise ValueError(f"total degree is {top}, not {self.degree}")

    def evaluate(self, point) -> complex:
        X, Y, Z = (complex(v) for v in point)
        return sum(complex(c) * X**i * Y**j * Z ** (self.degree - i - j) for (i, j), c in self.monomials.items())

    def restrict(self, base, direction, apex) -> np.ndarray:
        """Coefficients ``out[k, j]`` of ``u^k s^j`` in ``F(base + s*direction + u*apex)``."""
        d = self.degree
        lin = []
        for axis in range(3):
            m = np.zeros((2, 2), dtype=complex)
            m[0, 0] = base[axis]
            m[0, 1] = direction[axis]
            m[1, 0] = apex[axis]
            lin.append(m)
        out = np.zeros((d + 1, d + 1), dtype=complex)
        for (i, j), c in self.monomials.items():
            if c == 0:
                continue
            term = np.array([[complex(c)]])
            for axis, power in ((0, i), (1, j), (2, d - i - j)):
                for _ in range(power):
                    term = _mul2d(term, lin[axis])
            out[: term.shape[0], : term.shape[1]] += term
        return out


def _mul2d(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
    for (i, j), v in np.ndenumerate(b):
        if v != 0:
            out[i : i + a.shape[0], j : j + a.shape[1]] += v * a
    return out


@dataclass(frozen=True)
class ProjectionCenter:
    """The codimension-two subspace ``{H0 = 0} ∩ {H1 = 0}``."""

    H0: tuple
    H1: tuple

    def __post_init__(self):
        object.__setattr__(self, "H0", tuple(self.H0))
        object.__setattr__(self, "H1", tuple(self.H1))
        if len(self.H0) != len(self.H1):
            raise ValueError("hyperplanes live in different spaces")
        if self.exact:
            rank = linalg.exact_rank([self.H0, self.H1])
        else:
            rank = linalg.float_rank([self.H0, self.H1])
        if rank != 2:
            raise ValueError("H0 and H1 are not independent")

    @property
    def exact(self) -> bool:
        return all(_is_rational(x) for x in self.H0 + self.H1)

    def contains(self, point) -> bool:
        """Exact incidence for rational data, 1e-12 relative otherwise."""
        vals = [sum(h * x for h, x in zip(H, point)) for H in (self.H0, self.H1)]
        if self.exact and all(_is_rational(x) for x in point):
            return all(v == 0 for v in vals)
        scale = max(abs(complex(x)) for x in point) * max(abs(complex(h)) for h in self.H0 + self.H1)
        return all(abs(complex(v)) <= 1e-12 * scale for v in vals)


# ---------------------------------------------------------------- families


def _poly_pow(p, k):
    out = np.array([1.0 + 0j])
    for _ in range(k):
        out = npp.polymul(out, p)
    return out


@dataclass(frozen=True)
class FiberFamily:
    """``P(s, u) = sum coef[k, j] u^k s^j`` of formal ``u``-degree ``n``.

    ``weights[k]`` is the homogeneous degree in ``(s0 : s1)`` of the
    coefficient of ``u^k``; it fixes how the family behaves at ``s = oo`` and
    under Mobius changes of ``s``.
    """

    coef: np.ndarray
    weights: tuple
    base_degree: int = 0
    provenance: str = ""

    def __post_init__(self):
        c = np.array(self.coef, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coef", c)
        if len(self.weights) != c.shape[0]:
            raise ValueError("one weight per u-power required")

    @property
    def n(self) -> int:
        return self.coef.shape[0] - 1

    d_L = n

    def u_coeffs(self, s) -> np.ndarray:
        return self.coef @ (complex(s) ** np.arange(self.coef.shape[1]))

    def s_derivative_coeffs(self, s) -> np.ndarray:
        j = np.arange(1, self.coef.shape[1])
        return self.coef[:, 1:] @ (j * complex(s) ** (j - 1))

    def fiber_poly(self, s) -> ComplexPoly:
        return ComplexPoly(self.u_coeffs(s))

    def lead_in_s(self) -> ComplexPoly:
        return ComplexPoly(self.coef[self.n]).normalize()

    def at_infinity(self) -> np.ndarray:
        """``u``-coefficients of the fiber over ``s = oo``."""
        out = np.zeros(self.n + 1, dtype=complex)
        for k, w in enumerate(self.weights):
            if w < self.coef.shape[1]:
                out[k] = self.coef[k, w]
        return out

    def discriminant_degree(self) -> int:
        n, w = self.n, self.weights
        if n < 1:
            return 0
        a, b = w[0], w[0] - w[1]
        if any(w[k] != a - b * k for k in range(n + 1)):
            raise ValueError("discriminant degree bound needs weights linear in k")
        return (2 * n - 2) * a - b * n * (n - 1)

    def interpolation_radius(self) -> float:
        c0 = np.max(np.abs(self.coef[:, 0]))
        c1 = np.max(np.abs(self.coef[:, 1:])) if self.coef.shape[1] > 1 else 0.0
        return 1.0 + c0 / max(c1, 1e-300)

    def discriminant(self) -> ComplexPoly:
        """Discriminant in ``u`` (formal degree ``n``) as a polynomial in ``s``."""
        N = self.discriminant_degree() + 1
        radius = self.interpolation_radius()
        nodes = radius * np.exp(2j * np.pi * (np.arange(N) + 0.5) / N)
        vals = np.array([discriminant(self.fiber_poly(s), self.n) for s in nodes])
        # nodes are offset by half a step, undo the rotation of the basis
        coeffs = interpolate_on_circle(vals, radius)
        coeffs = coeffs * np.exp(-1j * np.pi * np.arange(N) / N)
        return ComplexPoly(_trim_scaled(coeffs, radius))

    def mobius_s(self, a, b, c, d) -> "FiberFamily":
        """Substitute ``s = (a s' + b) / (c s' + d)`` and clear denominators."""
        wmax = max(self.weights)
        out = np.zeros((self.n + 1, wmax + 1), dtype=complex)
        num, den = np.array([b, a], dtype=complex), np.array([d, c], dtype=complex)
        for k, w in enumerate(self.weights):
            acc = np.zeros(1, dtype=complex)
            for j in range(min(w, self.coef.shape[1] - 1) + 1):
                if self.coef[k, j] != 0:
                    acc = npp.polyadd(acc, self.coef[k, j] * npp.polymul(_poly_pow(num, j), _poly_pow(den, w - j)))
            out[k, : len(acc)] = acc
        return FiberFamily(out, self.weights, self.base_degree, self.provenance)

    def mobius_u(self, a, b, c, d) -> "FiberFamily":
        """Substitute ``u = (a u' + b) / (c u' + d)``; needs uniform weights."""
        if len(set(self.weights)) != 1:
            raise ValueError("Mobius change of u needs uniform weights")
        n = self.n
        num, den = np.array([b, a], dtype=complex), np.array([d, c], dtype=complex)
        basis = [npp.polymul(_poly_pow(num, k), _poly_pow(den, n - k)) for k in range(n + 1)]
        out = np.zeros_like(self.coef)
        for k in range(n + 1):
            for j in range(self.coef.shape[1]):
                if self.coef[k, j] != 0:
                    out[: len(basis[k]), j] += self.coef[k, j] * basis[k]
        return FiberFamily(out, self.weights, self.base_degree, self.provenance)


@dataclass(frozen=True)
class PencilFamily:
    """The family ``A(t) - s B(t)`` of covering degree ``d_L``."""

    A: ComplexPoly
    B: ComplexPoly
    d_L: int
    base_degree: int = 0
    provenance: str = ""
    A_exact: RatPoly | None = None
    B_exact: RatPoly | None = None

    def __post_init__(self):
        n = self.d_L
        if max(self.A.degree, self.B.degree) > n:
            raise ValueError("pencil member exceeds the covering degree")
        if self.A.degree < n and self.B.degree < n:
            raise ValueError("t = oo is a base point of the pencil")
        if n >= 1:
            a = [self.A[k] for k in range(n + 1)]
            b = [self.B[k] for k in range(n + 1)]
            sa = max(abs(x) for x in a)
            sb = max(abs(x) for x in b)
            res = linalg_det_resultant(a, b)
            if abs(res) <= 1e-12 * (sa * sb) ** n:
                raise ValueError("A and B have a common root")

    @classmethod
    def from_polys(cls, A, B, provenance="pencil"):
        A_exact = A if isinstance(A, RatPoly) else None
        B_exact = B if isinstance(B, RatPoly) else None
        A, B = as_complex(A), as_complex(B)
        return cls(A, B, max(A.degree, B.degree), 0, provenance, A_exact, B_exact)

    @property
    def exact(self) -> bool:
        return self.A_exact is not None and self.B_exact is not None

    def family(self) -> FiberFamily:
        n = self.d_L
        coef = np.zeros((n + 1, 2), dtype=complex)
        coef[:, 0] = [self.A[k] for k in range(n + 1)]
        coef[:, 1] = [-self.B[k] for k in range(n + 1)]
        return FiberFamily(coef, (1,) * (n + 1), self.base_degree, self.provenance)


def linalg_det_resultant(a, b):
    from .polynomial import sylvester_matrix

    return complex(np.linalg.det(np.array(sylvester_matrix(a, b), dtype=complex)))


def _as_family(obj) -> FiberFamily:
    return obj.family() if isinstance(obj, PencilFamily) else obj


# ---------------------------------------------------------------- pencils


def _section(H, forms, zero):
    acc = zero
    for h, f in zip(H, forms):
        if h != 0:
            acc = acc + f * h
    return acc


def make_pencil(curve: RationalCurveMap, center: ProjectionCenter, mode: str = "auto") -> PencilFamily:
    """Restrict the pencil of hyperplanes through ``center`` to ``curve``.

    ``mode`` is ``"exact"``, ``"float"`` or ``"auto"`` (exact when both
    curve and center carry rational data).
    """
    if len(center.H0) != curve.r + 1:
        raise ValueError("center lives in a different projective space")
    if mode == "auto":
        mode = "exact" if curve.exact and center.exact else "float"
    d = curve.degree
    if mode == "exact":
        forms = [f if f.exact else RatPoly([Fraction(complex(c).real) for c in f]) for f in curve.forms]
        H0 = [Fraction(h) if not isinstance(h, complex) else Fraction(h.real) for h in center.H0]
        H1 = [Fraction(h) if not isinstance(h, complex) else Fraction(h.real) for h in center.H1]
        A, B = _section(H0, forms, RatPoly()), _section(H1, forms, RatPoly())
    else:
        forms = [as_complex(f) for f in curve.forms]
        A = _section([complex(h) for h in center.H0], forms, ComplexPoly())
        B = _section([complex(h) for h in center.H1], forms, ComplexPoly())
        A, B = A.normalize(), B.normalize()
    if A.is_zero() and B.is_zero():
        raise CenterContainsCurveComponent("both hyperplanes contain the curve")
    if A.is_zero() or B.is_zero():
        raise CenterContainsCurveComponent("a hyperplane of the center contains the curve")
    try:
        g = gcd(A, B)
    except IllConditioned as exc:
        raise ExactModeRequired(str(exc)) from exc
    if g.degree > 0:
        A, B = A // g, B // g
    at_infinity = min(d - g.degree - A.degree, d - g.degree - B.degree)
    base_degree = g.degree + at_infinity
    d_L = d - base_degree
    prov = f"curve {curve.name or 'rational'} (r={curve.r}, d={d}) projected from {mode} center"
    if mode == "exact":
        return PencilFamily(A.to_complex(), B.to_complex(), d_L, base_degree, prov, A, B)
    return PencilFamily(A, B, d_L, base_degree, prov)


def _orthonormal_frame(x0: np.ndarray, rng: np.random.Generator):
    """Two orthonormal vectors spanning a random plane complementary to x0."""
    x0 = x0 / np.linalg.norm(x0)
    q = np.column_stack([x0, rng.standard_normal(3) + 1j * rng.standard_normal(3), rng.standard_normal(3)])
    basis, _ = np.linalg.qr(q)
    return basis[:, 1], basis[:, 2]


def make_pencil_implicit(curve: PlaneCurveImplicit, x0, seed: int = 0, retries: int = 5) -> FiberFamily:
    """Fiber family of the projection of a plane curve from ``x0``.

    Lines through ``x0`` are ``base + s*direction`` joined to ``x0``; on each
    line the point ``base + s*direction + u*x0`` has affine coordinate ``u``
    with ``x0`` itself at ``u = oo``. The ``u``-degree drops from ``d`` to
    ``d - mult_x0(C)``, which removes the pivot point when ``x0`` is on C.
    """
    x0 = np.array([complex(v) for v in x0], dtype=complex)
    if len(x0) == 2:
        x0 = np.append(x0, 1.0)
    x0 = x0 / np.linalg.norm(x0)
    d = curve.degree
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        base, direction = _orthonormal_frame(x0, rng)
        coef = curve.restrict(base, direction, x0)
        scale = np.max(np.abs(coef))
        n = d
        while n >= 0 and np.max(np.abs(coef[n])) <= 1e-10 * scale:
            n -= 1
        if n < 0:
            raise DegenerateDirection("curve restricts to zero")
        coef = coef[: n + 1].copy()
        # entries below the threshold are rounding residue of an exact zero
        coef[np.abs(coef) <= 1e-13 * scale] = 0
        fam = FiberFamily(coef, tuple(d - k for k in range(n + 1)), d - n, f"plane curve {curve.name or ''} projected from point")
        if n >= 2:
            at_inf = ComplexPoly(fam.at_infinity()).normalize()
            if at_inf.degree < n - 1 or abs(discriminant(at_inf)) <= 1e-8 * at_inf.max_abs() ** (2 * at_inf.degree - 2):
                continue
        return fam
    raise DegenerateDirection("no admissible line frame found")


def point_multiplicity(curve: PlaneCurveImplicit, x0, seed: int = 0) -> int:
    return make_pencil_implicit(curve, x0, seed).base_degree


# ---------------------------------------------------------------- osculation


def _rank(rows, exact):
    return linalg.exact_rank(rows) if exact else linalg.float_rank(rows)


def osculating_kplane(curve: RationalCurveMap, t0, k: int):
    """The osculating ``k``-plane at ``t0`` as ``r - k`` hyperplanes.

    Kernel of the ``(k+1) x (r+1)`` matrix of Taylor coefficients of the
    forms at ``t0``. Raises ``RankDeficient`` at points where that matrix
    drops rank.
    """
    r = curve.r
    if not 1 <= k <= r - 1:
        raise ValueError("need 1 <= k <= r - 1")
    exact = curve.exact and (_is_inf(t0) or _is_rational(t0))
    rows = curve.taylor_rows(t0, k + 1)
    if exact:
        rank = linalg.exact_rank(rows)
    else:
        rows = [[complex(x) for x in row] for row in rows]
        rank = linalg.float_rank(rows)
    if rank != k + 1:
        raise RankDeficient(f"derivative matrix has rank {rank}, expected {k + 1}", rank)
    if exact:
        return [tuple(v) for v in linalg.exact_nullspace(rows)]
    return [tuple(v) for v in linalg.float_nullspace(rows)]


def ramification_sequence(curve: RationalCurveMap, t0):
    """``(alpha_0, ..., alpha_r)``: the vanishing orders of hyperplane sections
    at ``t0`` are ``alpha_i + i``."""
    exact = curve.exact and (_is_inf(t0) or _is_rational(t0))
    rows = curve.taylor_rows(t0, curve.degree + 1)
    if not exact:
        rows = [[complex(x) for x in row] for row in rows]
    orders = []
    prev = 0
    for j in range(len(rows)):
        rank = _rank(rows[: j + 1], exact)
        if rank > prev:
            orders.append(j)
            prev = rank
        if prev == curve.r + 1:
            break
    return tuple(a - i for i, a in enumerate(orders))


# ---------------------------------------------------------------- fibers


@dataclass(frozen=True)
class FiberPoint:
    root: complex
    multiplicity: int
    estimate: float = field(default=math.nan, compare=False)


def cluster_roots(z: Sequence[complex], delta: float | None = None, factor: float | None = None):
    """Group numerically coincident roots.

    A group of ``k`` roots is accepted as one ``k``-fold root when its
    diameter is at most ``factor * delta**(1/k)`` relative to ``1 + |c|``,
    ``c`` the group centroid; groups are taken top-down from a single-linkage
    tree.
    Raises ``AmbiguousCluster`` when accepted groups sit closer than three
    times their own radius.
    """
    delta = CLUSTER_DELTA if delta is None else delta
    factor = CLUSTER_FACTOR if factor is None else factor
    z = np.asarray(z, dtype=complex)
    m = len(z)
    if m == 0:
        return []

    def radius(idx):
        scale = 1.0 + abs(z[idx].mean())
        return min(factor * delta ** (1.0 / len(idx)), CLUSTER_CAP) * scale

    if m == 1:
        return [[0]]
    tree = linkage(np.column_stack([z.real, z.imag]), method="single")
    members = {i: [i] for i in range(m)}
    for row, (a, b, _, _) in enumerate(tree):
        members[m + row] = members[int(a)] + members[int(b)]

    def diameter(idx):
        pts = z[idx]
        return np.max(np.abs(pts[:, None] - pts[None, :]))

    groups = []
    stack = [2 * m - 2]
    while stack:
        node = stack.pop()
        idx = members[node]
        if len(idx) == 1 or diameter(idx) <= radius(idx):
            groups.append(sorted(idx))
        else:
            a, b = tree[node - m, :2]
            stack.extend([int(a), int(b)])
    groups.sort()
    for g in groups:
        if len(g) == 1:
            continue
        rad = radius(g)
        others = [i for i in range(m) if i not in g]
        if others:
            gap = np.min(np.abs(z[g][:, None] - z[others][None, :]))
            if gap < 3 * rad:
                raise AmbiguousCluster(f"cluster of {len(g)} roots lies {gap:.3g} from another root")
    return groups


def _winding_count(p: ComplexPoly, center: complex, rho: float, samples: int = 128) -> float:
    w = center + rho * np.exp(2j * np.pi * np.arange(samples) / samples)
    arr = p.array[::-1]
    val = np.polyval(arr, w)
    der = np.polyval(np.polyder(arr), w)
    return float(np.mean((w - center) * der / val).real)


def fiber_points(poly: ComplexPoly, formal_degree: int, delta: float | None = None):
    """Clustered roots of ``poly`` with a point at ``oo`` for a degree drop."""
    p = poly.normalize()
    out = []
    if p.degree >= 1:
        z = roots_all(p)
        groups = cluster_roots(z, delta)
        centers = [complex(np.mean(z[g])) for g in groups]
        for g, c in zip(groups, centers):
            others = [abs(z[i] - c) for i in range(len(z)) if i not in g]
            spread = max(abs(z[i] - c) for i in g)
            rho = 0.4 * min(others) if others else 1.0 + abs(c)
            rho = max(rho, 4 * spread)
            out.append(FiberPoint(c, len(g), _winding_count(p, c, rho)))
    drop = formal_degree - max(p.degree, 0)
    if drop > 0:
        out.append(FiberPoint(INF, drop, float(drop)))
    return out


def fiber_multiplicities(pencil, s):
    """Roots of the fiber over ``s`` with multiplicities summing to ``d_L``."""
    fam = _as_family(pencil)
    if _is_inf(s):
        return fiber_points(ComplexPoly(fam.at_infinity()), fam.n)
    return fiber_points(fam.fiber_poly(s), fam.n)


def branch_multiplicity(pencil, s) -> int:
    """``sum (m_P - 1)`` over the fiber; zero off the branch locus."""
    return sum(p.multiplicity - 1 for p in fiber_multiplicities(pencil, s))
