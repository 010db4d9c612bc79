"""Univariate polynomials over floating complex numbers and exact rationals.

Coefficients are stored in ascending order of powers. ``ComplexPoly`` uses
double precision and tolerance-based decisions; ``RatPoly`` uses
``fractions.Fraction`` and is decisive. Both share the arithmetic in
``_Poly``, which is written against plain Python numbers so that the same
code serves either coefficient field.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import IllConditioned, DegenerateLeading, NonConvergence

NORMALIZATION_RTOL = 1e-12
GCD_ZERO_RTOL = 1e-10
GCD_KEEP_RTOL = 1e-6
SQUARE_RTOL = 1e-8
_EPS = np.finfo(float).eps


class _Poly:
    __slots__ = ("coeffs",)

    exact = False

    def __init__(self, coeffs=()):
        c = [self._coerce(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self._coerce(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self._coerce(0)

    def _wrap(self, other):
        if isinstance(other, _Poly):
            return other
        return type(self)([other])

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self), len(other))
        return type(self)([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            return type(self)([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return type(self)()
        out = [self._coerce(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = type(self)([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, _Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self):
        return type(self)([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lead if not self.exact else Fraction(1) / self.lead)

    def divmod(self, other):
        """Long division; returns ``(quotient, remainder)``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other)
        if dq < 0:
            return type(self)(), self
        quo = [self._coerce(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        return type(self)(quo), type(self)(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def reversed(self, degree=None):
        """Coefficients of ``t^degree * p(1/t)``."""
        n = self.degree if degree is None else degree
        c = list(self.coeffs) + [self._coerce(0)] * (n + 1 - len(self))
        return type(self)(c[::-1])

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"


class ComplexPoly(_Poly):
    """Polynomial with double-precision complex coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        return complex(x)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def normalize(self, rtol=NORMALIZATION_RTOL):
        """Drop top coefficients below ``rtol`` times the largest modulus."""
        c = list(self.coeffs)
        scale = self.max_abs()
        while c and abs(c[-1]) <= rtol * scale:
            c.pop()
        return ComplexPoly(c)

    def __call__(self, z):
        if isinstance(z, np.ndarray):
            return np.polyval(self.array[::-1], z)
        return super().__call__(z)


class RatPoly(_Poly):
    """Polynomial with exact rational coefficients."""

    __slots__ = ()
    exact = True

    @staticmethod
    def _coerce(x):
        if isinstance(x, complex):
            if x.imag:
                raise TypeError("RatPoly coefficients must be rational")
            x = x.real
        return Fraction(x)

    def to_complex(self) -> ComplexPoly:
        return ComplexPoly([complex(float(c)) for c in self.coeffs])

    def normalize(self, rtol=None):
        return self


def as_complex(p) -> ComplexPoly:
    if isinstance(p, RatPoly):
        return p.to_complex()
    if isinstance(p, ComplexPoly):
        return p
    return ComplexPoly(p)


# ---------------------------------------------------------------- roots


def _upper_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _initial_guesses(a: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of ``a``."""
    n = len(a) - 1
    pts = [(k, math.log(abs(c))) for k, c in enumerate(a) if c != 0]
    hull = _upper_hull(pts)
    z = []
    for (i, _), (j, _) in zip(hull, hull[1:]):
        m = j - i
        r = (abs(a[i]) / abs(a[j])) ** (1.0 / m)
        for q in range(m):
            theta = 2 * math.pi * q / m + 2 * math.pi * i / n + 0.7
            z.append(r * cmath.exp(1j * theta))
    return np.array(z, dtype=complex)


def roots_all(p, maxiter: int = 200) -> np.ndarray:
    """All ``deg p`` complex roots by Aberth-Ehrlich iteration.

    Multiple roots come back as clusters of nearby values. Raises
    ``NonConvergence`` if the residual bound is not met after ``maxiter``
    sweeps.
    """
    p = as_complex(p).normalize()
    n = p.degree
    if n < 1:
        raise ValueError("roots_all needs degree >= 1")
    c = p.array
    k0 = int(np.argmax(c != 0))
    zero_roots = np.zeros(k0, dtype=complex)
    c = c[k0:]
    m = len(c) - 1
    if m == 0:
        return zero_roots
    if m == 1:
        return np.concatenate([zero_roots, [-c[0] / c[1]]])

    a = c / c[-1]
    desc = a[::-1]
    ddesc = np.polyder(desc)
    absdesc = np.abs(desc)
    z = _initial_guesses(a)
    done = np.zeros(m, dtype=bool)
    for _ in range(maxiter):
        pz = np.polyval(desc, z)
        bound = 8 * _EPS * np.polyval(absdesc, np.abs(z))
        done |= np.abs(pz) <= bound
        if done.all():
            break
        act = np.flatnonzero(~done)
        dpz = np.polyval(ddesc, z[act])
        dpz[dpz == 0] = _EPS
        ratio = pz[act] / dpz
        diff = z[act, None] - z[None, :]
        diff[np.arange(len(act)), act] = np.inf
        s = np.sum(1.0 / diff, axis=1)
        w = ratio / (1.0 - ratio * s)
        z[act] -= w
        done[act] |= np.abs(w) <= 4 * _EPS * np.abs(z[act])

    scale = np.max(np.abs(a))
    resid = np.abs(np.polyval(desc, z))
    allowed = 1e-10 * scale * np.maximum(1.0, np.abs(z)) ** m
    if not np.all(resid <= allowed):
        raise NonConvergence(f"Aberth iteration did not converge in {maxiter} sweeps")
    return np.concatenate([zero_roots, z])


# ---------------------------------------------------------------- gcd


def gcd(p, q):
    """Monic greatest common divisor.

    Exact Euclid for ``RatPoly``; for ``ComplexPoly`` a remainder is treated
    as zero below ``GCD_ZERO_RTOL`` (relative to the terms it came from) and
    ``IllConditioned`` is raised inside the band up to ``GCD_KEEP_RTOL``.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if p.exact and q.exact:
        a, b = p, q
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    a, b = as_complex(p).normalize(), as_complex(q).normalize()
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return a.monic()
    a = a * (1 / a.max_abs())
    b = b * (1 / b.max_abs())
    while True:
        if b.degree == 0:
            return ComplexPoly([1])
        quo, rem = a.divmod(b)
        ref = max(a.max_abs(), quo.max_abs() * b.max_abs())
        nu = rem.max_abs() / ref
        if nu < GCD_ZERO_RTOL:
            return b.monic()
        if nu <= GCD_KEEP_RTOL:
            raise IllConditioned(f"remainder norm {nu:.3g} inside ambiguity band")
        rem = ComplexPoly([c for c in rem.coeffs])
        rem = rem.normalize(GCD_ZERO_RTOL)
        a, b = b, rem * (1 / rem.max_abs())


# ---------------------------------------------------------------- resultants


def _fraction_det(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def sylvester_matrix(pc: Sequence, qc: Sequence):
    """Sylvester matrix of two ascending coefficient lists of formal degree
    ``len - 1`` each."""
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n
    zero = pc[0] * 0
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        rows.append(row)
    return rows


def _resultant_coeffs(pc, qc, exact):
    m, n = len(pc) - 1, len(qc) - 1
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m
    rows = sylvester_matrix(pc, qc)
    if exact:
        return _fraction_det(rows)
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def resultant(p, q):
    """Sylvester resultant ``lead(p)^deg q * lead(q)^deg p * prod(a_i - b_j)``."""
    exact = p.exact and q.exact
    if not exact:
        p, q = as_complex(p).normalize(), as_complex(q).normalize()
    if p.is_zero() or q.is_zero():
        return Fraction(0) if exact else 0j
    return _resultant_coeffs(list(p.coeffs), list(q.coeffs), exact)


def discriminant(p, degree: int | None = None):
    """Discriminant of ``p`` viewed as a form of formal degree ``degree``."""
    n = p.degree if degree is None else degree
    c = list(p.coeffs) + [p._coerce(0)] * (n + 1 - len(p))
    if c[n] == 0:
        raise DegenerateLeading("formal leading coefficient vanishes")
    if n == 1:
        return p._coerce(1)
    dc = [k * c[k] for k in range(1, n + 1)]
    res = _resultant_coeffs(c, dc, p.exact)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / c[n]


def interpolate_on_circle(values: np.ndarray, radius: float) -> np.ndarray:
    """Coefficients of the polynomial taking ``values`` at ``radius * w^k``
    where ``w`` is the primitive ``len(values)``-th root of unity."""
    n = len(values)
    scaled = np.fft.fft(values) / n
    return scaled / radius ** np.arange(n)


def _trim_scaled(coeffs: np.ndarray, radius: float, rtol=NORMALIZATION_RTOL):
    scaled = np.abs(coeffs) * radius ** np.arange(len(coeffs))
    top = scaled.max()
    k = len(coeffs)
    while k > 0 and scaled[k - 1] <= rtol * top:
        k -= 1
    return coeffs[:k]


def _lagrange_exact(xs, ys) -> RatPoly:
    out = RatPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = RatPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RatPoly([-xj, 1])
                denom *= xi - xj
        out = out + basis * (yi / denom)
    return out


def discriminant_in_s(A, B):
    """Discriminant of ``A(t) - s B(t)`` with respect to ``t``, as a polynomial
    in ``s`` of degree at most ``2 d_L - 2``.

    Floating mode samples the Sylvester determinant at ``2 d_L - 1`` scaled
    roots of unity and interpolates; exact mode interpolates at integers.
    """
    n = max(A.degree, B.degree)
    if n < 2:
        raise ValueError("discriminant_in_s needs d_L >= 2")
    N = 2 * n - 1
    if A.exact and B.exact:
        xs, ys = [], []
        s = 0
        while len(xs) < N:
            ps = A - B * Fraction(s)
            if ps[n] != 0:
                xs.append(Fraction(s))
                ys.append(discriminant(ps, n))
            s += 1
            if s > N + 2:
                raise DegenerateLeading("leading coefficient vanishes at all nodes")
        return _lagrange_exact(xs, ys)

    A, B = as_complex(A), as_complex(B)
    radius = 1.0 + A.max_abs() / max(B.max_abs(), _EPS)
    nodes = radius * np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.empty(N, dtype=complex)
    lead_a, lead_b = A[n], B[n]
    for k, s in enumerate(nodes):
        if abs(lead_a - s * lead_b) <= NORMALIZATION_RTOL * max(abs(lead_a), abs(s * lead_b)):
            raise DegenerateLeading("leading coefficient vanishes at an interpolation node")
        vals[k] = discriminant(A - B * s, n)
    return ComplexPoly(_trim_scaled(interpolate_on_circle(vals, radius), radius))


# ---------------------------------------------------------------- squares


class SquarePart(NamedTuple):
    root: _Poly
    is_square: bool
    defect: float


def square(g):
    return g * g


def perfect_square_part(p) -> SquarePart:
    """Decide whether ``p = lead(p) * g^2`` and return the monic ``g``.

    The root is built from the top half of the coefficients and then checked
    against the full polynomial. Exact inputs give a decisive answer with
    ``defect == 0``; floating inputs report the relative coefficient defect
    as the confidence margin and call it a square below ``SQUARE_RTOL``.
    """
    p = p.normalize()
    if p.is_zero():
        raise ValueError("perfect_square_part of zero")
    cls = type(p)
    n = p.degree
    if n % 2:
        return SquarePart(cls(), False, math.inf)
    k = n // 2
    h = p.monic()
    g = [p._coerce(0)] * (k + 1)
    g[k] = p._coerce(1)
    for j in range(1, k + 1):
        acc = h[n - j]
        for i in range(1, j):
            acc -= g[k - i] * g[k - j + i]
        g[k - j] = acc / 2
    root = cls(g)
    diff = root * root - h
    if p.exact:
        ok = diff.is_zero()
        return SquarePart(root, ok, 0.0 if ok else math.inf)
    defect = diff.max_abs() / max(h.max_abs(), _EPS)
    return SquarePart(root, defect <= SQUARE_RTOL, float(defect))
