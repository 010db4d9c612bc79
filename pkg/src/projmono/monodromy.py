"""Branch points, loops around them, fiber tracking and the monodromy group.

The covering is handled in working coordinates obtained by random Mobius
changes of ``s`` and ``u`` chosen so that no fiber point sits at ``u = oo``
for finite ``s`` and ``s = oo`` is not a branch point. Loops then live in
the finite ``s``-plane and their permutations multiply to the identity.
"""

from __future__ import annotations

import cmath
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np
import numpy.polynomial.polynomial as npp

from . import curve as _curve
from .curve import (
    INF,
    FiberFamily,
    FiberPoint,
    _as_family,
    cluster_roots,
    fiber_points,
    make_pencil,
)
from .errors import (
    AmbiguousCluster,
    AmbiguousMatching,
    NewtonDivergence,
    NumericFailure,
    PathCollision,
    VerificationFailure,
)
from .permgroup import GroupClass, Perm, PermutationGroup
from .polynomial import ComplexPoly, roots_all

log = logging.getLogger(__name__)

LOOP_RADIUS_FACTOR = 0.4
MATCH_RATIO = 0.3
MAX_ATTEMPTS = 5
MAX_RADIUS_HALVINGS = 4


# ---------------------------------------------------------------- branch points


@dataclass(frozen=True)
class BranchPointSet:
    points: tuple
    multiplicities: tuple
    includes_infinity: bool = False
    infinity_multiplicity: int = 0
    min_separation: float = math.inf

    def __len__(self):
        return len(self.points)


def _dedup_roots(poly: ComplexPoly):
    """Cluster centroids and cluster sizes of the roots of ``poly``."""
    if poly.degree < 1:
        return [], []
    z = roots_all(poly)
    groups = cluster_roots(z)
    return [complex(np.mean(z[g])) for g in groups], [len(g) for g in groups]


def _min_separation(points) -> float:
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 2:
        return math.inf
    d = np.abs(pts[:, None] - pts[None, :])
    d[np.diag_indices(len(pts))] = np.inf
    return float(d.min())


def _is_pencil(fam: FiberFamily) -> bool:
    return fam.coef.shape[1] == 2 and set(fam.weights) == {1}


def _group_values(values, rtol=1e-8):
    """Merge values that agree to ``rtol``; returns centroids and counts."""
    values = list(values)
    groups = []
    for v in values:
        for g in groups:
            if abs(v - g[0]) <= rtol * (1 + abs(g[0])):
                g[1].append(v)
                break
        else:
            groups.append([v, [v]])
    return [complex(np.mean(g[1])) for g in groups], [len(g[1]) for g in groups]


def critical_values(fam: FiberFamily):
    """Branch points of ``c0(u) + s c1(u)`` as values ``-c0/c1`` at the roots
    of the Wronskian ``c0' c1 - c0 c1'``; a point over which ``k`` Wronskian
    roots lie is a ``k``-fold root of the discriminant. Critical points with
    ``c1 = 0`` lie over ``s = oo`` and are counted separately."""
    c0, c1 = ComplexPoly(fam.coef[:, 0]), ComplexPoly(fam.coef[:, 1])
    w = (c0.derivative() * c1 - c0 * c1.derivative()).normalize()
    finite = []
    if w.degree >= 1:
        scale = 1.0 + c0.max_abs() / max(c1.max_abs(), 1e-300)
        for u in roots_all(w):
            den = c1(u)
            if abs(den) <= 1e-10 * c1.max_abs() * max(1.0, abs(u)) ** c1.degree:
                continue
            v = -c0(u) / den
            if abs(v) <= 1e10 * scale:
                finite.append(complex(v))
    pts, mult = _group_values(finite)
    return pts, mult


def _branch_locus(fam: FiberFamily):
    if _is_pencil(fam):
        return critical_values(fam)
    disc = fam.discriminant()
    if disc.is_zero():
        raise AmbiguousCluster("discriminant vanishes identically (non-reduced family)")
    return _dedup_roots(disc)


def compute_branch_points(pencil) -> BranchPointSet:
    """Roots of the discriminant in ``s`` with their multiplicities; a drop of
    the discriminant degree below its bound is the multiplicity at ``oo``."""
    fam = _as_family(pencil)
    pts, mult = _branch_locus(fam)
    at_inf = fam.discriminant_degree() - sum(mult)
    return BranchPointSet(tuple(pts), tuple(mult), at_inf > 0, at_inf, _min_separation(pts))


# ---------------------------------------------------------------- loops


@dataclass(frozen=True)
class Loop:
    """Segment from the basepoint to the circle around ``center``, one
    counterclockwise turn, and back."""

    center: complex
    radius: float
    basepoint: complex

    @property
    def entry(self) -> complex:
        v = self.basepoint - self.center
        return self.center + self.radius * v / abs(v)

    def pieces(self):
        e = self.entry
        theta = cmath.phase(e - self.center)
        return [
            ("line", self.basepoint, e),
            ("arc", self.center, self.radius, theta, theta + 2 * math.pi),
            ("line", e, self.basepoint),
        ]

    def shrink(self, factor=0.5) -> "Loop":
        return Loop(self.center, self.radius * factor, self.basepoint)


@dataclass(frozen=True)
class LoopPlan:
    basepoint: complex
    loops: tuple
    order: tuple  # indices of the input points, counterclockwise as seen from the basepoint


def _segment_distance(p, a, b) -> float:
    ab = b - a
    t = ((p - a) * ab.conjugate()).real / (abs(ab) ** 2)
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def build_loops(points, seed=0, tries: int = 64) -> LoopPlan:
    """Spider of loops around ``points`` from a basepoint outside their hull.

    The basepoint sits at twice the spread from the centroid at a seeded
    random angle; angles are redrawn while some segment passes too close to
    another point. Loop radius is ``0.4 *`` the distance to the nearest
    other point.
    """
    if isinstance(points, BranchPointSet):
        points = points.points
    pts = np.asarray(points, dtype=complex)
    if len(pts) == 0:
        raise ValueError("no points to loop around")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    centroid = complex(pts.mean())
    spread = float(np.max(np.abs(pts - centroid)))
    if spread == 0.0:
        spread = 1.0
    nearest = np.full(len(pts), np.inf)
    if len(pts) > 1:
        d = np.abs(pts[:, None] - pts[None, :])
        d[np.diag_indices(len(pts))] = np.inf
        nearest = d.min(axis=1)
    best = None
    for _ in range(tries):
        s0 = centroid + 2 * spread * cmath.exp(2j * math.pi * rng.random())
        radii = LOOP_RADIUS_FACTOR * np.minimum(nearest, np.abs(pts - s0))
        loops = [Loop(complex(p), float(r), s0) for p, r in zip(pts, radii)]
        clearance = math.inf
        for i, lp in enumerate(loops):
            for j, p in enumerate(pts):
                if j != i:
                    clearance = min(clearance, _segment_distance(p, s0, lp.entry) / radii[j])
        if best is None or clearance > best[0]:
            best = (clearance, s0, loops)
        if clearance >= 1.5:
            break
    _, s0, loops = best
    ref = centroid - s0
    angles = [cmath.phase((p - s0) / ref) for p in pts]
    order = tuple(sorted(range(len(pts)), key=lambda i: angles[i]))
    return LoopPlan(s0, tuple(loops[i] for i in order), order)


# ---------------------------------------------------------------- tracking


class _Path:
    def __init__(self, pieces):
        self.pieces = pieces
        self.lengths = []
        for pc in pieces:
            if pc[0] == "line":
                self.lengths.append(abs(pc[2] - pc[1]))
            else:
                self.lengths.append(pc[2] * abs(pc[4] - pc[3]))
        self.length = float(sum(self.lengths))

    def point(self, tau: float) -> complex:
        for pc, ln in zip(self.pieces, self.lengths):
            if tau <= ln or pc is self.pieces[-1]:
                f = min(tau / ln, 1.0) if ln > 0 else 1.0
                if pc[0] == "line":
                    return pc[1] + f * (pc[2] - pc[1])
                _, c, r, t0, t1 = pc
                return c + r * cmath.exp(1j * (t0 + f * (t1 - t0)))
            tau -= ln
        raise AssertionError("unreachable")


@dataclass
class TrackStats:
    steps: int = 0
    rejections: int = 0
    min_separation: float = math.inf


def _newton(fam: FiberFamily, s: complex, u: np.ndarray, sep: np.ndarray):
    c = fam.u_coeffs(s)[::-1]
    dc = np.polyder(c)
    absc = np.abs(c)
    prev = None
    for it in range(6):
        val = np.polyval(c, u)
        der = np.polyval(dc, u)
        if np.any(der == 0):
            return None
        delta = val / der
        step = np.abs(delta)
        if it == 0 and np.any(step > 0.25 * sep):
            return None
        if prev is not None and np.any(step > 0.5 * prev + 1e-14 * (1 + np.abs(u))):
            return None
        u = u - delta
        scale = np.polyval(absc, np.abs(u))
        resid = np.abs(np.polyval(c, u))
        if np.all(resid <= 1e-12 * scale) or np.all(step <= 1e-14 * (1 + np.abs(u))):
            return u
        prev = step
    return None


def _pairwise_min(u: np.ndarray) -> np.ndarray:
    if len(u) < 2:
        return np.full(len(u), np.inf)
    d = np.abs(u[:, None] - u[None, :])
    d[np.diag_indices(len(u))] = np.inf
    return d.min(axis=1)


def track_fiber(family, path, start_roots, h0=None, hmin=None, obstacles=(), stats: TrackStats | None = None):
    """Carry the roots of ``P(s, .)`` along ``path`` by Euler prediction and
    Newton correction with step halving.

    ``path`` is a ``Loop``, a list of pieces, or a pair ``(s_start, s_end)``.
    """
    fam = _as_family(family)
    if isinstance(path, Loop):
        rho = path.radius
        path = _Path(path.pieces())
    elif isinstance(path, tuple) and len(path) == 2 and not isinstance(path[0], str):
        path = _Path([("line", complex(path[0]), complex(path[1]))])
        rho = max(path.length, 1e-3)
    else:
        path = _Path(list(path))
        rho = max(path.length, 1e-3)
    h = rho / 16 if h0 is None else h0
    hmin = rho * 1e-6 if hmin is None else hmin
    obstacles = np.asarray(obstacles, dtype=complex)
    stats = stats if stats is not None else TrackStats()
    u = np.array(start_roots, dtype=complex)
    tau, L = 0.0, path.length
    s = path.point(0.0)
    while tau < L - 1e-15 * max(L, 1.0):
        hcap = L - tau
        if len(obstacles):
            hcap = min(hcap, 0.3 * float(np.min(np.abs(obstacles - s))))
        step = min(h, hcap)
        s_new = path.point(tau + step)
        c = fam.u_coeffs(s)[::-1]
        cs = fam.s_derivative_coeffs(s)[::-1]
        du = -np.polyval(cs, u) / np.polyval(np.polyder(c), u)
        guess = u + du * (s_new - s)
        sep = _pairwise_min(guess)
        new = _newton(fam, s_new, guess, sep)
        scale = 1.0 + np.max(np.abs(guess))
        if new is not None:
            gap = float(np.min(_pairwise_min(new))) if len(new) > 1 else math.inf
            if gap < 5 * _curve.EPS_CLUSTER * scale:
                new = None
        if new is None:
            stats.rejections += 1
            h = step / 2
            if h < hmin:
                gap = float(np.min(sep)) if len(sep) else math.inf
                if gap < _curve.EPS_CLUSTER * scale * 10:
                    raise PathCollision(f"roots within {gap:.3g} near s={s_new:.6g}")
                raise NewtonDivergence(f"corrector failed near s={s_new:.6g}")
            continue
        u, s, tau = new, s_new, tau + step
        stats.steps += 1
        stats.min_separation = min(stats.min_separation, float(np.min(_pairwise_min(u))) if len(u) > 1 else math.inf)
        h = step * 2
    return u


def permutation_from_loop(start_roots, end_roots, ratio: float | None = None) -> Perm:
    """``sigma(i) = j`` when the root that starts at position ``i`` ends at the
    start position of root ``j``."""
    ratio = MATCH_RATIO if ratio is None else ratio
    a = np.asarray(start_roots, dtype=complex)
    b = np.asarray(end_roots, dtype=complex)
    if len(a) != len(b):
        raise ValueError("fibers of different sizes")
    n = len(a)
    if n == 1:
        return Perm([0])
    d = np.abs(b[:, None] - a[None, :])
    img = []
    for i in range(n):
        order = np.argsort(d[i])
        first, second = d[i, order[0]], d[i, order[1]]
        if first > ratio * second:
            raise AmbiguousMatching(f"root {i}: nearest {first:.3g} vs second {second:.3g}")
        img.append(int(order[0]))
    if len(set(img)) != n:
        raise AmbiguousMatching("matching is not a bijection")
    return Perm(img)


# ---------------------------------------------------------------- monodromy


@dataclass(frozen=True)
class BranchPoint:
    s: complex
    multiplicity: int
    fiber: tuple
    permutation: Perm
    estimate: float

    @property
    def fiber_multiplicities(self) -> tuple:
        return tuple(sorted((p.multiplicity for p in self.fiber), reverse=True))


@dataclass
class MonodromyResult:
    d_L: int
    branch_points: list
    permutations: list
    start_fiber: np.ndarray
    group: PermutationGroup
    checks: dict
    diagnostics: dict = field(default_factory=dict)

    @property
    def classification(self) -> GroupClass:
        return self.group.classify()

    @property
    def riemann_hurwitz_sum(self) -> int:
        return sum(self.d_L - len(p.cycles(True)) for p in self.permutations)

    @property
    def genus(self) -> int:
        return (self.riemann_hurwitz_sum - 2 * self.d_L + 2) // 2


def _unitary_mobius(rng):
    """Random rotation of the Riemann sphere, ``z -> (z + w) / (1 - conj(w) z)``."""
    w = complex(rng.standard_normal(), rng.standard_normal())
    return (1.0, w, -w.conjugate(), 1.0)


def _apply(m, z):
    a, b, c, d = m
    if cmath.isinf(z):
        return a / c if c != 0 else INF
    den = c * z + d
    if abs(den) <= 1e-8 * (abs(c) * (1 + abs(z)) + abs(d)):
        return INF
    return (a * z + b) / den


def _compose(m1, m2):
    """Matrix of ``z -> m1(m2(z))``."""
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


@dataclass
class _Working:
    fam: FiberFamily
    s_map: tuple  # original s = s_map(working s)
    u_map: tuple  # original u = u_map(working u)


def _normalize(fam: FiberFamily, rng) -> _Working:
    ident = (1.0, 0.0, 0.0, 1.0)
    if len(set(fam.weights)) == 1 and fam.n >= 1:
        mu = _unitary_mobius(rng)
        fam = fam.mobius_u(*mu)
        lead = fam.coef[fam.n]
        if fam.coef.shape[1] == 2 and abs(lead[1]) > 1e-12 * np.max(np.abs(fam.coef)):
            # send the fiber containing u = oo to s = oo, then rotate
            s_pole = -lead[0] / lead[1]
            rot = cmath.exp(2j * math.pi * rng.random())
            ms = (s_pole * rot, 1.0, rot, 0.0)
            return _Working(fam.mobius_s(*ms), ms, mu)
        ms = _unitary_mobius(rng)
        return _Working(fam.mobius_s(*ms), ms, mu)
    ms = _unitary_mobius(rng)
    return _Working(fam.mobius_s(*ms), ms, ident)


def _loop_permutation(fam, loop: Loop, start, obstacles, stats):
    for attempt in range(MAX_RADIUS_HALVINGS + 1):
        try:
            end = track_fiber(fam, loop, start, obstacles=obstacles, stats=stats)
            return permutation_from_loop(start, end)
        except (PathCollision, AmbiguousMatching):
            if attempt == MAX_RADIUS_HALVINGS:
                raise
            loop = loop.shrink()
        except NewtonDivergence:
            if attempt == MAX_RADIUS_HALVINGS:
                raise
            loop = loop.shrink(0.75)
    raise AssertionError("unreachable")


def _partial(coef, a, b, s, u):
    c = coef
    if a:
        c = npp.polyder(c, m=a, axis=0) if c.shape[0] > a else np.zeros((1, 1))
    if b:
        c = npp.polyder(c, m=b, axis=1) if c.shape[1] > b else np.zeros((1, 1))
    return complex(npp.polyval2d(u, s, c))


def refine_branch_point(fam: FiberFamily, s: complex, limit: float) -> complex:
    """Polish a discriminant root using the fiber.

    The tightest group of ``k`` fiber roots marks a ``k``-fold point ``u``;
    Newton on ``d^(k-2)P/du = d^(k-1)P/du = 0`` in ``(s, u)`` is regular
    there. The refined value is kept only if it moved less than ``limit``.
    Ramification at ``u = oo`` sits on a root of the leading coefficient,
    which is returned instead.
    """
    lead = fam.lead_in_s()
    if lead.degree >= 1:
        r = roots_all(lead)
        best = complex(r[np.argmin(np.abs(r - s))])
        if abs(best - s) <= limit and fam.n - fam.fiber_poly(best).normalize().degree >= 2:
            return best
    p = fam.fiber_poly(s).normalize()
    if p.degree < 2:
        return s
    z = roots_all(p)
    d = np.abs(z[:, None] - z[None, :])
    d[np.diag_indices(len(z))] = np.inf
    i, j = np.unravel_index(np.argmin(d), d.shape)
    mid = (z[i] + z[j]) / 2
    near = np.abs(z - mid) <= 2 * d[i, j]
    k = max(2, int(near.sum()))
    u = complex(z[near].mean())
    coef = np.asarray(fam.coef)
    s_new = complex(s)
    for _ in range(30):
        f = np.array([_partial(coef, k - 2, 0, s_new, u), _partial(coef, k - 1, 0, s_new, u)])
        jac = np.array(
            [
                [_partial(coef, k - 2, 1, s_new, u), _partial(coef, k - 1, 0, s_new, u)],
                [_partial(coef, k - 1, 1, s_new, u), _partial(coef, k, 0, s_new, u)],
            ]
        )
        try:
            ds, du = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            return s
        s_new, u = s_new - ds, u - du
        if abs(ds) <= 1e-15 * (1 + abs(s_new)) and abs(du) <= 1e-15 * (1 + abs(u)):
            break
    if not np.isfinite(s_new) or abs(s_new - s) > limit:
        return s
    return s_new


def _attempt(fam: FiberFamily, rng, seed_label) -> MonodromyResult:
    eps = _curve.EPS_CLUSTER
    work = _normalize(fam, rng)
    wf = work.fam
    n = wf.n
    bound = wf.discriminant_degree()
    raw, raw_mult = _branch_locus(wf)
    if sum(raw_mult) < bound:
        raise AmbiguousCluster("s = oo is a branch point in working coordinates")
    # affine recentring keeps oo fixed and puts the branch points at unit scale
    raw = np.repeat(np.array(raw, dtype=complex), raw_mult)
    center = complex(np.mean(raw))
    spread = float(np.median(np.abs(raw - center))) or 1.0
    aff = (spread, center, 0.0, 1.0)
    work = _Working(wf.mobius_s(*aff), _compose(work.s_map, aff), work.u_map)
    wf = work.fam
    pts, mult = _branch_locus(wf)
    if not _is_pencil(wf):
        sep = _min_separation(pts)
        pts = [refine_branch_point(wf, p, 0.1 * min(sep, 1.0 + abs(p))) for p in pts]

    fibers, estimates, fiber_bm = [], [], []
    singular = set()
    for i, (s, m) in enumerate(zip(pts, mult)):
        fib = fiber_points(wf.fiber_poly(s), n)
        bm = sum(p.multiplicity - 1 for p in fib)
        est = sum(p.estimate - 1 for p in fib)
        # a line through a singular point of a plane curve raises the
        # discriminant order without ramifying; the loop check still applies
        if bm < m and not _is_pencil(wf):
            singular.add(i)
        elif bm != m:
            raise AmbiguousCluster(f"fiber over {s:.6g} has branch multiplicity {bm}, discriminant says {m}")
        fibers.append(fib)
        estimates.append(est)
        fiber_bm.append(bm)

    lead = wf.lead_in_s()
    poles = []
    if lead.degree >= 1:
        for p in roots_all(lead):
            if not pts or np.min(np.abs(np.array(pts) - p)) > 1e-6 * (1 + abs(p)):
                poles.append(complex(p))
    obstacles = list(pts) + poles
    plan = build_loops(obstacles, rng)
    base_poly = wf.fiber_poly(plan.basepoint)
    start = roots_all(base_poly)
    scale = 1.0 + np.max(np.abs(start))
    if len(start) > 1 and np.min(_pairwise_min(start)) <= 10 * eps * scale:
        raise PathCollision("basepoint fiber is not simple")

    stats = TrackStats()
    obs = np.array(obstacles, dtype=complex)
    perms = {}
    for idx, loop in zip(plan.order, plan.loops):
        perms[idx] = _loop_permutation(wf, loop, start, obs, stats)

    ordered = [perms[i] for i in plan.order]
    product = Perm.identity(n)
    for p in ordered:
        product = product * p
    checks = {"product_relation": product.is_identity()}

    cycle_ok = True
    for i in range(len(pts)):
        if i in singular:
            # branches through a singular point are not resolved by the fiber,
            # so only bound the ramification the fiber allows
            cyc = perms[i].cycles(True)
            if n - len(cyc) > fiber_bm[i] or len(cyc) < len(fibers[i]):
                cycle_ok = False
            continue
        expected = tuple(sorted((p.multiplicity for p in fibers[i]), reverse=True))
        if perms[i].cycle_type() != expected:
            cycle_ok = False
    for i in range(len(pts), len(obstacles)):
        if not perms[i].is_identity():
            cycle_ok = False
    checks["cycle_type_match"] = cycle_ok
    if not checks["product_relation"]:
        raise VerificationFailure("loop permutations do not multiply to the identity", "product_relation")
    if not cycle_ok:
        raise VerificationFailure("cycle type differs from fiber multiplicities", "cycle_type_match")

    rh = sum(n - len(perms[i].cycles(True)) for i in range(len(pts)))
    est_ok = all(abs(e - round(e)) <= 0.1 and round(e) == m for e, m in zip(estimates, fiber_bm))
    checks["multiplicities_integral"] = est_ok
    checks["riemann_hurwitz_sum"] = rh
    checks["riemann_hurwitz_matches_discriminant"] = rh == sum(mult)
    checks["riemann_hurwitz_parity"] = (rh - 2 * n + 2) % 2 == 0 and rh >= 2 * n - 2
    # a pencil on a rational curve covers P^1 by P^1: genus zero
    checks["riemann_hurwitz"] = rh == 2 * n - 2 if _is_pencil(fam) else checks["riemann_hurwitz_parity"]
    checks["genus"] = (rh - 2 * n + 2) // 2

    branch_points = []
    for i in plan.order:
        if i >= len(pts) or (i in singular and perms[i].is_identity()):
            continue
        s_orig = _apply(work.s_map, pts[i])
        fib = tuple(FiberPoint(_apply(work.u_map, p.root), p.multiplicity, p.estimate) for p in fibers[i])
        m = n - len(perms[i].cycles(True)) if i in singular else mult[i]
        branch_points.append(BranchPoint(s_orig, m, fib, perms[i], estimates[i]))
    branch_perms = [bp.permutation for bp in branch_points]
    group = PermutationGroup(branch_perms or [Perm.identity(n)], n)
    diagnostics = {
        "seed": seed_label,
        "tracking_steps": stats.steps,
        "rejected_steps": stats.rejections,
        "min_root_separation": stats.min_separation,
        "poles": len(poles),
        "singular_lines": len(singular),
        "basepoint": plan.basepoint,
    }
    return MonodromyResult(n, branch_points, branch_perms, start, group, checks, diagnostics)


def monodromy(pencil, seed=0) -> MonodromyResult:
    """Monodromy of a pencil or fiber family.

    Numeric failures trigger fresh random coordinates, up to ``MAX_ATTEMPTS``
    tries; the last failure propagates.
    """
    fam = _as_family(pencil)
    n = fam.n
    t0 = time.perf_counter()
    if n < 2:
        group = PermutationGroup([Perm.identity(max(n, 1))], max(n, 1))
        checks = {
            "product_relation": True,
            "cycle_type_match": True,
            "multiplicities_integral": True,
            "riemann_hurwitz_sum": 0,
            "riemann_hurwitz_matches_discriminant": True,
            "riemann_hurwitz_parity": True,
            "riemann_hurwitz": True,
            "genus": 0,
        }
        return MonodromyResult(n, [], [], np.array([]), group, checks, {"seed": seed, "attempts": 0})
    rng = np.random.default_rng(seed)
    last = None
    for attempt in range(MAX_ATTEMPTS):
        try:
            res = _attempt(fam, rng, seed)
            res.diagnostics["attempts"] = attempt + 1
            res.diagnostics["elapsed_s"] = time.perf_counter() - t0
            return res
        except (NumericFailure, VerificationFailure) as exc:
            log.info("monodromy attempt %d failed: %s", attempt + 1, exc)
            last = exc
    raise last


@dataclass(frozen=True)
class LineReport:
    tag: str
    order: int
    block_sizes: list
    decomposable: bool
    d_L: int
    result: MonodromyResult


def classify_line(curve, center, seed=0, mode: str = "auto") -> LineReport:
    """Project ``curve`` from ``center`` and classify the monodromy group.

    ``curve`` is a ``RationalCurveMap`` with a ``ProjectionCenter``, or a
    ``PlaneCurveImplicit`` with a point of the plane.
    """
    from .curve import PlaneCurveImplicit, make_pencil_implicit

    if isinstance(curve, PlaneCurveImplicit):
        family = make_pencil_implicit(curve, center, seed)
    else:
        family = make_pencil(curve, center, mode)
    res = monodromy(family, seed)
    cls = res.classification
    return LineReport(cls.tag, cls.order, cls.block_sizes, cls.decomposable, res.d_L, res)
