import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projmono.constructions import grassmannian_sampler, osculating_center, twisted_cubic
from projmono.curve import PencilFamily, PlaneCurveImplicit, make_pencil, make_pencil_implicit
from projmono.errors import AmbiguousMatching
from projmono.monodromy import (
    Loop,
    build_loops,
    classify_line,
    compute_branch_points,
    monodromy,
    permutation_from_loop,
    track_fiber,
)
from projmono.permgroup import Perm
from projmono.polynomial import ComplexPoly, roots_all


def _pencil(a, b):
    return PencilFamily.from_polys(ComplexPoly(a), ComplexPoly(b))


def test_square_map_branch_points():
    bp = compute_branch_points(_pencil([0, 0, 1], [1]))
    assert np.allclose(bp.points, [0]) and bp.multiplicities == (1,)
    assert bp.includes_infinity and bp.infinity_multiplicity == 1


def test_chebyshev_cubic_branch_points():
    # t^3 - 3t has critical values -2 and 2; oo is totally ramified
    bp = compute_branch_points(_pencil([0, -3, 0, 1], [1]))
    assert sorted(p.real for p in bp.points) == pytest.approx([-2, 2])
    assert bp.infinity_multiplicity == 2


def test_branch_points_degree_matches_bound():
    rng = np.random.default_rng(3)
    a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    b = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    bp = compute_branch_points(_pencil(a, b))
    assert sum(bp.multiplicities) + bp.infinity_multiplicity == 2 * 5 - 2
    assert bp.min_separation > 0


def test_loop_geometry():
    pts = [0, 1, 1j, -2 + 0.5j]
    plan = build_loops(pts, seed=4)
    assert sorted(plan.order) == [0, 1, 2, 3]
    for lp in plan.loops:
        others = [abs(lp.center - p) for p in pts if p != lp.center]
        assert lp.radius < min(others) / 2
        assert abs(lp.basepoint - lp.center) > lp.radius
    assert all(lp.basepoint == plan.basepoint for lp in plan.loops)


def test_loops_are_seeded():
    pts = [0, 1, 2j]
    assert build_loops(pts, seed=9) == build_loops(pts, seed=9)


def test_track_square_root_swaps():
    pen = _pencil([0, 0, 1], [1])
    loop = Loop(0j, 1.0, 2.0 + 0j)
    start = np.array([2**0.5, -(2**0.5)], dtype=complex)
    end = track_fiber(pen, loop, start)
    assert np.allclose(end, start[::-1], atol=1e-8)
    assert permutation_from_loop(start, end) == Perm([1, 0])


def test_track_segment_follows_roots():
    pen = _pencil([-1, 0, 0, 1], [1])
    start = np.exp(2j * np.pi * np.arange(3) / 3)
    end = track_fiber(pen, (0.0, 7.0), start)
    assert np.allclose(end, 2 * start, atol=1e-8)


def test_ambiguous_matching():
    with pytest.raises(AmbiguousMatching):
        permutation_from_loop([0, 1, 2], [0.5, 1, 2])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_power_map_is_cyclic(n):
    res = monodromy(_pencil([0] * n + [1], [1]), seed=1)
    assert res.group.order == n
    assert res.classification.tag in {"cyclic", "alternating", "symmetric"}
    assert res.group.is_transitive()
    assert res.checks["product_relation"]
    assert res.genus == 0


def test_twisted_cubic_osculating_center():
    res = monodromy(make_pencil(twisted_cubic(), osculating_center(0, 1)), seed=0)
    assert res.group.order == 3
    assert [bp.fiber_multiplicities for bp in res.branch_points] == [(3,), (3,)]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 7))
def test_random_pencils_are_symmetric(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    b = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    res = monodromy(_pencil(a, b), seed=seed)
    assert res.classification.tag == "symmetric"
    assert res.riemann_hurwitz_sum == 2 * n - 2
    assert all(v is True or isinstance(v, int) and not isinstance(v, bool) for v in res.checks.values())
    assert all(v for k, v in res.checks.items() if k not in {"riemann_hurwitz_sum", "genus"})


def test_product_in_loop_order_is_identity():
    res = monodromy(_pencil([1, 2, -1, 0.5, 1], [0.3, 1j, 0, 2, 0]), seed=5)
    prod = Perm.identity(res.d_L)
    for p in res.permutations:
        prod = prod * p
    assert prod.is_identity()


def test_start_fiber_solves_family():
    pen = _pencil([1, 2, -1, 0.5, 1], [0.3, 1j, 0, 2, 0])
    res = monodromy(pen, seed=2)
    assert len(res.start_fiber) == res.d_L
    assert res.diagnostics["attempts"] >= 1


def test_degree_one_is_trivial():
    res = monodromy(_pencil([0, 1], [1]))
    assert res.group.order == 1 and res.permutations == []


def test_seed_changes_coordinates_not_answer():
    pen = make_pencil(twisted_cubic(), grassmannian_sampler(3, 2).sample(1)[0])
    results = [monodromy(pen, seed=s) for s in range(4)]
    assert {r.group.order for r in results} == {6}
    assert len({complex(r.diagnostics["basepoint"]) for r in results}) > 1


def test_fermat_quartic_genus():
    fermat = PlaneCurveImplicit({(4, 0): 1, (0, 4): 1, (0, 0): -1}, 4)
    res = monodromy(make_pencil_implicit(fermat, (0.3, 0.7), seed=1), seed=1)
    assert res.group.order == 24
    assert res.genus == 3


def test_conic_from_point_on_it():
    conic = PlaneCurveImplicit({(2, 0): 1, (0, 2): 1, (0, 0): -1}, 2)
    rep = classify_line(conic, (1, 0, 1))
    assert rep.d_L == 1 and rep.order == 1


def test_classify_line_rational():
    rep = classify_line(twisted_cubic(), osculating_center(0, 1))
    assert rep.order == 3 and rep.d_L == 3


def test_branch_points_are_moebius_invariant():
    a, b = ComplexPoly([1, 0, -2, 1]), ComplexPoly([0, 1, 0, 0.5])
    base = sorted(compute_branch_points(PencilFamily.from_polys(a, b)).points, key=abs)
    # s -> 2 s + 1 on the target
    moved = sorted(compute_branch_points(PencilFamily.from_polys(a * 2 + b, b)).points, key=abs)
    assert sorted((2 * p + 1 for p in base), key=abs) == pytest.approx(moved, abs=1e-8)


def test_critical_points_match_roots_of_derivative():
    p = ComplexPoly([0.2, -1, 0.5j, 2, 1])
    crit = roots_all(p.derivative())
    values = sorted((p(c) for c in crit), key=cmath.phase)
    bp = sorted(compute_branch_points(PencilFamily.from_polys(p, ComplexPoly([1]))).points, key=cmath.phase)
    assert np.allclose(values, bp, atol=1e-8)


def test_fermat_quartic_from_hyperflex():
    # the tangent line x = z meets the curve only at (1 : 0 : 1), so all three
    # remaining fiber points run into the center over that direction
    fermat = PlaneCurveImplicit({(4, 0): 1, (0, 4): 1, (0, 0): -1}, 4)
    res = monodromy(make_pencil_implicit(fermat, (1, 0, 1)), seed=0)
    assert res.d_L == 3 and res.genus == 3
    assert (3,) in [bp.fiber_multiplicities for bp in res.branch_points]


@pytest.mark.parametrize("point, degree, order", [((-1, 0, 1), 2, 2), ((0.5, 2.0), 3, 6), ((3, -1), 3, 6)])
def test_nodal_cubic_has_genus_zero(point, degree, order):
    nodal = PlaneCurveImplicit({(0, 2): 1, (2, 0): -1, (3, 0): -1}, 3)
    res = monodromy(make_pencil_implicit(nodal, point), seed=0)
    assert (res.d_L, res.group.order, res.genus) == (degree, order, 0)
    assert res.diagnostics["singular_lines"] == 1
    assert not res.checks["riemann_hurwitz_matches_discriminant"]
