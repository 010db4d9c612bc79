from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from projmono.constructions import (
    CONSTRUCTIONS,
    construct,
    grassmannian_sampler,
    nonbirational_quartic,
    osculating_center,
    quartic_special,
    schubert_sampler,
    secant_center,
    secant_hyperplanes,
    secant_sampler,
    sextic_special,
    square_count_on_line,
    triple_square_pencil,
    twisted_cubic,
)
from projmono.curve import make_pencil
from projmono.errors import UnknownConstruction
from projmono.monodromy import monodromy
from projmono.polynomial import RatPoly

X, U = sp.symbols("X u")


def test_sextic_coefficient_forms_match_symbolic_expansion():
    _, vs = sextic_special()
    g = X + U * X**3 + U**2 - U**3 * X**2
    expanded = sp.Poly(sp.expand(g**2), U)
    expected = [sp.expand(expanded.coeff_monomial(U**k)) for k in range(7)]
    got = [sum(sp.Rational(c) * X**j for j, c in enumerate(row)) for row in vs.certificate["coefficient_forms"]]
    assert [sp.expand(a - b) for a, b in zip(got, expected)] == [0] * 7
    assert expected[3] == 0
    assert sp.Matrix([[sp.Poly(e, X).coeff_monomial(X**j) for j in range(7)] for e in expected]).rank() == 4


@pytest.mark.parametrize("lam, mu", [(1, 0), (0, 1), (2, 3), (-5, 7), (Fraction(1, 3), 2)])
def test_sextic_squares_lie_in_span(lam, mu):
    _, vs = sextic_special()
    assert vs.contains(vs.square((lam, mu)))


@pytest.mark.parametrize("lam, mu", [(1, 0), (1, 1), (3, -2), (Fraction(2, 5), 1)])
def test_quartic_squares_lie_in_span(lam, mu):
    _, vs = quartic_special()
    g = vs.member(lam, mu)
    c, b, a = (sp.Rational(str(x)) for x in g)
    assert b**2 + 2 * a * c == 0
    assert vs.contains(vs.square((lam, mu)))


def test_non_square_outside_quartic_span():
    _, vs = quartic_special()
    assert not vs.contains(RatPoly([0, 0, 1]))


def test_triple_square_pencil_symbolic_identity():
    F, G, (g1, g2, g3) = triple_square_pencil()
    for g in (g1, g2, g3):
        c, b, a = (complex(g[k]) for k in range(3))
        assert abs(b * b + 2 * a * c) < 1e-12
    lhs = (g1 * g1 - g2 * g2).array
    rhs = (g3 * g3).array
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_triple_square_conditions_symbolically():
    # exact oracle: the conic condition for g1, g2, g3 reduces to q^2 + 4q + 1 = 0 and k^4 q^2 = -1
    k, q = sp.symbols("k q")
    l1, l2 = X - 1, k * (X - q)
    for g in (l1**2 + l2**2, l1**2 - l2**2, 2 * l1 * l2):
        c, b, a = (sp.Poly(sp.expand(g), X).coeff_monomial(X**j) for j in range(3))
        cond = sp.expand(b**2 + 2 * a * c)
        reduced = sp.rem(sp.rem(cond, k**4 * q**2 + 1, k), q**2 + 4 * q + 1, q)
        assert sp.simplify(reduced) == 0


def test_triple_square_count():
    _, vs = quartic_special()
    F, G, _ = triple_square_pencil()
    assert square_count_on_line(vs, F, G) == 3
    assert square_count_on_line(vs, F, G, cap=1) == 1


def test_secant_square_count_is_two():
    _, vs = quartic_special()
    sp_ = secant_center(vs, Fraction(1, 2), -3)
    assert square_count_on_line(vs, sp_.A_exact, sp_.B_exact) == 2


def test_secant_pencil_factors_through_squaring():
    _, vs = quartic_special()
    pen = secant_center(vs, Fraction(1, 2), -3)
    g1, g2 = pen.intermediate_map()
    assert pen.A_exact == g1 * g1 and pen.B_exact == g2 * g2


def test_secant_needs_distinct_points():
    _, vs = quartic_special()
    with pytest.raises(ValueError):
        secant_center(vs, 2, (4, 2))


def test_secant_hyperplanes_reproduce_pencil():
    curve, vs = quartic_special()
    center = secant_hyperplanes(vs, 1, 2)
    pen = make_pencil(curve, center)
    direct = secant_center(vs, 1, 2)
    assert pen.A_exact.monic() == direct.A_exact.monic()
    assert pen.B_exact.monic() == direct.B_exact.monic()


def test_osculating_center_same_point_rejected():
    with pytest.raises(ValueError):
        osculating_center(1, 1)


def test_samplers_are_seeded():
    a = grassmannian_sampler(3, 5).sample(3)
    b = grassmannian_sampler(3, 5).sample(3)
    assert a == b
    assert grassmannian_sampler(3, 6).sample(1) != a[:1]


def test_schubert_centers_pass_through_point():
    _, x = nonbirational_quartic()
    for c in schubert_sampler(x, 3).sample(10):
        assert c.exact and c.contains(x)


def test_nonbirational_projection_is_imprimitive():
    curve, x = nonbirational_quartic()
    res = monodromy(make_pencil(curve, schubert_sampler(x, 1).sample(1)[0]), seed=0)
    assert res.classification.tag == "imprimitive"
    assert [2, 2] in [sorted(b) for b in res.classification.block_sizes]


def test_sextic_secant_blocks():
    _, vs = sextic_special()
    res = monodromy(secant_sampler(vs, 2).sample(1)[0], seed=0)
    assert res.classification.tag == "imprimitive"
    assert 72 % res.group.order == 0


@pytest.mark.parametrize("name", CONSTRUCTIONS)
def test_construct_bundles(name):
    bundle = construct(name)
    assert {"curve", "center", "expected", "certificate"} <= set(bundle)


def test_construct_unknown():
    with pytest.raises(UnknownConstruction):
        construct("klein-quartic")


def test_twisted_cubic_bundle_pencil():
    bundle = construct("twisted-cubic", {"t1": "0", "t2": "oo"})
    A = [Fraction(c) for c in bundle["certificate"]["pencil"]["A"]]
    B = [Fraction(c) for c in bundle["certificate"]["pencil"]["B"]]
    # osculating planes at 0 and oo cut t^3 and 1
    assert sorted(sum(1 for c in p if c != 0) for p in (A, B)) == [1, 1]
    assert twisted_cubic().degree == 3
