"""Curves whose linear series contains a curve of squares.

The quartic t -> [1 : t : t^3 : t^4] has every g^2 in its span when the
quadratic g = a t^2 + b t + c satisfies b^2 + 2ac = 0. A line through
two such squares gives the pencil g1^2 - s g2^2, which factors as
t -> g1/g2 followed by z -> z^2. The monodromy therefore preserves the
two fibers of z -> z^2 and is imprimitive. A random line gives S4.

The same happens one degree up for a sextic, where the cubics g come
from the expansion of (X + uX^3 + u^2 - u^3X^2)^2 in u.

    python demos/squares_in_linear_series.py
"""

from fractions import Fraction

from projmono import make_pencil, monodromy
from projmono.constructions import (
    grassmannian_sampler,
    quartic_special,
    secant_center,
    sextic_special,
    square_count_on_line,
    triple_square_pencil,
)


def summary(res):
    cls = res.classification
    return f"{cls.tag} of order {cls.order}, block sizes {cls.block_sizes}"


if __name__ == "__main__":
    curve, vs = quartic_special()
    print("quartic [1 : t : t^3 : t^4]")
    print(f"  rank certificate: {vs.certificate['rank_V']} with squares {vs.certificate['rank_with_squares']}")

    pen = secant_center(vs, Fraction(1, 2), -3)
    g1, g2 = pen.intermediate_map()
    print(f"  secant through the squares of g1 = {list(map(str, g1))} and g2 = {list(map(str, g2))}")
    print(f"  monodromy: {summary(monodromy(pen, seed=0))}")
    print(f"  squares on that line: {square_count_on_line(vs, pen.A_exact, pen.B_exact)}")

    center = grassmannian_sampler(3, seed=4).sample(1)[0]
    print(f"  random line: {summary(monodromy(make_pencil(curve, center), seed=0))}")

    F, G, _ = triple_square_pencil()
    print(f"  a line meeting the square locus three times: {square_count_on_line(vs, F, G)} squares")

    print()
    curve6, vs6 = sextic_special()
    print("sextic spanned by X^2, X^4, X^6 + 2X, 1 - 2X^5")
    pen6 = secant_center(vs6, 2, -1)
    print(f"  secant: {summary(monodromy(pen6, seed=0))}")
    center6 = grassmannian_sampler(3, seed=5).sample(1)[0]
    print(f"  random line: {summary(monodromy(make_pencil(curve6, center6), seed=0))}")
