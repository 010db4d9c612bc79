"""Twisted cubic: one special center and a handful of random ones.

Projecting the twisted cubic from a line gives a degree 3 cover of P^1.
A random line yields S3. The line where the osculating planes at two
points meet gives a cover totally ramified over two values, so its
monodromy is cyclic of order 3.

    python demos/twisted_cubic_tour.py
"""

from projmono import make_pencil, monodromy
from projmono.constructions import grassmannian_sampler, osculating_center, twisted_cubic
from projmono.permgroup import format_cycles


def describe(res):
    cls = res.classification
    print(f"  covering degree {res.d_L}, {len(res.branch_points)} branch points")
    for bp in res.branch_points:
        where = "oo" if bp.s == complex("inf") else f"{bp.s.real:+.4f}{bp.s.imag:+.4f}i"
        print(f"    s = {where:>20}  fiber {bp.fiber_multiplicities}  loop {format_cycles(bp.permutation)}")
    print(f"  group of order {cls.order}, classified as {cls.tag}, genus {res.genus}")


if __name__ == "__main__":
    tc = twisted_cubic()

    print("osculating planes at t = 0 and t = 1")
    center = osculating_center(0, 1)
    print(f"  H0 = {[str(h) for h in center.H0]}, H1 = {[str(h) for h in center.H1]}")
    describe(monodromy(make_pencil(tc, center), seed=0))

    print()
    print("five random lines")
    for i, c in enumerate(grassmannian_sampler(3, seed=1).sample(5)):
        res = monodromy(make_pencil(tc, c), seed=i)
        cls = res.classification
        print(f"  #{i}: {len(res.branch_points)} simple branch points, {cls.tag} of order {cls.order}")
