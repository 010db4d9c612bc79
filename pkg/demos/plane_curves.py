"""Projecting plane curves from a point.

A smooth plane quartic seen from a general point is a degree 4 cover
with 12 simple branch points, so Riemann-Hurwitz gives genus 3 and the
monodromy is S4. From the hyperflex (1 : 0 : 1) on the curve the map
has degree 3, and the tangent line there carries all three remaining
points into the center, giving a 3-cycle. Projecting a nodal cubic from its node leaves a
degree 1 map: the curve is rational. From any other point the line
through the node doubles a root of the discriminant without ramifying,
so the loop around it is trivial and the count of simple branch points
drops to 4 = 2*3 - 2, the genus zero value.

A cusp behaves like a node plus one simple ramification. When a tangent
line lands too close to the cusp line the two merge into one cluster;
the loop check then refuses the answer.
"""

from projmono import PlaneCurveImplicit, classify_line
from projmono.errors import ProjmonoError

if __name__ == "__main__":
    fermat = PlaneCurveImplicit({(4, 0): 1, (0, 4): 1, (0, 0): -1}, 4, "fermat quartic")
    for point in [(0.3, 0.7), (2.0, -1.5), (1, 0, 1)]:
        rep = classify_line(fermat, point, seed=0)
        res = rep.result
        print(
            f"{fermat.name} from {point}: degree {rep.d_L}, "
            f"{res.riemann_hurwitz_sum} = sum of (e - 1), genus {res.genus}, {rep.tag} of order {rep.order}"
        )

    nodal = PlaneCurveImplicit({(0, 2): 1, (2, 0): -1, (3, 0): -1}, 3, "nodal cubic")
    cusp = PlaneCurveImplicit({(0, 2): 1, (3, 0): -1}, 3, "cuspidal cubic")
    for curve, point in [(nodal, (0, 0, 1)), (nodal, (-1, 0, 1)), (nodal, (0.5, 2.0)), (cusp, (0.5, 2.0)), (cusp, (-2, 0.3))]:
        try:
            rep = classify_line(curve, point, seed=0)
        except ProjmonoError as exc:
            print(f"{curve.name} from {point}: refused ({exc})")
            continue
        fibers = [bp.fiber_multiplicities for bp in rep.result.branch_points]
        print(f"{curve.name} from {point}: degree {rep.d_L}, {rep.tag} of order {rep.order}, genus {rep.result.genus}, fibers {fibers}")
