import random

import pytest
from gmpy2 import mpq

from sextics.errors import NonReducedCurve, NotSimple
from sextics.numfield import NumberField
from sextics.poly import MultiPoly, poly_from_string
from sextics.singular import (PlaneCurve, ade_multiset, component_screen,
                              find_singular_points, parse_singularity_string,
                              singularity_string, total_milnor)

V = ("x1", "x2", "x3")


def curve(s):
    return PlaneCurve(poly_from_string(s, V))


def test_triangle_of_lines():
    reps = find_singular_points(curve("x1*x2*x3"))
    assert ade_multiset(reps) == ["A1", "A1", "A1"]
    assert total_milnor(reps) == 3


def test_fermat_sextic_smooth():
    assert find_singular_points(curve("x1^6 + x2^6 + x3^6")) == []


def test_non_reduced_rejected():
    with pytest.raises(NonReducedCurve):
        PlaneCurve(poly_from_string("x1^2*x2", V) * poly_from_string("x3", V))


@pytest.mark.parametrize("expr,expect,mu", [
    ("x2^2*x3^2 - x1^4 + x2^4", "A3", 3),          # tacnode normal form
    ("x2^2*x3 - x1^3", "A2", 2),                    # cuspidal cubic
    ("x2^2*x3^3 - x1^5", "A4", 4),                  # higher cusp (quintic)
    ("x2^2*x3^4 - x1^6 - x2^5*x3", "A5", 5),
    ("x1^3*x3 - x1*x2^2*x3 + x2^4", "D4", 4),
    ("x1*x2^2*x3^3 - x1^6 - x2^6", "D7", 7),
    ("x1^3*x3 + x2^4", "E6", 6),
    ("x1^3*x3 + x1*x2^3", "E7", 7),
    ("x1^3*x3^2 + x2^5", "E8", 8),
])
def test_normal_forms(expr, expect, mu):
    reps = find_singular_points(curve(expr))
    assert any(r.ade == expect and r.milnor == mu for r in reps), reps


def test_milnor_ladder_a_k():
    # y^2 = x^(k+1) with a smoothing tail at infinity
    for k, expr in ((1, "x2^2*x3^2 - x1^2*x3^2 - x1^3*x3"),
                    (2, "x2^2*x3 - x1^3"),
                    (4, "x2^2*x3^3 - x1^5")):
        reps = find_singular_points(curve(expr))
        assert any(r.ade == f"A{k}" and r.milnor == k for r in reps)


def test_not_simple_raises():
    with pytest.raises(NotSimple):
        find_singular_points(curve("x2^2*x3^4 - x1^6"))


def test_conjugate_orbit_tracking():
    x, y, z = (MultiPoly.var(n, V) for n in V)
    f = y ** 2 * z ** 4 + y ** 6 - (x * x - 2 * z * z) ** 2 * (x * x - 3 * z * z)
    reps = find_singular_points(PlaneCurve(f))
    orb = [r for r in reps if r.orbit_size == 2]
    assert orb and orb[0].ade == "A1" and orb[0].field.degree == 2


def test_total_milnor_projective_invariance():
    base = poly_from_string("x1*x2^2*x3^3 - x1^6 - x2^6", V)
    mu0 = total_milnor(find_singular_points(PlaneCurve(base)))
    rnd = random.Random(11)
    done = 0
    while done < 3:
        M = [[rnd.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
               - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
        if det == 0:
            continue
        sub = {V[i]: sum(MultiPoly.var(V[j], V) * M[i][j] for j in range(3))
               for i in range(3)}
        assert total_milnor(find_singular_points(PlaneCurve(base.subs(sub)))) == mu0
        done += 1


def test_bezout_bound_enforced():
    # total Milnor of a reduced quintic stays within (d-1)^2 = 16
    reps = find_singular_points(curve("x2^2*x3^3 - x1^5"))
    assert total_milnor(reps) <= 16


def test_component_screen_detects_line():
    c = PlaneCurve(poly_from_string("x1", V) * poly_from_string("x2^5 + x1^4*x3", V))
    assert not component_screen(c)["no_line_component"]


def test_component_screen_clean():
    scr = component_screen(curve("x1^6 + x2^6 + x3^6"))
    assert scr["no_line_component"] and scr["no_conic_component"]
    assert any("vacuous" in n for n in scr["notes"])


def test_conic_through_five_points_and_divisibility():
    from sextics.numfield import QQ
    from sextics.singular import _conic_subset_check, _conic_through
    # five rational points on the circle of radius 5
    pts = [(mpq(3), mpq(4), mpq(1)), (mpq(4), mpq(3), mpq(1)),
           (mpq(-3), mpq(4), mpq(1)), (mpq(0), mpq(-5), mpq(1)),
           (mpq(5), mpq(0), mpq(1))]
    conic = _conic_through(pts, QQ)
    expected = poly_from_string("x1^2 + x2^2 - 25*x3^2", V)
    assert conic == expected * mpq(-1, 25)  # determined up to a scalar
    quartic = poly_from_string("x1^4 + x2^4 - 3*x3^4 + x1*x2*x3^2", V)
    sextic = PlaneCurve(expected * quartic)
    assert _conic_subset_check(sextic, pts)


def test_singularity_string_formatting():
    assert parse_singularity_string("A16+A3") == ["A16", "A3"]
    assert parse_singularity_string("2A3") == ["A3", "A3"]
    assert singularity_string(["A3", "A16"]) == "A16+A3"
    assert singularity_string(["A4", "A4", "A11"]) == "A11+2A4"
    assert singularity_string(["A10", "D9"]) == "D9+A10"
    assert singularity_string(["A13", "E6"]) == "E6+A13"
