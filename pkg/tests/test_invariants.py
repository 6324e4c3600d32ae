import random

import pytest
from gmpy2 import mpq

from sextics.errors import (DegenerateConfiguration, MultipleCriticalValues,
                            UnsupportedDegree)
from sextics.invariants import (ResolventCurve, TetragonalModel, compute_j,
                                cubic_resolvent, j0_invariant,
                                simple_factor_part, tetragonal_from_curve)
from sextics.numfield import QQ, NumberField
from sextics.poly import MultiPoly, discriminant, poly_from_string


def P(s, v=("x",)):
    return poly_from_string(s, v)


def test_simple_factor_part():
    p1, p2, p3 = P("x - 1"), P("x - 2"), P("x - 3")
    assert simple_factor_part(p1 * p2 ** 2 * p3 ** 3) == p1
    assert simple_factor_part(P("x^5")) == MultiPoly.const(1, ("x",))


def test_j3_of_the_harmonic_configuration():
    # roots 0, 1, -1 together with infinity: the square cross-ratio orbit
    assert compute_j(P("x^3 - x")) == 1


def test_compute_j_affine_invariance():
    rnd = random.Random(9)
    for deg in (3, 4, 5):
        while True:
            coeffs = [mpq(rnd.randint(-5, 5)) for _ in range(deg)] \
                + [mpq(rnd.randint(1, 5))]
            base = MultiPoly.from_univariate(coeffs, "x", ("x",))
            try:
                j0 = compute_j(base)
                break
            except (DegenerateConfiguration, UnsupportedDegree):
                continue
        xv = MultiPoly.var("x", ("x",))
        for _ in range(20):
            a = mpq(rnd.randint(1, 9))
            b = mpq(rnd.randint(-9, 9))
            assert compute_j(base.subs({"x": a * xv + b})) == j0


def test_compute_j_rejects_degenerate_and_unsupported():
    with pytest.raises(DegenerateConfiguration):
        compute_j(P("x^3 - 2*x^2 + x"))  # double root
    with pytest.raises(UnsupportedDegree):
        compute_j(P("x^2 - 1"))


def test_cubic_resolvent_b1_identity_and_disc_relation():
    rnd = random.Random(10)
    V = ("x", "y")
    y = MultiPoly.var("y", V)
    for _ in range(6):
        p = [mpq(rnd.randint(-4, 4)) for _ in range(3)]
        q = [mpq(rnd.randint(-4, 4)) for _ in range(3)]
        r = [mpq(rnd.randint(-4, 4)) for _ in range(3)]
        model = TetragonalModel(QQ, p, q, r)
        res = cubic_resolvent(model)
        pm = MultiPoly.from_univariate(model.p, "x", ("x",))
        rm = MultiPoly.from_univariate(model.r, "x", ("x",))
        assert MultiPoly.from_univariate(res.b1, "x", ("x",)) == pm * pm - 4 * rm
        pq = MultiPoly.from_univariate(model.p, "x", V)
        qq = MultiPoly.from_univariate(model.q, "x", V)
        rq = MultiPoly.from_univariate(model.r, "x", V)
        quartic = y ** 4 + pq * y ** 2 + qq * y + rq
        resolv = y ** 3 - 2 * pq * y ** 2 + (pq * pq - 4 * rq) * y + qq * qq
        try:
            assert discriminant(quartic, "y") == discriminant(resolv, "y")
        except ValueError:
            continue


def test_resolvent_p_q_zero_case():
    # p = q = 0: resolvent y^3 - 4 r y, j proportional to r^3 / disc
    model = TetragonalModel(QQ, [0], [0], [mpq(0), mpq(1)])  # r = x
    res = cubic_resolvent(model)
    num = MultiPoly.from_univariate(res.j_num, "x", ("x",))
    den = MultiPoly.from_univariate(res.j_den, "x", ("x",))
    # j = 4 (12 x)^3 / (27 disc(y^3 - 4xy)) with the common factors removed
    assert num.degree("x") == den.degree("x")


def test_j0_not_defined_for_low_degree_maps():
    lin = ResolventCurve(QQ, [], [], [], [], [mpq(0), mpq(1)], [mpq(1)])
    assert j0_invariant(lin) is None
    sq = ResolventCurve(QQ, [], [], [], [], [mpq(0), mpq(0), mpq(1)], [mpq(1)])
    assert j0_invariant(sq) is None


def test_j0_not_defined_for_maximal_synthetic_resolvent():
    # y^4 + y + x: every critical value of its resolvent's j sits over 0, 1
    # or infinity, so no extra invariant exists
    model = TetragonalModel(QQ, [0], [1], [mpq(0), mpq(1)])
    res = cubic_resolvent(model)
    assert j0_invariant(res) is None


def test_j0_defined_with_single_extra_critical_value():
    # j = x^2 (x - 1): critical points x = 0 (value 0) and x = 2/3 with
    # value -4/27: exactly one extra critical value
    num = [mpq(0), mpq(0), mpq(-1), mpq(1)]
    res = ResolventCurve(QQ, [], [], [], [], num, [mpq(1)])
    assert j0_invariant(res) == mpq(-4, 27)


def test_j0_multiple_critical_values_raises():
    # j = x^2 (x-1)^2 / small denominator: two distinct extra critical values
    num = [mpq(0), mpq(0), mpq(1), mpq(-2), mpq(1)]
    res = ResolventCurve(QQ, [], [], [], [], num, [mpq(1), mpq(1)])
    with pytest.raises(MultipleCriticalValues):
        j0_invariant(res)


def test_tetragonal_from_catalog_curve():
    from sextics.catalog import synthesize_record
    rec = synthesize_record("D9+A10", with_invariants=False, with_screen=False)
    model = tetragonal_from_curve(rec.sextic, rec.field)
    res = cubic_resolvent(model)
    assert res.j_num and res.j_den
    j0 = j0_invariant(res)
    assert j0 is not None  # the invariant the record reports
