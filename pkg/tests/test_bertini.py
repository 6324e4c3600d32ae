import random

import pytest
from gmpy2 import mpq

from sextics.bertini import (CubicPair, SectionSpec, bertini_involution,
                             build_bertini_data, build_trigonal_model,
                             coefficient_formulas, proportional,
                             pullback_intersect, sextic_from_section,
                             solve_tangency_coefficient)
from sextics.errors import DegeneratePencil, ForbiddenSection
from sextics.numfield import QQ, NumberField
from sextics.poly import MultiPoly, exact_divide, poly_from_string

COEFFS = ("a1", "a2", "b1", "b2", "b3", "c1", "c2",
          "a1p", "a2p", "b1p", "b2p", "b3p", "c1p", "c2p")


def random_pair(rnd, field=QQ):
    while True:
        coeffs = {k: mpq(rnd.randint(-6, 6)) for k in COEFFS}
        try:
            pair = CubicPair(field, coeffs)
            data = build_bertini_data(pair)
            return pair, data
        except DegeneratePencil:
            continue


def test_proportional_cubics_degenerate():
    base = {k: mpq(v) for k, v in zip(COEFFS[:7], (1, 2, 0, 3, -1, 0, 2))}
    coeffs = dict(base)
    for k in list(base):
        coeffs[k + "p"] = 3 * base[k]
    with pytest.raises(DegeneratePencil):
        build_bertini_data(CubicPair(QQ, coeffs))


def test_polynomial_degrees():
    rnd = random.Random(1)
    pair, data = random_pair(rnd)
    assert data.phi6.total_degree() == 6
    assert data.psi6.total_degree() == 6
    assert data.C5.total_degree() == 5
    assert data.rho.total_degree() == 9
    assert all(z.total_degree() == 17 for z in data.z)


def test_involution_is_an_involution():
    rnd = random.Random(2)
    pair, data = random_pair(rnd)
    hits = 0
    while hits < 20:
        pt = (mpq(rnd.randint(-9, 9)), mpq(rnd.randint(-9, 9)), mpq(1))
        try:
            once = bertini_involution(data, pt)
            twice = bertini_involution(data, once)
        except Exception:
            continue
        assert proportional(twice, pt)
        hits += 1


def test_fixed_curve_divides_the_cross_terms():
    # the involution is the identity exactly on the degree-9 curve
    rnd = random.Random(3)
    pair, data = random_pair(rnd)
    V = ("y1", "y2", "y3")
    y = [MultiPoly.var(n, V) for n in V]
    z1, z2, z3 = data.z
    for a, b, va, vb in ((z1, z2, y[0], y[1]), (z1, z3, y[0], y[2]),
                        (z2, z3, y[1], y[2])):
        exact_divide(a * vb - b * va, data.rho)  # raises if not divisible


def test_phi_locus_contracts_to_first_basepoint():
    # on {phi6 = 0} the image is proportional to (0:1:0): z1 and z3 carry phi6
    rnd = random.Random(4)
    pair, data = random_pair(rnd)
    z1, _z2, z3 = data.z
    exact_divide(z1, data.phi6)
    exact_divide(z3, data.phi6)


def test_s1_coefficient_formula():
    forms = coefficient_formulas()
    expect = poly_from_string("-a2*c1p - a2p*c1 + a1*c2p + a1p*c2",
                              forms["s"][1].vars)
    assert forms["s"][1] == expect


def test_weierstrass_identities_random_and_degenerate():
    rnd = random.Random(5)
    for _ in range(10):
        pair, data = random_pair(rnd)
        build_trigonal_model(pair, data=data)  # identity checks run inside
    # symbolic sub-cases with some coefficients equal to zero
    degenerate_samples = [
        {"a1": 1, "a2": 2, "b1": 0, "b2": 0, "b3": -1, "c1": 0, "c2": 3,
         "a1p": 0, "a2p": 1, "b1p": 2, "b2p": 0, "b3p": 0, "c1p": -1, "c2p": 0},
        {"a1": 1, "a2": 0, "b1": 0, "b2": 1, "b3": 0, "c1": 0, "c2": -1,
         "a1p": 0, "a2p": 1, "b1p": -1, "b2p": 0, "b3p": 0, "c1p": 2, "c2p": 0},
        {"a1": 2, "a2": -1, "b1": 1, "b2": 0, "b3": 0, "c1": 1, "c2": 0,
         "a1p": 1, "a2p": 1, "b1p": 0, "b2p": -1, "b3p": 1, "c1p": 0, "c2p": 1},
        {"a1": 1, "a2": 1, "b1": 0, "b2": -2, "b3": 3, "c1": 0, "c2": 1,
         "a1p": -1, "a2p": 2, "b1p": 1, "b2p": 0, "b3p": 0, "c1p": 1, "c2p": 0},
        {"a1": 3, "a2": 0, "b1": 0, "b2": 0, "b3": 1, "c1": 0, "c2": -2,
         "a1p": 0, "a2p": 3, "b1p": 1, "b2p": 1, "b3p": 0, "c1p": 1, "c2p": 0},
    ]
    for coeffs in degenerate_samples:
        try:
            pair = CubicPair(QQ, {k: mpq(v) for k, v in coeffs.items()})
            build_trigonal_model(pair)
        except DegeneratePencil:
            continue


def test_identities_over_a_number_field():
    K = NumberField([52, -59, 16])
    e = K.gen()
    rnd = random.Random(6)
    while True:
        coeffs = {k: rnd.randint(-3, 3) + rnd.randint(-2, 2) * e for k in COEFFS}
        try:
            pair = CubicPair(K, coeffs)
            build_trigonal_model(pair)  # 30-point evaluation check
            break
        except DegeneratePencil:
            continue


def test_sections_pull_back_to_contracted_sextics():
    rnd = random.Random(7)
    pair, data = random_pair(rnd)
    model = build_trigonal_model(pair, data=data)
    assert sextic_from_section(pair, SectionSpec(QQ, 0, 0, 0), data=data) \
        == data.phi6
    s = model.S2
    assert sextic_from_section(pair, SectionSpec(QQ, -s[0], -s[1], -s[2]),
                               data=data) == data.psi6


def test_forbidden_sections_rejected():
    rnd = random.Random(8)
    pair, data = random_pair(rnd)
    model = build_trigonal_model(pair, data=data)
    with pytest.raises(ForbiddenSection):
        SectionSpec(QQ, 0, 0, 0).check_distinct(model)
    s = model.S2
    with pytest.raises(ForbiddenSection):
        SectionSpec(QQ, -s[0], -s[1], -s[2]).check_distinct(model)
    SectionSpec(QQ, 1, 2, 3).check_distinct(model)  # fine


def test_random_sextic_is_double_at_visible_basepoints():
    rnd = random.Random(9)
    pair, data = random_pair(rnd)
    sx = sextic_from_section(pair, SectionSpec(QQ, 1, -2, 3), data=data)
    for pt in ((0, 1, 0), (1, 0, 0)):
        vals = dict(zip(("y1", "y2", "y3"), (mpq(v) for v in pt)))
        assert not sx.evaluate(vals)
        for v in ("y1", "y2", "y3"):
            assert not sx.derivative(v).evaluate(vals)


def test_pullback_intersection_forced_factor():
    # zero section restricted to the branch equation: R3(x)^2, so any root of
    # R3 is a valid tangency center with a forced double factor
    rnd = random.Random(10)
    while True:
        pair, data = random_pair(rnd)
        model = build_trigonal_model(pair, data=data)
        r = model.R3
        # rational root of R3?
        from sextics.poly import factor_rational, MultiPoly as MP
        rm = MP.from_univariate(r, "x", ("x",))
        _u, facs = factor_rational(rm)
        lin = [f for f, _m in facs if f.degree("x") == 1]
        if not lin:
            continue
        cs = lin[0].to_univariate("x")
        center = -cs[0] / cs[1]
        try:
            a = solve_tangency_coefficient(model, [QQ.zero] * 3, center)
        except DegeneratePencil:
            continue
        section = SectionSpec.tangency(QQ, a, center)
        m = pullback_intersect(model, section, center, forced_factor=True)
        assert len(m) == 5
        assert not m[0]  # the solved coefficient kills the next order too
        break
