import math
import random

import pytest
from gmpy2 import mpq

from sextics.errors import DivisionNotExact
from sextics.numfield import NumberField
from sextics.poly import (MultiPoly, discriminant, exact_divide,
                          factor_over_field, factor_rational, gcd_multivariate,
                          is_irreducible_rational, poly_from_string,
                          primed_symmetrize, resultant, squarefree_decompose,
                          sylvester_resultant, PRIMED_VARS)

XY = ("x", "y")


def P(s, vars_=XY):
    return poly_from_string(s, vars_)


# --- resultants --------------------------------------------------------------

def test_resultant_textbook_cases():
    assert resultant(P("y^2 - x"), P("y"), "y") == P("-x")
    assert resultant(P("z^2 - 2", ("z",)), P("z^2 - 2", ("z",)), "z").is_zero()
    # constant second argument: g^deg(f)
    assert resultant(P("y^3 - x*y + 1"), P("x"), "y") == P("x^3")


def test_resultant_of_normal_form_partials():
    # f = y^2 - x^3: Res_y(f_x, f_y) must vanish to order 2 at the origin
    f = P("y^2 - x^3")
    r = resultant(f.derivative("x"), f.derivative("y"), "y")
    # -3x^2 has y-degree 0, 2y has y-degree 1: convention gives (-3x^2)^1
    assert r == P("-3*x^2")


def test_resultant_matches_sylvester_oracle():
    rnd = random.Random(3)
    for _ in range(25):
        f = MultiPoly.zero(XY)
        g = MultiPoly.zero(XY)
        for _k in range(rnd.randint(2, 6)):
            f = f + MultiPoly.from_terms(
                [((rnd.randint(0, 3), rnd.randint(0, 3)), rnd.randint(-4, 4))], XY)
            g = g + MultiPoly.from_terms(
                [((rnd.randint(0, 3), rnd.randint(0, 3)), rnd.randint(-4, 4))], XY)
        if f.degree("y") < 1 or g.degree("y") < 1:
            continue
        assert resultant(f, g, "y") == sylvester_resultant(f, g, "y")


def test_resultant_swap_sign():
    rnd = random.Random(5)
    for _ in range(15):
        cf = [rnd.randint(-4, 4) for _ in range(rnd.randint(1, 5))] + [rnd.randint(1, 3)]
        cg = [rnd.randint(-4, 4) for _ in range(rnd.randint(1, 5))] + [rnd.randint(1, 3)]
        f = MultiPoly.from_univariate(cf, "x", ("x",))
        g = MultiPoly.from_univariate(cg, "x", ("x",))
        sign = (-1) ** (f.degree("x") * g.degree("x"))
        assert resultant(f, g, "x") == sign * resultant(g, f, "x")


def test_resultant_over_number_field_matches_oracle():
    K = NumberField([52, -59, 16])
    rnd = random.Random(11)
    for _ in range(8):
        fc = [K.from_coeffs([rnd.randint(-3, 3), rnd.randint(-3, 3)])
              for _ in range(rnd.randint(2, 4))] + [K.one]
        gc = [K.from_coeffs([rnd.randint(-3, 3), rnd.randint(-3, 3)])
              for _ in range(rnd.randint(2, 4))] + [K.one]
        f = MultiPoly.from_univariate(fc, "x", ("x",), K)
        g = MultiPoly.from_univariate(gc, "x", ("x",), K)
        assert resultant(f, g, "x") == sylvester_resultant(f, g, "x")


# --- discriminants -----------------------------------------------------------

def test_discriminant_closed_forms():
    V = ("y", "p", "q")
    assert discriminant(poly_from_string("y^2 + p*y + q", V), "y") \
        == poly_from_string("p^2 - 4*q", V)
    assert discriminant(poly_from_string("y^3 + p*y + q", V), "y") \
        == poly_from_string("-4*p^3 - 27*q^2", V)


def test_discriminant_of_branch_cubic_convention():
    # cubic in y with leading coefficient -4, as in the branch equation
    V = ("y", "a", "b", "c")
    f = poly_from_string("-4*y^3 + a*y^2 + b*y + c", V)
    d = discriminant(f, "y")
    oracle = exact_divide(sylvester_resultant(f, f.derivative("y"), "y"),
                          poly_from_string("-4", V))
    assert d == -oracle  # n = 3: (-1)^(3*2/2) = -1


# --- squarefree decomposition -------------------------------------------------

def test_squarefree_trivial_cases():
    # x^2 (x - 1): multiplicity-1 part x - 1, multiplicity-2 part x
    sf = squarefree_decompose(P("x^3 - x^2", ("x",)))
    assert [(p.to_string(), m) for p, m in sf.parts] == [("x - 1", 1), ("x", 2)]
    sf = squarefree_decompose(P("x^6", ("x",)))
    assert [(p.to_string(), m) for p, m in sf.parts] == [("x", 6)]
    # a squarefree input is a single multiplicity-1 part
    sf = squarefree_decompose(P("x^2 - x", ("x",)))
    assert [(p.to_string(), m) for p, m in sf.parts] == [("x^2 - x", 1)]
    assert sf.simple_part() == P("x^2 - x", ("x",))


def test_squarefree_reconstructs_input():
    rnd = random.Random(7)
    for _ in range(10):
        f = MultiPoly.const(rnd.randint(1, 3), ("x",))
        for _k in range(rnd.randint(1, 3)):
            lin = MultiPoly.from_univariate(
                [rnd.randint(-3, 3), rnd.randint(1, 2)], "x", ("x",))
            f = f * lin ** rnd.randint(1, 3)
        sf = squarefree_decompose(f)
        assert sf.reassemble() == f


# --- rational factorization ----------------------------------------------------

def test_factor_rational_basic():
    unit, facs = factor_rational(P("x^2 - 1", ("x",)))
    assert unit == 1
    assert [(f.to_string(), m) for f, m in facs] == [("x - 1", 1), ("x + 1", 1)]
    unit, facs = factor_rational(P("x^2 + 1", ("x",)))
    assert len(facs) == 1 and facs[0][0].degree("x") == 2


def test_quartic_catalog_field_polynomial_is_irreducible():
    f = P("50*x^4 + 300*x^3 + 685*x^2 + 720*x + 302", ("x",))
    unit, facs = factor_rational(f)
    assert len(facs) == 1 and facs[0][1] == 1
    assert is_irreducible_rational([302, 720, 685, 300, 50])


def test_factor_roundtrip_random_products():
    rnd = random.Random(17)
    for _ in range(12):
        fs = []
        for _k in range(rnd.randint(2, 3)):
            deg = rnd.randint(1, 4)
            fs.append(MultiPoly.from_univariate(
                [rnd.randint(-5, 5) for _ in range(deg)] + [rnd.randint(1, 4)],
                "x", ("x",)))
        prod = fs[0]
        for q in fs[1:]:
            prod = prod * q
        unit, facs = factor_rational(prod)
        re = MultiPoly.const(unit, ("x",))
        for f, m in facs:
            re = re * f ** m
            assert is_irreducible_rational(f.to_univariate("x"))
        assert re == prod


def test_factor_deterministic_order():
    f = P("x^4 - 5*x^2 + 4", ("x",))  # (x-1)(x+1)(x-2)(x+2)
    _, facs1 = factor_rational(f)
    _, facs2 = factor_rational(f)
    assert [g.to_string() for g, _ in facs1] == [g.to_string() for g, _ in facs2]
    degs = [g.degree("x") for g, _ in facs1]
    assert degs == sorted(degs)


# --- exact division -------------------------------------------------------------

def test_exact_divide():
    assert exact_divide(P("x^2*y - x*y^2"), P("x*y")) == P("x - y")
    with pytest.raises(DivisionNotExact):
        exact_divide(P("x^2 + 1"), P("x"))


# --- factorization over a number field -------------------------------------------

def test_factor_over_field_splits_adjoined_root():
    K = NumberField([-2, 0, 1])
    facs = factor_over_field([K.coerce(-2), K.zero, K.one], K)
    assert len(facs) == 2
    assert all(len(f) == 2 for f, _ in facs)
    roots = sorted(str(-f[0] / f[1]) for f, _ in facs)
    assert roots == ["-e", "e"]


def test_factor_over_field_keeps_irreducible():
    K = NumberField([-2, 0, 1])
    facs = factor_over_field([K.coerce(-3), K.zero, K.one], K)
    assert len(facs) == 1 and len(facs[0][0]) == 3


# --- multivariate gcd -------------------------------------------------------------

def test_gcd_multivariate_bivariate():
    x, y = MultiPoly.var("x", XY), MultiPoly.var("y", XY)
    f = (x * y + 1) * (x + y) ** 2
    g = (x * y + 1) * (x * x * y + 3)
    assert gcd_multivariate(f, g) == x * y + 1
    f2 = (y * y + 2) * x * (x - y)
    g2 = (y * y + 2) * (x + 5)
    assert gcd_multivariate(f2, g2) == y * y + 2


def test_gcd_multivariate_trivariate():
    V = ("x", "y", "z")
    x, y, z = (MultiPoly.var(n, V) for n in V)
    g = x + y * z
    f1 = g * (x * x + z)
    f2 = g * (y + z * z) * 3
    got = gcd_multivariate(f1, f2)
    assert got == g or got == -g


# --- primed symmetrization ---------------------------------------------------------

def PV(s):
    return poly_from_string(s, PRIMED_VARS)


def test_primed_symmetrize_notation_examples():
    assert primed_symmetrize(PV("a1*c2"), 1) == PV("a1*c2p + a1p*c2")
    assert primed_symmetrize(PV("b2^2"), 1) == PV("2*b2*b2p")
    assert primed_symmetrize(PV("a1*b1*c1"), 2) \
        == PV("a1*b1p*c1p + a1p*b1*c1p + a1p*b1p*c1")


def test_primed_symmetrize_binomial_specialization():
    rnd = random.Random(5)
    base = ["a1", "a2", "b1", "b2", "b3", "c1", "c2"]
    for _ in range(8):
        mono = {}
        for s in rnd.sample(base, rnd.randint(1, 3)):
            mono[s] = rnd.randint(1, 2)
        n = sum(mono.values())
        e = MultiPoly.const(1, PRIMED_VARS)
        for s, k in mono.items():
            e = e * MultiPoly.var(s, PRIMED_VARS) ** k
        m = rnd.randint(0, n)
        sym = primed_symmetrize(e, m)
        spec = sym.subs({s + "p": MultiPoly.var(s, PRIMED_VARS) for s in base})
        assert spec == e * math.comb(n, m)


def test_primed_symmetrize_out_of_range():
    with pytest.raises(ValueError):
        primed_symmetrize(PV("a1*c2"), 3)


# --- serialization -------------------------------------------------------------------

def test_polynomial_string_round_trip():
    f = P("3*x^2*y - 7/2*x*y + y^3 - 5")
    assert poly_from_string(f.to_string(), XY) == f
    # graded lexicographic, highest total degree first, x before y
    assert f.to_string() == "3*x^2*y + y^3 - 7/2*x*y - 5"
