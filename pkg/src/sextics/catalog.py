"""The three cubic-pencil families and the full curve catalog.

Each family fixes a pencil shape whose branch curve has the named singular
fibers; the stored parameter values re-create every curve of the catalog,
and the synthesized equation is verified from scratch: singularity
multiset, total Milnor number 19, component screen, and the two
field-of-definition invariants.
"""

from __future__ import annotations

from gmpy2 import mpq

from .bertini import (CubicPair, SectionSpec, build_bertini_data,
                      build_trigonal_model, pullback_intersect,
                      sextic_from_section, solve_tangency_coefficient)
from .errors import (DegeneratePencil, ExcludedParameters, IdentityFailure,
                     UnknownTarget, VerificationFailed)
from .invariants import (cubic_resolvent, field_invariant_J, j0_invariant,
                         tetragonal_from_curve)
from .numfield import QQ, FieldElement, NumberField, format_element
from .poly import MultiPoly
from .singular import (PlaneCurve, ade_multiset, component_screen,
                       find_singular_points, parse_singularity_string,
                       singularity_string, total_milnor)

XYZ = ("x1", "x2", "x3")
Y_VARS = ("y1", "y2", "y3")


# ---------------------------------------------------------------------------
# Family formula sheets (plain ring arithmetic; ring supplied by caller)
# ---------------------------------------------------------------------------

class FamilySpec:
    """One pencil family: cubic shape, re-parameterization, final chart."""

    def __init__(self, id, params, cubics, reparam, exclusions, a1_formula,
                 final_change, extra_basepoint=None, expected_fibers=None):
        self.id = id
        self.params = params
        self.cubics = cubics                  # dict of param values -> coeffs
        self.reparam = reparam                # (mu, nu[, ...]) -> family values
        self.exclusions = exclusions          # values dict -> list of ring elems
        self.a1_formula = a1_formula
        self.final_change = final_change      # values -> dict y_i -> (x,y,z) form
        self.extra_basepoint = extra_basepoint
        self.expected_fibers = expected_fibers or ()

    def __repr__(self):
        return f"FamilySpec({self.id})"


def _cubics_two_a3(v, one):
    al, be = v["alpha"], v["beta"]
    z = one * 0
    return {"a1": be - al, "a2": be - al + al * be, "b1": z,
            "b2": be - 2 * al, "b3": -al, "c1": z, "c2": -al,
            "a1p": al - be + al * be, "a2p": al - be, "b1p": -be,
            "b2p": al - 2 * be, "b3p": z, "c1p": -be, "c2p": z}


def _reparam_two_a3(v, one):
    mu, nu = v["mu"], v["nu"]
    alpha = -((mu + one) * (nu + one)) / ((mu + 2 * one) * (nu + 2 * one))
    beta = -((mu + one) * (nu + one)) / (mu * nu + mu + nu + 2 * one)
    return {"alpha": alpha, "beta": beta}


def _exclusions_two_a3(v, one):
    out = [v["alpha"], v["beta"], v["alpha"] - v["beta"]]
    if "mu" in v:
        mu, nu = v["mu"], v["nu"]
        out += [mu + one, nu + one, mu + 2 * one, nu + 2 * one,
                mu * nu + mu + nu + 2 * one, mu - nu]
    return out


def _a1_two_a3(v, one):
    mu, nu = v["mu"], v["nu"]
    num = (mu + nu + 2 * one) * (mu - nu) ** 2 * (nu + one) ** 2
    den = 4 * (mu + one) * (mu + 2 * one) ** 2 * (nu + 2 * one) ** 4 \
        * (mu * nu + nu + mu + 2 * one)
    return num / den


def _final_two_a3(v, field):
    x, y, z = (MultiPoly.var(n, XYZ, field) for n in XYZ)
    return {"y1": z - x, "y2": y - x, "y3": x}


def _cubics_a5_a1(v, one):
    al, be = v["alpha"], v["beta"]
    z = one * 0
    return {"a1": al, "a2": -be, "b1": z, "b2": -(be + one), "b3": -one,
            "c1": z, "c2": -one,
            "a1p": be + 2 * al, "a2p": al, "b1p": 2 * al + be + one,
            "b2p": 2 * al + one, "b3p": z, "c1p": al + one, "c2p": z}


def _reparam_a5_a1(v, one):
    mu, nu = v["mu"], v["nu"]
    return {"alpha": 2 * one - mu - nu, "beta": mu * nu - one}


def _exclusions_a5_a1(v, one):
    out = [v["alpha"], v["alpha"] + one, v["alpha"] + v["beta"]]
    if "mu" in v:
        mu, nu = v["mu"], v["nu"]
        out += [mu - nu, mu - one, nu - 2 * one]
    return out


def _a1_a5_a1(v, one):
    mu, nu = v["mu"], v["nu"]
    return -((mu + nu - 2 * one) * (mu - nu) ** 2) \
        / (4 * (mu - one) ** 3 * (nu - 2 * one))


def _a2_a5_a1(v, one):
    mu, nu = v["mu"], v["nu"]
    return ((mu + nu - 2 * one)
            * (mu ** 2 * nu ** 2 - 6 * mu * nu + 4 * mu + 4 * nu - 3 * one)) \
        / (4 * (mu - one) ** 3)


def _final_a5_a1(v, field):
    x, y, z = (MultiPoly.var(n, XYZ, field) for n in XYZ)
    al, be = v["alpha"], v["beta"]
    c = (2 * al + be + field.one) / (al + field.one)
    return {"y1": z - x, "y2": y - x * c, "y3": x}


def _cubics_a3_2a1(v, one):
    al, be, ro = v["alpha"], v["beta"], v["rho"]
    z = one * 0
    return {"a1": be - al, "a2": al * be - 2 * al + one, "b1": z,
            "b2": al * be * ro - 2 * al * ro + one, "b3": al - al * ro,
            "c1": z, "c2": al * ro - al * ro ** 2,
            "a1p": al * be - 2 * be + one, "a2p": al - be,
            "b1p": al * be * ro - 2 * be * ro + one,
            "b2p": -2 * be * ro + al + al * ro, "b3p": z,
            "c1p": al * ro - be * ro ** 2, "c2p": z}


def _reparam_a3_2a1(v, one):
    mu, nu, al = v["mu"], v["nu"], v["alpha"]
    den = mu * nu + mu * al + nu * al + 2 * al - one
    beta = (mu * nu * al + 2 * mu * al + 2 * nu * al - mu - nu + 3 * al
            - 2 * one) / den
    rho = den / ((mu + al) * (nu + al))
    return {"alpha": al, "beta": beta, "rho": rho}


def _alpha_54(v, one):
    mu, nu = v["mu"], v["nu"]
    num = (mu * nu - one) ** 2 * (nu + 2 * one)
    den = (4 * mu * nu ** 2 + 10 * mu * nu + mu ** 2 + 5 * nu ** 2
           + 8 * mu + 12 * nu + 8 * one)
    return num / den


def _rho_55(v, one):
    al, be, la = v["alpha"], v["beta"], v["lam"]
    num = (one + la * be) * (la * be * al + la * al - 2 * la * be + 2 * al
                             - be - one)
    den = be * (la + one) * (la * be * al + la * al - 2 * la * be - be * al
                             + 3 * al - 2 * one)
    return num / den


def _exclusions_a3_2a1(v, one):
    al, be, ro = v["alpha"], v["beta"], v["rho"]
    return [al, al - one, be, be - one, ro, ro - one, al - be,
            be * ro - one, be * ro - al]


def _a1_54(v, one):
    mu, nu, al = v["mu"], v["nu"], v["alpha"]
    num = al * (al - one) ** 4 * (mu + nu + 2 * one) * (mu - nu) ** 2
    den = 4 * (mu + one) ** 2 * (nu + 2 * one) * (mu + al) ** 3 \
        * (nu + al) ** 2
    return num / den


def _u_point(v, one):
    be, ro = v["beta"], v["rho"]
    return (-(be * ro - one) / (ro - one), -(be * ro - one) / (be - one))


def _final_a3_2a1(v, field):
    x, y, z = (MultiPoly.var(n, XYZ, field) for n in XYZ)
    al, be, ro = v["alpha"], v["beta"], v["rho"]
    c1 = field.one / ro
    c2 = (al * be * ro - 2 * be * ro + field.one) / (ro * (be * ro - al))
    return {"y1": z - x * c1, "y2": y + x * c2, "y3": x}


FAMILIES = {
    "TwoA3": FamilySpec(
        "TwoA3", ("mu", "nu"), _cubics_two_a3, _reparam_two_a3,
        _exclusions_two_a3, _a1_two_a3, _final_two_a3,
        expected_fibers=("A3", "A3")),
    "A5A1": FamilySpec(
        "A5A1", ("mu", "nu"), _cubics_a5_a1, _reparam_a5_a1,
        _exclusions_a5_a1, _a1_a5_a1, _final_a5_a1,
        expected_fibers=("A5", "A1")),
    "A3TwoA1": FamilySpec(
        "A3TwoA1", ("mu", "nu", "alpha"), _cubics_a3_2a1, _reparam_a3_2a1,
        _exclusions_a3_2a1, _a1_54, _final_a3_2a1,
        extra_basepoint=_u_point,
        expected_fibers=("A3", "A1", "A1")),
}


# ---------------------------------------------------------------------------
# Stored catalog data (fields and parameter values from the solved systems)
# ---------------------------------------------------------------------------

class LabelData:
    def __init__(self, name, family, route, field_poly, params, rc,
                 table_line=None, exempt=False, system=None):
        self.name = name
        self.family = family
        self.route = route
        self.field_poly = field_poly  # None for QQ, else integer coeff list
        self.params = params          # name -> rational coeff list in eps
        self.rc = rc                  # (real embeddings, conjugate pairs)
        self.table_line = table_line
        self.exempt = exempt          # excluded from the field-minimality run
        self.system = system          # solver recipe tag

    def expected_signature(self):
        """Signature of the stored parameter field.

        The three exempt labels carry their curves over a field twice as
        large as the minimal one (the halving change of variables is not
        reproduced), so each conjugate pair of parameters yields one curve
        and the stored-field signature doubles the curve count.
        """
        if not self.exempt:
            return self.rc
        r, c = self.rc
        n2 = 2 * (r + 2 * c)
        return (0, n2 // 2)

    def __repr__(self):
        return f"LabelData({self.name})"


def q(a, b=1):
    return mpq(a, b)


CATALOG = [
    # ---- branch curve with two A3 points (two-parameter family)
    LabelData("A12+A7", "TwoA3", "a1", [4, 8, 13],
              {"mu": [0, 1], "nu": [-2, 2]}, (0, 1), table_line=12,
              system=("m1", "m2")),
    LabelData("A10+A7+A2", "TwoA3", "a1", [3, 12, 11],
              {"mu": [0, 2], "nu": [-10, -12]}, (2, 0), table_line=20,
              system=("discr", "cusp")),
    LabelData("D9+A10", "TwoA3", "a1", None,
              {"mu": [q(-5)], "nu": [q(-19, 7)]}, (1, 0),
              system=("second_point", "discr")),
    LabelData("A10+A9", "TwoA3", "a1", [19, 11, 1],
              {"mu": [0, 1], "nu": [q(-7, 5), q(1, 5)]}, (2, 0), table_line=18,
              system=("second_point", "discr")),
    LabelData("A10+A8+A1", "TwoA3", "a1", [43, 51, 17, 1],
              {"mu": [0, q(1, 3)], "nu": [q(13, 3), 5, q(1, 3)]}, (1, 1),
              table_line=19, system=("second_point", "discr")),
    # ---- branch curve with A5 + A1
    LabelData("A16+A3", "A5A1", "a1", [52, -59, 16],
              {"mu": [0, 1], "nu": [q(7, 2), -1]}, (2, 0), table_line=4,
              system=("m1", "m2")),
    LabelData("A15+A4", "A5A1", "a1", [10, -2, 1],
              {"mu": [0, 1], "nu": [q(4, 5), q(-2, 5)]}, (0, 1), table_line=6,
              system=("m1", "second_point")),
    LabelData("A14+A4+A1", "A5A1", "a1", [276, -372, -20, 195, -45, -27, 9],
              {"mu": [0, 1],
               "nu": [q(-166, 15), q(172, 15), q(69, 15), q(-72, 15),
                      q(-9, 15), q(9, 15)]}, (0, 3), table_line=7,
              system=("second_point", "discr")),
    LabelData("D5+A14", "A5A1", "a1", [10, -15, 9],
              {"nu": [0, 1], "mu": [4, -3]}, (0, 1),
              system=("second_point", "discr")),
    LabelData("E6+A13", "A5A1", "a2", [13, -21, 9],
              {"nu": [0, 1], "mu": [5, -3]}, (0, 1),
              system=("discr", "cusp")),
    LabelData("A13+A4+A2", "A5A1", "a2", [7, -7, 1],
              {"mu": [0, 1], "nu": [q(25, 7), q(-9, 7)]}, (2, 0),
              table_line=11, system=("discr", "cusp")),
    LabelData("A13+A6", "A5A1", "a2", [112, -224, 175, -63, 9],
              {"mu": [0, 1],
               "nu": [q(-26, 8), q(73, 8), q(-45, 8), q(9, 8)]}, (0, 2),
              table_line=10, system=("discr", "cusp")),
    LabelData("A12+A6+A1", "A5A1", "a2prime", [7, 79, 315, 441],
              {"alpha": [0, 4],
               "beta": [q(-76, 27), q(-468, 27), q(-252, 27)],
               "lam": [q(-329, 27), q(-1638, 27), q(-882, 27)]}, (1, 1),
              table_line=13, system=("n0", "n2", "n_discr")),
    # ---- branch curve with A3 + 2 A1, sections through the zero section
    LabelData("A12+A4+A3", "A3TwoA1", "a1_54", None,
              {"mu": [q(-33, 13)], "nu": [q(-29, 39)]}, (1, 0), table_line=14,
              system=("m1", "m2")),
    LabelData("A11+2A4", "A3TwoA1", "a1_54", [302, 720, 685, 300, 50],
              {"nu": [0, 1],
               "mu": [q(-109, 11), q(-141, 11), q(-70, 11), q(-10, 11)]},
              (2, 0), table_line=16, exempt=True,
              system=("m1", "third_point")),
    LabelData("A10+A6+A3", "A3TwoA1", "a1_54", [29, 28, 7],
              {"nu": [0, 1], "mu": [q(-1, 3)]}, (0, 1), table_line=21,
              system=("discr", "cusp")),
    LabelData("A10+A4+A3+A2", "A3TwoA1", "a1_54", None,
              {"mu": [q(17, 11)], "nu": [q(41, 11)]}, (1, 0), table_line=25,
              system=("discr", "cusp")),
    # the printed solution swaps the roles of the two tangency abscissas;
    # only this orientation satisfies the degeneration system
    LabelData("E6+A10+A3", "A3TwoA1", "a1_54", [34, 39, 9],
              {"nu": [0, 1], "mu": [2, 3]}, (2, 0),
              system=("discr", "cusp")),
    LabelData("D5+A10+A4", "A3TwoA1", "a1_54", [10, -10, 1, 1],
              {"mu": [0, 1], "nu": [4, q(4, 5), q(-1, 5)]}, (1, 1),
              system=("discr", "cusp")),
    LabelData("A10+A5+A4", "A3TwoA1", "a1_54", [-2, 22, 7],
              {"nu": [0, 1], "mu": [q(-13, 3), q(7, 3)]}, (2, 0),
              table_line=23, system=("discr", "third_point")),
    LabelData("A10+2A4+A1", "A3TwoA1", "a1_54",
              [1592, 7180, 14770, 18025, 13375, 5375, 875],
              {"nu": [0, 1],
               "mu": [q(-59839, 12937), q(-96864, 12937), q(-440835, 51748),
                      q(-417315, 51748), q(-14425, 3044), q(-53025, 51748)]},
              (1, 1), table_line=24, exempt=True,
              system=("discr", "third_point")),
    # ---- branch curve with A3 + 2 A1, sections through the u-section
    LabelData("A8+A7+A4", "A3TwoA1", "su", [1, 0, 1],
              {"alpha": [q(27, 15), q(-14, 15)],
               "beta": [q(-64, 45), q(-23, 45)],
               "lam": [q(15, 37), q(90, 37)]}, (0, 1), table_line=30,
              system=("first_point", "m1")),
    LabelData("A8+A6+A4+A1", "A3TwoA1", "su", [-10925, 8047, -3495, 5],
              {"alpha": [q(3862092, 2576595), q(559955, 2576595),
                         q(-820, 2576595)],
               "beta": [0, q(1, 9)],
               "lam": [q(-151837233 * 15, 1098463796),
                       q(31556708 * 15, 1098463796),
                       q(-44995 * 15, 1098463796)]}, (1, 1), table_line=31,
              system=("first_point", "discr")),
    LabelData("A9+A6+A4", "A3TwoA1", "su", [-7, 221, -3196, 57],
              {"alpha": [q(22549, 226590), q(1110632, 226590),
                         q(-20121, 226590)],
               "beta": [0, 4],
               "lam": [q(41949, 5395), q(-3470518, 5395), q(61959, 5395)]},
              (1, 1), table_line=27, system=("first_point", "discr")),
    LabelData("D9+A6+A4", "A3TwoA1", "su", None,
              {"alpha": [q(-13, 7)], "beta": [q(91)], "lam": [q(-1, 13)]},
              (1, 0), system=("first_point", "discr")),
    LabelData("D5+A8+A6", "A3TwoA1", "su", [11, -42, 63],
              {"alpha": [0, 1], "beta": [q(-7, 66), q(49, 66)],
               "lam": [q(-33, 4), q(-63, 4)]}, (0, 1),
              system=("first_point", "discr")),
    LabelData("E6+A7+A6", "A3TwoA1", "su", [4, -8, 7],
              {"alpha": [0, 1], "beta": [q(-6, 28), q(19, 28)],
               "lam": [q(-22, 4), q(7, 4)]}, (0, 1),
              system=("perfect_cube",)),
    LabelData("A7+A6+A4+A2", "A3TwoA1", "su", [-3, -57, 25],
              {"beta": [0, 1], "alpha": [q(18, 13), q(80, 13)],
               "lam": [q(-22, 39), q(25, 39)]}, (2, 0), table_line=35,
              system=("perfect_cube",)),
    LabelData("A7+2A6", "A3TwoA1", "su", [22, 56, 357, 245, 49],
              {"beta": [0, 1],
               "alpha": [q(40, 27), q(132, 27), q(84, 27), q(14, 27)],
               "lam": [q(-104, 54), q(203, 54), q(203, 54), q(49, 54)]},
              (0, 1), table_line=34, exempt=True,
              system=("perfect_cube",)),
]

CATALOG_BY_NAME = {lbl.name: lbl for lbl in CATALOG}

TABLE1_LABELS = [l.name for l in CATALOG if l.table_line is not None]
TRIPLE_POINT_LABELS = [l.name for l in CATALOG if l.table_line is None]


# ---------------------------------------------------------------------------
# Instantiation and synthesis
# ---------------------------------------------------------------------------

def label_field(label):
    if label.field_poly is None:
        return QQ
    return NumberField(label.field_poly)


def label_parameters(label, field=None):
    field = field or label_field(label)
    eps = field.gen() if isinstance(field, NumberField) else None
    out = {}
    for name, coeffs in label.params.items():
        acc = field.coerce(0)
        for c in reversed(coeffs):
            acc = (acc * eps if eps is not None else acc * 0) + field.coerce(c)
        out[name] = acc
    return out


def family_values(label, field=None, params=None):
    """Family parameter set (alpha, beta[, rho], centers) for a label."""
    family = FAMILIES[label.family]
    field = field or label_field(label)
    params = params or label_parameters(label, field)
    one = field.one
    vals = dict(params)
    if label.route in ("a1", "a2"):
        vals.update(family.reparam(vals, one))
    elif label.route == "a1_54":
        vals["alpha"] = _alpha_54(vals, one)
        vals.update(family.reparam(vals, one))
    elif label.route == "su":
        vals["rho"] = _rho_55(vals, one)
    elif label.route == "a2prime":
        pass  # alpha, beta given directly
    else:
        raise UnknownTarget(f"unknown route {label.route}")
    return vals


def check_exclusions(label, vals, field):
    family = FAMILIES[label.family]
    if label.family == "A3TwoA1" and "rho" not in vals:
        raise ExcludedParameters("family values incomplete")
    for e in family.exclusions(vals, field.one):
        if not e:
            raise ExcludedParameters("parameters lie on an excluded locus")


def instantiate_family(label, field=None):
    """CubicPair, trigonal model (identity-checked) and section for a label."""
    field = field or label_field(label)
    params = label_parameters(label, field)
    vals = family_values(label, field, params)
    check_exclusions(label, vals, field)
    family = FAMILIES[label.family]
    coeffs = family.cubics(vals, field.one)
    pair = CubicPair(field, coeffs)
    extra = []
    if family.extra_basepoint is not None and label.family == "A3TwoA1":
        extra.append(family.extra_basepoint(vals, field.one))
    data = build_bertini_data(pair)
    model = build_trigonal_model(pair, extra_basepoints=extra, data=data)
    section = _section_for(label, model, vals, field)
    section.check_distinct(model)
    return pair, data, model, section, vals


def _linear_in_a(evaluate, field):
    """Solve c0 + c1 a = 0 given a black-box evaluation, checking linearity."""
    f0 = evaluate(field.coerce(0))
    f1 = evaluate(field.one)
    fm = evaluate(-field.one)
    c2 = (f1 + fm - 2 * f0) * mpq(1, 2)
    if c2:
        raise IdentityFailure("expression is not linear in the coefficient")
    c1 = (f1 - fm) * mpq(1, 2)
    if not c1:
        raise DegeneratePencil("linear solve degenerates")
    return -f0 / c1


def solve_second_point(model, center):
    """The a with the section a (x - center)^2 tangent to the second section.

    The tangency condition is the vanishing of the discriminant of the sum
    with the stored quadratic section; it is linear in a.
    """
    field = model.field
    s = model.S2
    center = field.coerce(center)

    def disc_at(a):
        d2 = a + s[2]
        d1 = -2 * a * center + s[1]
        d0 = a * center * center + s[0]
        return d1 * d1 - 4 * d2 * d0

    return _linear_in_a(disc_at, field)


def _section_for(label, model, vals, field):
    if label.route in ("a1", "a1_54"):
        center = vals["mu"]
        a = solve_tangency_coefficient(model, [field.coerce(0)] * 3, center)
        return SectionSpec.tangency(field, a, center)
    if label.route == "a2":
        center = vals["mu"]
        a = solve_second_point(model, center)
        return SectionSpec.tangency(field, a, center)
    if label.route == "a2prime":
        center = vals["lam"]
        a = solve_second_point(model, center)
        return SectionSpec.tangency(field, a, center)
    if label.route == "su":
        center = vals["lam"]
        su = model.extra_sections[0]
        base = [-c for c in su]
        a = solve_tangency_coefficient(model, base, center)
        quad = SectionSpec.tangency(field, a, center).values()
        return SectionSpec(field, *[b + qq for b, qq in zip(base, quad)])
    raise UnknownTarget(f"unknown route {label.route}")


def final_coordinates(label, vals, field, sextic_y):
    """Apply the family's closing coordinate change to a plane sextic."""
    family = FAMILIES[label.family]
    forms = family.final_change(vals, field)
    allv = Y_VARS + XYZ
    lifted = sextic_y.with_vars(allv)
    subs = {k: v.with_vars(allv) for k, v in forms.items()}
    out = lifted.subs(subs)
    return out.drop_vars(Y_VARS).with_vars(XYZ)


class CurveRecord:
    """One catalog entry with its verification report."""

    def __init__(self, label, field, params, section, sextic, verification):
        self.label = label
        self.name = label.name
        self.field = field
        self.params = params
        self.section = section
        self.sextic = sextic
        self.verification = verification

    def __repr__(self):
        v = self.verification
        return (f"CurveRecord({self.name}: {v['singularities']}, "
                f"mu={v['total_milnor']}, n={v['field_degree']})")


def synthesize_record(name, with_invariants=True, with_screen=True,
                      with_j0=False):
    """Build and fully verify one catalog curve from its stored parameters."""
    label = CATALOG_BY_NAME[name] if isinstance(name, str) else name
    field = label_field(label)
    params = label_parameters(label, field)
    pair, data, model, section, vals = instantiate_family(label, field)
    sextic_y = sextic_from_section(pair, section, data=data)
    _check_basepoint_multiplicities(sextic_y, field)
    F = final_coordinates(label, vals, field, sextic_y)
    curve = PlaneCurve(F).scaled_primitive()
    reports = find_singular_points(curve)
    found = singularity_string(reports)
    expected = singularity_string(parse_singularity_string(label.name))
    mu_total = total_milnor(reports)
    verification = {
        "singularities": found,
        "total_milnor": mu_total,
        "field_degree": 1 if label.field_poly is None else len(label.field_poly) - 1,
        "signature": field.signature() if isinstance(field, NumberField) else (1, 0),
        "points": reports,
    }
    if found != expected or mu_total != 19:
        raise VerificationFailed(
            f"{label.name}: found {found} with mu={mu_total}", verification)
    if with_screen:
        verification["component_screen"] = component_screen(curve, reports)
    if with_invariants:
        J = _invariant_J_robust(curve, field, reports)
        verification["J"] = J
        verification["J_min_poly"] = _minpoly_of(J)
    if with_j0:
        try:
            j0 = _j0_robust(curve, field, reports)
            verification["j0"] = j0
            verification["j0_min_poly"] = None if j0 is None else _minpoly_of(j0)
        except Exception as exc:  # recorded, not fatal: j0 is a side invariant
            verification["j0"] = None
            verification["j0_error"] = str(exc)
    return CurveRecord(label, field, params, section, curve.poly, verification)


def _minpoly_of(x):
    if isinstance(x, FieldElement):
        return x.min_poly_over_QQ()
    return [-mpq(x), mpq(1)]


def _recenter_on(F, point, field, variant, shear):
    """Substitution placing the given projective point at (0 : 1 : 0)."""
    coords = [field.coerce(c) for c in point]
    pivot = max(range(3), key=lambda i: 1 if coords[i] else 0)
    others = [i for i in range(3) if i != pivot]
    if variant:
        others.reverse()
    cols = [None, None, None]
    e = [[field.one if i == j else field.zero for j in range(3)]
         for i in range(3)]
    cols[1] = coords
    cols[0] = e[others[0]]
    cols[2] = e[others[1]]
    if shear:
        cols[0] = [a + shear * b for a, b in zip(cols[0], cols[2])]
    xs = [MultiPoly.var(n, XYZ, field) for n in XYZ]
    forms = {XYZ[k]: cols[0][k] * xs[0] + cols[1][k] * xs[1] + cols[2][k] * xs[2]
             for k in range(3)}
    return F.subs(forms)


def distinguished_normalization(curve, field, reports):
    """Models of the curve with a maximal A-type point at (0 : 1 : 0).

    Yields the curve itself first (the catalog's final coordinates already
    place the first basepoint there), then re-centered models on each
    A-type point of maximal Milnor number that is rational over the base.
    """
    yield curve.poly
    cands = [r for r in reports if r.ade.startswith("A")]
    cands.sort(key=lambda r: -r.milnor)
    from .singular import _homog_point, _field_degree
    for rep in cands:
        if _field_degree(rep.field) != _field_degree(field):
            continue
        P = _homog_point(rep)
        for variant in (0, 1):
            for shear in (0, 1, -1, 2, -2):
                yield _recenter_on(curve.poly, P, field, variant,
                                   field.coerce(shear))


def _invariant_J_robust(curve, field, reports):
    from .errors import (DegenerateConfiguration, UnsupportedDegree)
    last = None
    for G in distinguished_normalization(curve, field, reports):
        try:
            return field_invariant_J(G, field)
        except (DegenerateConfiguration, UnsupportedDegree) as exc:
            last = exc
    raise last


def _j0_robust(curve, field, reports):
    from .errors import (DegenerateConfiguration, MultipleCriticalValues,
                         UnsupportedDegree)
    last = None
    for G in distinguished_normalization(curve, field, reports):
        try:
            res = cubic_resolvent(tetragonal_from_curve(G, field))
            return j0_invariant(res)
        except (DegenerateConfiguration, UnsupportedDegree) as exc:
            last = exc
    raise last


def _check_basepoint_multiplicities(sextic_y, field):
    """The pulled-back sextic must be double at the two visible basepoints."""
    for pt in ((0, 1, 0), (1, 0, 0)):
        vals = dict(zip(Y_VARS, (field.coerce(v) for v in pt)))
        if sextic_y.evaluate(vals):
            raise IdentityFailure("sextic misses a basepoint")
        for v in Y_VARS:
            if sextic_y.derivative(v).evaluate(vals):
                raise IdentityFailure("sextic is not double at a basepoint")
