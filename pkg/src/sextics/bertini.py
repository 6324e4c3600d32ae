"""The plane involution attached to a pencil of cubics, and its ruled model.

A pencil of cubics through the three coordinate vertices determines a
birational involution of the plane of degree 17.  Dividing by it maps the
plane two-to-one onto the ruled surface with a (-2)-section; the branch
curve there is trigonal and is cut out by an explicit cubic-in-fiber
equation whose coefficients are polynomial in the 14 pencil coefficients.
Sections of the ruling pull back to plane sextics: that is how every curve
in the catalog is synthesized.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import (DegeneratePencil, ForbiddenSection, IdentityFailure,
                     Indeterminate)
from .numfield import QQ, FieldElement
from .poly import MultiPoly, exact_divide, primed_symmetrize

Y_VARS = ("y1", "y2", "y3")

COEFF_NAMES = ("a1", "a2", "b1", "b2", "b3", "c1", "c2")
ALL_COEFF_NAMES = COEFF_NAMES + tuple(s + "p" for s in COEFF_NAMES)


# ---------------------------------------------------------------------------
# Symbolic coefficient formulas, computed once in the 14 pencil symbols
# ---------------------------------------------------------------------------

_formula_cache = {}


def _sym(name):
    from .poly import PRIMED_VARS
    vars_ = PRIMED_VARS + ("u2", "u3")
    return MultiPoly.var(name, vars_, QQ)


def coefficient_formulas():
    """Symbolic s_i, p_i, q_i, r_i and the u-section s^u_i.

    Each is a polynomial in a1..c2, a1p..c2p (and u2, u3 for the s^u),
    with the alternating-sign primed symmetrization applied:
    x_i = (-1)^i (x_0 under priming of i factors).
    """
    if _formula_cache:
        return _formula_cache
    a1, a2, b1, b2, b3, c1, c2 = (_sym(s) for s in COEFF_NAMES)
    u2, u3 = _sym("u2"), _sym("u3")

    s0 = a2 * c1 - a1 * c2
    r0 = -a1 * b2 * c2 + a1 * b3 * c1 + a2 * b1 * c2
    q0 = 4 * (a1 * c2 - b1 * b3) * s0 + 2 * b2 * r0
    p0 = b2 ** 2 - 4 * a2 * c1 - 4 * b1 * b3 + 8 * a1 * c2
    su0 = (s0 + a2 * c2 * u2 + (a2 * b2 - a1 * b3) * u3
           + a2 * b3 * u2 * u3 + a2 ** 2 * u3 ** 2)

    def signed_list(base, n):
        out = []
        for i in range(n + 1):
            term = primed_symmetrize(base, i)
            out.append(term if i % 2 == 0 else -term)
        return out

    _formula_cache["s"] = signed_list(s0, 2)
    _formula_cache["p"] = signed_list(p0, 2)
    _formula_cache["q"] = signed_list(q0, 4)
    _formula_cache["r"] = signed_list(r0, 3)
    _formula_cache["su"] = signed_list(su0, 2)
    return _formula_cache


def eval_formula(formula, values, one):
    """Evaluate a symbolic coefficient formula in an arbitrary ring.

    ``values`` maps symbol names to ring elements; ``one`` is the ring unit.
    """
    total = one * 0
    for e, c in formula.terms.items():
        acc = one * c
        for var, k in zip(formula.vars, e):
            if k:
                acc = acc * values[var] ** k
        total = total + acc
    return total


# ---------------------------------------------------------------------------
# Cubic pairs
# ---------------------------------------------------------------------------

class CubicPair:
    """Two cubics through the coordinate vertices, by their 14 coefficients.

    The shape is w = x3^2 (a1 x1 + a2 x2) + x3 (b1 x1^2 + b2 x1 x2 + b3 x2^2)
    + c1 x1^2 x2 + c2 x1 x2^2, and the same with primed coefficients.
    """

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = {k: field.coerce(v) for k, v in coeffs.items()}
        missing = set(ALL_COEFF_NAMES) - set(self.coeffs)
        if missing:
            raise ValueError(f"missing coefficients: {sorted(missing)}")
        c = self.coeffs
        self.kappa = c["a1"] * c["b1p"] - c["a1p"] * c["b1"]

    def value_map(self, u=None):
        vals = dict(self.coeffs)
        if u is not None:
            vals["u2"], vals["u3"] = (self.field.coerce(u[0]),
                                      self.field.coerce(u[1]))
        return vals

    def w(self, vars_=Y_VARS):
        return cubic_form([self.coeffs[s] for s in COEFF_NAMES],
                          vars_, self.field)

    def w_prime(self, vars_=Y_VARS):
        return cubic_form([self.coeffs[s + "p"] for s in COEFF_NAMES],
                          vars_, self.field)

    def is_proportional(self):
        w, wp = self.w(), self.w_prime()
        if w.is_zero() or wp.is_zero():
            return True
        for e, c in w.terms.items():
            cp = wp.terms.get(e)
            if cp:
                ratio_w = c
                ratio_p = cp
                break
        else:
            return False
        return (w * ratio_p - wp * ratio_w).is_zero()

    def __repr__(self):
        return f"CubicPair({self.coeffs})"


def cubic_form(seven, vars_, field):
    y1 = MultiPoly.var("y1", vars_, field)
    y2 = MultiPoly.var("y2", vars_, field)
    y3 = MultiPoly.var("y3", vars_, field)
    a1, a2, b1, b2, b3, c1, c2 = seven
    return (y3 ** 2 * (y1 * a1 + y2 * a2)
            + y3 * (y1 ** 2 * b1 + y1 * y2 * b2 + y2 ** 2 * b3)
            + y1 ** 2 * y2 * c1 + y1 * y2 ** 2 * c2)


# ---------------------------------------------------------------------------
# Involution data
# ---------------------------------------------------------------------------

class BertiniData:
    """All plane-side polynomials attached to a pencil."""

    def __init__(self, pair, pieces):
        self.pair = pair
        for k, v in pieces.items():
            setattr(self, k, v)


def build_bertini_data(pair):
    """Pencil-member coefficients, the two contracted sextics, the degree-9
    fixed curve, and the coordinates of the involution itself."""
    field = pair.field
    vars_ = Y_VARS
    if pair.is_proportional():
        raise DegeneratePencil("the two cubics are proportional")
    w = pair.w()
    wp = pair.w_prime()
    c = pair.coeffs

    def member(s):
        # pencil-member coefficient: a_i w'(y) - a_i' w(y) and alike
        return wp * c[s] - w * c[s + "p"]

    A1, A2 = member("a1"), member("a2")
    B1, B2, B3 = member("b1"), member("b2"), member("b3")
    C1, C2 = member("c1"), member("c2")
    kappa = pair.kappa
    y1 = MultiPoly.var("y1", vars_, field)
    y2 = MultiPoly.var("y2", vars_, field)
    y3 = MultiPoly.var("y3", vars_, field)

    def bracket(expr, uvar):
        try:
            return exact_divide(expr, uvar)
        except Exception as exc:
            raise DegeneratePencil(f"bracketed division by {uvar} failed") from exc

    t1 = bracket(B1 + y1 * y3 ** 2 * kappa, y2)
    t2 = bracket(A1 - y1 ** 2 * y3 * kappa, y2)
    t3 = bracket(A2 * y3 + B3 * y2, y1)
    C5 = A2 * t1 + t2 * t3 + y1 * y3 * B3 * kappa
    phi6 = A1 * C2 + y3 * C5
    psi6 = A2 * C1 + y3 * C5
    r1p = B1 * A2 ** 2 - B2 * A1 * A2 + B3 * A1 ** 2
    rho = psi6 * bracket(A1 * y3 + B1 * y1, y2) - phi6 * bracket(A2 * y3 + B3 * y2, y1)

    if phi6.total_degree() != 6 or psi6.total_degree() != 6 \
            or C5.total_degree() != 5 or rho.total_degree() != 9:
        raise DegeneratePencil("degree invariants failed; pencil degenerate")

    z1 = phi6 * bracket(A2 ** 2 * phi6 + B3 * r1p, y1)
    z2 = psi6 * bracket(A1 ** 2 * psi6 + B1 * r1p, y2)
    z3 = psi6 * phi6 * C5

    return BertiniData(pair, dict(A1=A1, A2=A2, B1=B1, B2=B2, B3=B3, C1=C1,
                                  C2=C2, C5=C5, phi6=phi6, psi6=psi6,
                                  r1p=r1p, rho=rho, z=(z1, z2, z3),
                                  w=w, w_prime=wp))


def bertini_involution(data, point):
    """Image of a projective point; exact evaluation of the degree-17 map."""
    field = data.pair.field
    vals = {"y1": field.coerce(point[0]), "y2": field.coerce(point[1]),
            "y3": field.coerce(point[2])}
    image = tuple(zi.evaluate(vals) for zi in data.z)
    if not any(image):
        raise Indeterminate("point lies in the indeterminacy locus")
    return image


def proportional(p, q):
    """Projective equality of coordinate tuples."""
    n = len(p)
    for i in range(n):
        for j in range(n):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# The trigonal model on the ruled surface
# ---------------------------------------------------------------------------

class TrigonalModel:
    """Branch-curve data for the two-to-one map to the ruled surface.

    Coefficient lists are dense in the affine fiber-base coordinate
    (low degree first): P2 quadratic, Q4 quartic, R3 cubic, S2 and the
    extra sections quadratic.  The branch curve is
    -4 y^3 + y^2 P2(x) + y Q4(x) + R3(x)^2 = 0.
    """

    def __init__(self, pair, data, P2, Q4, R3, S2, extra_sections):
        self.pair = pair
        self.data = data
        self.P2, self.Q4, self.R3 = P2, Q4, R3
        self.S2 = S2
        self.extra_sections = extra_sections  # list of S2^u coefficient lists
        self.field = pair.field

    def kbar(self, vars_=("xb", "yb")):
        field = self.field
        xb = MultiPoly.var(vars_[0], vars_, field)
        yb = MultiPoly.var(vars_[1], vars_, field)
        out = -4 * yb ** 3
        out = out + yb ** 2 * _poly_of(self.P2, xb, field, vars_)
        out = out + yb * _poly_of(self.Q4, xb, field, vars_)
        r3 = _poly_of(self.R3, xb, field, vars_)
        return out + r3 * r3

    def kbar_at_section(self, section):
        """Restriction of the branch equation to y = section(x): dense in x."""
        field = self.field
        d = [field.coerce(v) for v in section]

        def mul(a, b):
            out = [field.zero] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, yv in enumerate(b):
                        if yv:
                            out[i + j] = out[i + j] + x * yv
            return out

        def add(a, b):
            n = max(len(a), len(b))
            return [(a[i] if i < len(a) else field.zero)
                    + (b[i] if i < len(b) else field.zero) for i in range(n)]

        d2 = mul(d, d)
        d3 = mul(d2, d)
        out = [v * (-4) for v in d3]
        out = add(out, mul(d2, self.P2))
        out = add(out, mul(d, self.Q4))
        out = add(out, mul(self.R3, self.R3))
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out


def _poly_of(coeffs, x, field, vars_):
    out = MultiPoly.zero(vars_, field)
    for i, ci in enumerate(coeffs):
        out = out + x ** i * ci
    return out


def trigonal_coefficients(values, one):
    """p, q, r, s (and s^u when u2,u3 present) in an arbitrary ring."""
    forms = coefficient_formulas()
    out = {}
    for key in ("p", "q", "r", "s"):
        out[key] = [eval_formula(f, values, one) for f in forms[key]]
    if "u2" in values:
        out["su"] = [eval_formula(f, values, one) for f in forms["su"]]
    return out


def build_trigonal_model(pair, extra_basepoints=(), check=True, data=None):
    """Assemble the branch-curve polynomials and verify the two structural
    identities before returning (symbolically over QQ, by 30-point
    evaluation over larger fields)."""
    field = pair.field
    if data is None:
        data = build_bertini_data(pair)
    coeffs = trigonal_coefficients(pair.value_map(), field.one)
    extra = []
    for u in extra_basepoints:
        cu = trigonal_coefficients(pair.value_map(u), field.one)
        extra.append(cu["su"])
    model = TrigonalModel(pair, data, coeffs["p"], coeffs["q"], coeffs["r"],
                          coeffs["s"], extra)
    if check:
        verify_model_identities(model)
    return model


def verify_model_identities(model):
    """psi6 = phi6 + S2(w, w') and the square identity for the fixed curve."""
    pair, data = model.pair, model.data
    field = pair.field
    if getattr(field, "is_rational", False):
        _verify_symbolic(model, data)
    else:
        _verify_by_evaluation(model, data)


def _binary_at(coeffs, t1, t2):
    """Homogeneous value sum c_i t1^i t2^(n-i) for ring elements t1, t2."""
    n = len(coeffs) - 1
    total = None
    for i, c in enumerate(coeffs):
        term = c * t1 ** i * t2 ** (n - i)
        total = term if total is None else total + term
    return total


def _verify_symbolic(model, data):
    w, wp = data.w, data.w_prime
    s2 = _binary_at(model.S2, w, wp)
    if not (data.psi6 - data.phi6 - s2).is_zero():
        raise IdentityFailure("section relation psi6 = phi6 + S2(w, w') failed")
    lhs = data.rho ** 2
    rhs = (-4) * data.phi6 ** 3 \
        + data.phi6 ** 2 * _binary_at(model.P2, w, wp) \
        + data.phi6 * _binary_at(model.Q4, w, wp) \
        + _binary_at(model.R3, w, wp) ** 2
    if not (lhs - rhs).is_zero():
        raise IdentityFailure("square identity for the fixed curve failed")
    for su in model.extra_sections:
        psu = data.phi6 + _binary_at(su, w, wp)
        # the u-section sextic must be contracted to u by the involution:
        # checked downstream; here only degree sanity
        if psu.total_degree() > 6:
            raise IdentityFailure("u-section relation has wrong degree")


def _verify_by_evaluation(model, data, n_points=30):
    field = model.field
    pts = _sample_points(n_points)
    for (p1, p2, p3) in pts:
        vals = {"y1": field.coerce(p1), "y2": field.coerce(p2),
                "y3": field.coerce(p3)}
        w = data.w.evaluate(vals)
        wp = data.w_prime.evaluate(vals)
        phi = data.phi6.evaluate(vals)
        psi = data.psi6.evaluate(vals)
        rho = data.rho.evaluate(vals)
        if psi - phi - _binary_at(model.S2, w, wp):
            raise IdentityFailure("section relation failed at a sample point")
        rhs = (-4) * phi ** 3 + phi ** 2 * _binary_at(model.P2, w, wp) \
            + phi * _binary_at(model.Q4, w, wp) + _binary_at(model.R3, w, wp) ** 2
        if rho * rho - rhs:
            raise IdentityFailure("square identity failed at a sample point")


def _sample_points(n):
    pts = []
    k = 1
    while len(pts) < n:
        pts.append((mpq(k), mpq(k * k % 11 - 5), mpq(1)))
        pts.append((mpq(-k), mpq((k * 3) % 7 + 1), mpq(2)))
        k += 1
    return pts[:n]


# ---------------------------------------------------------------------------
# Sections and the sextics they pull back to
# ---------------------------------------------------------------------------

class SectionSpec:
    """A proper section y = d0 + d1 x + d2 x^2 of the ruling."""

    def __init__(self, field, d0, d1, d2):
        self.field = field
        self.d = (field.coerce(d0), field.coerce(d1), field.coerce(d2))

    @classmethod
    def tangency(cls, field, a, center):
        """Section a*(x - center)^2."""
        a = field.coerce(a)
        center = field.coerce(center)
        return cls(field, a * center * center, -2 * a * center, a)

    def values(self):
        return self.d

    def check_distinct(self, model):
        """Reject sections equal to a stored section of the model or to 0."""
        d = self.d
        if not any(d):
            raise ForbiddenSection("section coincides with the zero section")
        neg_s2 = [-c for c in model.S2]
        if list(d) == neg_s2:
            raise ForbiddenSection("section coincides with the second-point section")
        for su in model.extra_sections:
            if list(d) == [-c for c in su]:
                raise ForbiddenSection("section coincides with an extra-point section")

    def __repr__(self):
        return f"SectionSpec(d0={self.d[0]}, d1={self.d[1]}, d2={self.d[2]})"


def sextic_from_section(pair, section, data=None):
    """Plane sextic pulled back from the section: phi6 - D2(w, w')."""
    if data is None:
        data = build_bertini_data(pair)
    d0, d1, d2 = section.values() if isinstance(section, SectionSpec) else section
    w, wp = data.w, data.w_prime
    return data.phi6 - (wp * wp * d0 + w * wp * d1 + w * w * d2)


def pullback_intersect(model, section, center, forced_factor=True):
    """Coefficients of the branch equation restricted to the section,
    expanded about the center.

    With ``forced_factor`` the section is tangent to the branch curve over
    the center and the first two coefficients must vanish; the remaining
    quartic m0..m4 is returned.  Otherwise the full expansion comes back.
    """
    field = model.field
    d = section.values() if isinstance(section, SectionSpec) else \
        [field.coerce(v) for v in section]
    restricted = model.kbar_at_section(d)
    shifted = _shift_univariate(restricted, field.coerce(center), field)
    if forced_factor:
        if shifted[0] or shifted[1]:
            raise IdentityFailure(
                "restriction is not divisible by the square of the center fiber")
        out = shifted[2:7]
        while len(out) < 5:
            out.append(field.zero)
        return out
    return shifted


def _shift_univariate(coeffs, c, field):
    """Coefficients of f(u + c) from those of f(x)."""
    out = [field.zero] * len(coeffs)
    for a in reversed(coeffs):
        carry = field.coerce(a)
        # multiply current polynomial (in u) by (u + c) then add a: Horner
        prev = list(out)
        out[0] = prev[0] * c + carry
        for i in range(1, len(coeffs)):
            out[i] = prev[i] * c + prev[i - 1]
    return out


def solve_tangency_coefficient(model, base_section, center):
    """The unique a making m0 vanish for sections base + a*(x-center)^2.

    The first nontrivial coefficient of the restricted branch equation is
    linear in a whenever the base section already meets the branch curve
    doubly over the center.
    """
    field = model.field
    center = field.coerce(center)
    base = [field.coerce(v) for v in base_section]
    quad = SectionSpec.tangency(field, field.one, center).values()
    # restriction at a = 0 and linear response at a = 1
    r0 = _shift_univariate(model.kbar_at_section(base), center, field)
    r1 = _shift_univariate(
        model.kbar_at_section([b + q for b, q in zip(base, quad)]), center, field)
    rm1 = _shift_univariate(
        model.kbar_at_section([b - q for b, q in zip(base, quad)]), center, field)
    if r0[0] or r0[1]:
        raise IdentityFailure("base section is not doubly tangent over the center")
    # m0(a) = c0 + c1 a + c2 a^2 + c3 a^3 with the cubic terms cancelling
    c0 = r0[2]
    c1 = (r1[2] - rm1[2]) / 2
    c2 = (r1[2] + rm1[2] - 2 * c0) / 2
    if c2:
        raise IdentityFailure("tangency coefficient is not linear in a")
    if not c1:
        raise DegeneratePencil("tangency equation degenerates")
    return -c0 / c1
