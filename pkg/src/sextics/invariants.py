"""Field-of-definition invariants of the catalog curves.

Two independent projective invariants separate Galois-conjugate curves:
a cross-ratio-type invariant of the simple roots of the fiber discriminant,
and the one extra critical value of the functional j-invariant of the cubic
resolvent of the curve's tetragonal model.  Both live in the field of
definition and generate it.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import (DegenerateConfiguration, MultipleCriticalValues,
                     UnsupportedDegree)
from .numfield import FieldElement
from .poly import (MultiPoly, factor_rational, field_gcd, squarefree_decompose,
                   squarefree_univariate, _f_divmod, _f_strip,
                   _field_list_mul, _field_resultant)
from .singular import (_coeff_lists, _eval_coeff, factor_univariate_over,
                       resultant_bivariate_field)


def simple_factor_part(d, name=None):
    """Product of the multiplicity-one factors of a univariate polynomial."""
    return squarefree_decompose(d, name).simple_part()


def _disc_univariate(coeffs, field):
    """Discriminant of a dense univariate polynomial over a field."""
    coeffs = _f_strip([field.coerce(c) for c in coeffs])
    n = len(coeffs) - 1
    if n < 2:
        raise UnsupportedDegree("discriminant needs degree >= 2")
    deriv = _f_strip([coeffs[i] * i for i in range(1, len(coeffs))])
    res = _field_resultant(coeffs, deriv, field)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    inv = (coeffs[-1].inverse() if isinstance(coeffs[-1], FieldElement)
           else 1 / coeffs[-1])
    return res * inv * sign


def compute_j(dtilde, name=None):
    """The affine invariant of the simple-root configuration.

    Degree 3 uses the four points (roots and infinity), degree 4 the four
    roots, degree 5 the displayed closed form; each is invariant under
    x -> a x + b and is a rational function of the coefficients.
    """
    if isinstance(dtilde, MultiPoly):
        if name is None:
            live = [v for v in dtilde.vars if dtilde.degree(v) > 0]
            name = live[0] if live else dtilde.vars[0]
        coeffs = dtilde.to_univariate(name)
        field = dtilde.field
    else:
        coeffs = list(dtilde)
        field = None
        for c in coeffs:
            if isinstance(c, FieldElement):
                field = c.field
                break
        if field is None:
            from .numfield import QQ
            field = QQ
    coeffs = _f_strip([field.coerce(c) for c in coeffs])
    deg = len(coeffs) - 1
    if deg not in (3, 4, 5):
        raise UnsupportedDegree(f"invariant defined for degrees 3..5, got {deg}")
    delta = _disc_univariate(coeffs, field)
    if not delta:
        raise DegenerateConfiguration("vanishing discriminant")
    d = coeffs + [field.zero] * (6 - len(coeffs))
    if deg == 3:
        num = (3 * d[1] * d[3] - d[2] ** 2) ** 3 * (-4)
        den = d[3] ** 2 * delta * 27
        return num / den
    if deg == 4:
        num = (d[2] ** 2 + 12 * d[0] * d[4] - 3 * d[1] * d[3]) ** 3 * 4
        den = delta * 27
        return num / den
    num = (5 * d[3] * d[5] - 2 * d[4] ** 2) ** 10
    den = d[5] ** 12 * delta * mpq(5) ** 10
    return num / den


# ---------------------------------------------------------------------------
# Tetragonal models and the cubic resolvent
# ---------------------------------------------------------------------------

class TetragonalModel:
    """Reduced quartic y^4 + p(x) y^2 + q(x) y + r(x) over a field.

    Coefficients are dense lists in x.
    """

    def __init__(self, field, p, q, r):
        self.field = field
        self.p = _f_strip([field.coerce(c) for c in p])
        self.q = _f_strip([field.coerce(c) for c in q])
        self.r = _f_strip([field.coerce(c) for c in r])


class ResolventCurve:
    """Cubic resolvent y^3 - 2p y^2 + (p^2 - 4r) y + q^2 with its j map."""

    def __init__(self, field, p, q, b1, q2, j_num, j_den):
        self.field = field
        self.p = p
        self.q = q
        self.b1 = b1
        self.q2 = q2
        self.j_num = j_num
        self.j_den = j_den

    def resolvent_coeffs_y(self):
        """Dense y-coefficients [q^2, b1, -2p, 1] as x-lists."""
        one = [self.field.one]
        return [self.q2, self.b1, [c * (-2) for c in self.p], one]


def cubic_resolvent(model):
    """Resolvent of the tetragonal model and its reduced functional j."""
    field = model.field
    p, q, r = model.p, model.q, model.r

    def mul(a, b):
        return _field_list_mul(a or [field.zero], b or [field.zero], field)

    def add(a, b):
        n = max(len(a), len(b))
        return _f_strip([(a[i] if i < len(a) else field.zero)
                         + (b[i] if i < len(b) else field.zero)
                         for i in range(n)])

    def scale(a, s):
        return [c * s for c in a]

    p2 = mul(p, p)
    b1 = add(p2, scale(r, -4))
    q2 = mul(q, q)
    # j = 4 (p^2 + 12 r)^3 / (27 disc_y(resolvent))
    I = add(p2, scale(r, 12))
    j_num = scale(mul(mul(I, I), I), 4)
    # disc of y^3 + B y^2 + C y + D with B = -2p, C = b1, D = q^2:
    # 18 B C D - 4 B^3 D + B^2 C^2 - 4 C^3 - 27 D^2
    B, C, D = scale(p, -2), b1, q2
    disc = add(scale(mul(mul(B, C), D), 18),
               scale(mul(mul(mul(B, B), B), D), -4))
    disc = add(disc, mul(mul(B, B), mul(C, C)))
    disc = add(disc, scale(mul(mul(C, C), C), -4))
    disc = add(disc, scale(mul(D, D), -27))
    j_den = scale(disc, 27)
    if not j_den:
        raise DegenerateConfiguration("resolvent discriminant vanishes identically")
    g = field_gcd(j_num, j_den, field)
    if len(g) > 1:
        j_num = _f_divmod(j_num, g, field)[0]
        j_den = _f_divmod(j_den, g, field)[0]
    return ResolventCurve(field, p, q, b1, q2, _f_strip(j_num), _f_strip(j_den))


def j0_invariant(resolvent):
    """The critical value of j away from 0, 1, infinity, if any.

    Returns the value (an element of the model's field), None when no such
    critical value exists, and raises when several distinct ones survive.
    """
    field = resolvent.field
    num, den = resolvent.j_num, resolvent.j_den
    dn, dd = len(num) - 1, len(den) - 1
    deg = max(dn, dd)
    if deg <= 1:
        return None
    # R(t) = Res_x(num - t den, num' - t den') over the field, by t-interpolation
    lam_poly = _critical_value_polynomial(num, den, field)
    if not lam_poly:
        raise MultipleCriticalValues("critical-value polynomial vanished")
    # strip content and the factors carried by 0, 1 and infinity
    lam_poly = _strip_root(lam_poly, field.zero, field)
    lam_poly = _strip_root(lam_poly, field.one, field)
    if dn == dd:
        drop = num[-1] / den[-1]
        lam_poly = _strip_root(lam_poly, drop, field)
    if len(lam_poly) == 1:
        return None
    facs = factor_univariate_over(lam_poly, field)
    distinct = [f for f, _m in facs]
    if len(distinct) != 1 or len(distinct[0]) != 2:
        n_vals = sum(len(f) - 1 for f, _ in facs)
        raise MultipleCriticalValues(f"{n_vals} critical values survive")
    f = distinct[0]
    return -f[0] / f[1]


def _critical_value_polynomial(num, den, field):
    """Res_x(num - t den, (num - t den)') as a dense list in t."""
    dn, dd = len(num) - 1, len(den) - 1
    deg = max(dn, dd)
    # F has x-degree deg for generic t; F' has degree deg - 1; the Sylvester
    # entries are linear in t, so the resultant has t-degree at most 2 deg - 1
    t_bound = 2 * deg - 1
    points, values = [], []
    k = 0
    while len(points) <= t_bound:
        cands = (mpq(0),) if k == 0 else (mpq(k), mpq(-k))
        k += 1
        for cv in cands:
            if len(points) > t_bound:
                break
            c = field.coerce(cv)
            F = _f_strip([(num[i] if i < len(num) else field.zero)
                          - c * (den[i] if i < len(den) else field.zero)
                          for i in range(max(len(num), len(den)))])
            if len(F) - 1 != deg:
                continue  # degree drop: the infinity factor
            Fp = _f_strip([F[i] * i for i in range(1, len(F))])
            values.append(_field_resultant(F, Fp, field))
            points.append(cv)
    from .singular import _newton_interp_field
    return _newton_interp_field(points, values, field)


def _strip_root(coeffs, root, field):
    """Divide out (t - root) as often as it divides exactly."""
    from .singular import _synthetic_divide
    cur = _f_strip(list(coeffs))
    while len(cur) > 1:
        q, rem = _synthetic_divide(cur, root, field)
        if rem:
            break
        cur = _f_strip(q)
    return cur


# ---------------------------------------------------------------------------
# From a catalog curve to its invariants
# ---------------------------------------------------------------------------

def tetragonal_from_curve(F, field=None):
    """Tetragonal model of a sextic in the catalog's final coordinates.

    The distinguished point sits at (0 : 1 : 0), so the affine polynomial
    has fiber degree 4; it is made monic by the standard fiberwise scaling
    and depressed by the quarter-shift.
    """
    field = field or F.field
    f = F.eval_var("x3", 1).drop_vars(("x3",))
    y = "x2"
    if f.degree(y) != 4:
        raise UnsupportedDegree("defining polynomial must have fiber degree 4")
    rows = _coeff_lists(f, y, "x1")  # rows[i] = x-dense coefficient of y^i
    c4 = _f_strip(list(rows[4]))

    def mul(a, b):
        return _field_list_mul(a or [field.zero], b or [field.zero], field)

    # monicize: Y = c4 y gives Y^4 + b3 Y^3 + b2 Y^2 + b1 Y + b0
    b3 = _f_strip(list(rows[3]))
    b2 = mul(rows[2], c4)
    b1 = mul(rows[1], mul(c4, c4))
    b0 = mul(rows[0], mul(c4, mul(c4, c4)))

    def add(a, b):
        n = max(len(a), len(b))
        return _f_strip([(a[i] if i < len(a) else field.zero)
                         + (b[i] if i < len(b) else field.zero)
                         for i in range(n)])

    def scale(a, s):
        return [c * s for c in a]

    # depress: Y -> Y - b3/4
    p = add(b2, scale(mul(b3, b3), mpq(-3, 8)))
    q = add(add(b1, scale(mul(b2, b3), mpq(-1, 2))),
            scale(mul(b3, mul(b3, b3)), mpq(1, 8)))
    r = add(add(b0, scale(mul(b1, b3), mpq(-1, 4))),
            add(scale(mul(b2, mul(b3, b3)), mpq(1, 16)),
                scale(mul(mul(b3, b3), mul(b3, b3)), mpq(-3, 256))))
    model = TetragonalModel(field, p, q, r)
    _check_squarefree_fiber(model)
    return model


def _check_squarefree_fiber(model):
    field = model.field
    # the quartic must be squarefree as a polynomial in y over k(x): check
    # via the resultant with its derivative not vanishing identically
    res = cubic_resolvent(model)
    if not _f_strip(list(res.j_den)):
        raise DegenerateConfiguration("tetragonal model is not squarefree")


def discriminant_profile(F, field=None):
    """(disc_y of the affine polynomial, its simple part) as x-dense lists."""
    field = field or F.field
    f = F.eval_var("x3", 1).drop_vars(("x3",))
    x, y = "x1", "x2"
    fy = f.derivative(y)
    res = resultant_bivariate_field(f, fy, y, x)
    n = f.degree(y)
    lc = _f_strip(list(_coeff_lists(f, y, x)[-1]))
    disc, rem = _f_divmod(res, lc, field)
    if rem:
        raise AssertionError("leading coefficient does not divide the resultant")
    if (n * (n - 1) // 2) % 2:
        disc = [-c for c in disc]
    parts = squarefree_univariate(disc, field)
    simple = [field.one]
    for part, mult in parts:
        if mult == 1:
            simple = _field_list_mul(simple, part, field)
    return disc, simple


def field_invariant_J(F, field=None):
    """The affine invariant of the simple discriminant roots of the curve."""
    field = field or F.field
    _disc, simple = discriminant_profile(F, field)
    return compute_j(simple)
