"""Constraint systems on the family parameters and their exact solution.

The degeneration conditions (deeper tangency, second- and third-point
tangency, extra singular points, cusps) become polynomials in the family
unknowns once every denominator is cleared; one unknown is eliminated by a
resultant, the eliminant factored over the rationals, spurious factors
rejected against the recorded denominators and excluded loci, and the
surviving factors back-substituted over their number fields.  Every cluster
is verified by exact substitution into the original equations; discarded
factors are kept for audit.
"""

from __future__ import annotations

from gmpy2 import mpq

from .bertini import coefficient_formulas, eval_formula
from .catalog import (CATALOG_BY_NAME, FAMILIES, _alpha_54, _rho_55,
                      label_field, label_parameters)
from .errors import IdentityFailure, PositiveDimensional, UnknownTarget
from .numfield import NumberField, QQ, FieldElement, extend_field
from .poly import (MultiPoly, exact_divide, divides, factor_rational,
                   factor_over_field, field_gcd, gcd_multivariate,
                   interpolate_rational, resultant, _rat_to_int,
                   int_resultant)

# ---------------------------------------------------------------------------
# Rational functions over QQ[unknowns] for the family-value stage
# ---------------------------------------------------------------------------


class Frac:
    """Reduced quotient of multivariate polynomials over QQ."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = MultiPoly.const(1, num.vars, num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero():
            g = gcd_multivariate(num, den)
            if not g.is_constant():
                num = exact_divide(num, g)
                den = exact_divide(den, g)
            cn = num.content_rational()
            cd = den.content_rational()
            if cd != 1 or cn != 1:
                s = cn / cd
                num = num.map_coeffs(lambda c: c / cn, num.field)
                den = den.map_coeffs(lambda c: c / cd, den.field)
                num = num * s
        if num.is_zero():
            den = MultiPoly.const(1, num.vars, num.field)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, x, vars_):
        if isinstance(x, Frac):
            return x
        if isinstance(x, MultiPoly):
            return cls(x, reduce=False)
        return cls(MultiPoly.const(x, vars_, QQ), reduce=False)

    def _pair(self, other):
        if isinstance(other, Frac):
            return other
        return Frac.of(other, self.num.vars)

    def __add__(self, other):
        o = self._pair(other)
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._pair(other))

    def __rsub__(self, other):
        return self._pair(other) + (-self)

    def __mul__(self, other):
        o = self._pair(other)
        return Frac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._pair(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return Frac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._pair(other) / self

    def __pow__(self, n):
        if n < 0:
            return (Frac.of(1, self.num.vars) / self) ** (-n)
        out = Frac.of(1, self.num.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"({self.num.to_string()})/({self.den.to_string()})"


# ---------------------------------------------------------------------------
# Cleared family pipelines
# ---------------------------------------------------------------------------

class ClearedSystemData:
    """Cleared branch-curve data over QQ[unknowns] for one family route."""

    def __init__(self, unknowns, tri, registry, su=None, su_den=None,
                 center_name=None):
        self.unknowns = unknowns   # tuple of variable names
        self.tri = tri             # dict p, q, r, s -> lists of MultiPoly
        self.registry = registry   # known denominator / exclusion factors
        self.su = su               # cleared u-section coefficients, or None
        self.su_den = su_den       # its denominator polynomial
        self.center_name = center_name


def _registry_add(registry, poly):
    if poly.is_constant():
        return
    p = poly.primitive_rational()
    _, facs = factor_rational_or_self(p)
    for f in facs:
        key = f.to_string()
        if key not in registry:
            registry[key] = f


def factor_rational_or_self(p):
    """Factor a multivariate registry entry when univariate; else keep it."""
    live = [v for v in p.vars if p.degree(v) > 0]
    if len(live) == 1:
        unit, facs = factor_rational(p, live[0])
        return unit, [f for f, _m in facs]
    return mpq(1), [p]


def cleared_family_data(family_id, route, unknowns, fixed=None):
    """Trigonal coefficient polynomials with all denominators cleared.

    ``fixed`` maps parameter names to rational constants, restricting the
    family to a subvariety (used to cut a system down to one unknown).
    """
    family = FAMILIES[family_id]
    vars_ = tuple(unknowns)
    one = Frac.of(1, vars_)
    sym = {n: Frac(MultiPoly.var(n, vars_), reduce=False) for n in vars_}
    for k, v in (fixed or {}).items():
        sym[k] = Frac.of(mpq(v), vars_)
    vals = dict(sym)
    if route in ("a1", "a2"):
        vals.update(family.reparam(vals, one))
    elif route == "a1_54":
        vals["alpha"] = _alpha_54(vals, one)
        vals.update(family.reparam(vals, one))
    elif route == "su":
        vals["rho"] = _rho_55(vals, one)
    elif route == "a2prime":
        pass
    else:
        raise UnknownTarget(f"unknown route {route}")
    coeffs = family.cubics(vals, one)
    registry = {}
    # common denominator of all 28 cubic coefficients
    D = MultiPoly.const(1, vars_, QQ)
    for c in coeffs.values():
        g = gcd_multivariate(D, c.den)
        D = exact_divide(D * c.den, g)
    cleared = {}
    for k, c in coeffs.items():
        cleared[k] = (c.num * exact_divide(D, c.den)).primitive_rational() \
            if False else c.num * exact_divide(D, c.den)
    _registry_add(registry, D)
    for c in coeffs.values():
        _registry_add(registry, c.den)
    for e in family.exclusions(vals, one):
        ef = e if isinstance(e, Frac) else Frac.of(e, vars_)
        _registry_add(registry, ef.num)
        _registry_add(registry, ef.den)
    one_poly = MultiPoly.const(1, vars_, QQ)
    tri = {}
    forms = coefficient_formulas()
    for key in ("p", "q", "r", "s"):
        tri[key] = [eval_formula(f, cleared, one_poly) for f in forms[key]]
    su = su_den = None
    if family.extra_basepoint is not None and route in ("su", "a1_54"):
        u2, u3 = family.extra_basepoint(vals, one)
        fvals = {k: Frac.of(v, vars_) for k, v in cleared.items()}
        fvals["u2"], fvals["u3"] = u2, u3
        su_f = [eval_formula(f, fvals, one) for f in forms["su"]]
        den = MultiPoly.const(1, vars_, QQ)
        for c in su_f:
            g = gcd_multivariate(den, c.den)
            den = exact_divide(den * c.den, g)
        su = [c.num * exact_divide(den, c.den) for c in su_f]
        su_den = den
        _registry_add(registry, den)
    return ClearedSystemData(vars_, tri, registry, su, su_den)


# ---------------------------------------------------------------------------
# Cleared restriction of the branch equation to a section
# ---------------------------------------------------------------------------

def _list_mul(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
    return out


def _list_add(a, b, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero)
            for i in range(n)]


def _list_scale(a, s):
    return [x * s for x in a]


def restrict_kbar(tri, section, den, vars_):
    """den^3 K(x, N(x)/den) as a dense x-list of polynomials."""
    zero = MultiPoly.zero(vars_, QQ)
    N = section
    N2 = _list_mul(N, N, zero)
    N3 = _list_mul(N2, N, zero)
    out = _list_scale(N3, MultiPoly.const(-4, vars_, QQ))
    out = _list_add(out, _list_scale(_list_mul(N2, tri["p"], zero), den), zero)
    out = _list_add(out, _list_scale(_list_mul(N, tri["q"], zero), den * den),
                    zero)
    r2 = _list_mul(tri["r"], tri["r"], zero)
    out = _list_add(out, _list_scale(r2, den * den * den), zero)
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def shift_list(coeffs, center, zero):
    """Coefficients of f(u + center) for polynomial entries."""
    out = [zero] * len(coeffs)
    for a in reversed(coeffs):
        prev = list(out)
        out[0] = prev[0] * center + a
        for i in range(1, len(coeffs)):
            out[i] = prev[i] * center + prev[i - 1]
    return out


def shift_list_frac(coeffs, num, den, zero):
    """den^deg f(u + num/den): clears a fractional expansion center."""
    n = len(coeffs) - 1
    # sum_i f_i (den u + num)^i den^(n-i)
    out = [zero] * (n + 1)
    lin = [num, den]
    power = [MultiPoly.const(1, num.vars, QQ)]
    den_pow = [MultiPoly.const(1, num.vars, QQ)]
    for _ in range(n):
        den_pow.append(den_pow[-1] * den)
    for i, fi in enumerate(coeffs):
        if not fi.is_zero():
            term = _list_scale(power, fi * den_pow[n - i])
            out = _list_add(out, term, zero)
        if i < n:
            power = _list_mul(power, lin, zero)
    return out


class ClearedSection:
    """Section N(x)/den with its expansion center (a symbol or a fraction)."""

    def __init__(self, N, den, center_num, center_den=None):
        self.N = N
        self.den = den
        self.center_num = center_num
        self.center_den = center_den  # None: polynomial center


def build_section(data, route, vars_, fixed=None):
    """Cleared section for the route, with the tangency coefficient solved in."""
    zero = MultiPoly.zero(vars_, QQ)
    one = MultiPoly.const(1, vars_, QQ)
    tri = data.tri
    fixed = fixed or {}

    def centered(name):
        if name in fixed:
            return MultiPoly.const(mpq(fixed[name]), vars_, QQ)
        return MultiPoly.var(name, vars_)

    def quad_at(center):
        return [center * center, center * (-2), one]

    if route in ("a1", "a1_54", "a2", "a2prime"):
        center = centered("mu" if route != "a2prime" else "lam")
        quad = quad_at(center)
        if route in ("a1", "a1_54"):
            base = [zero, zero, zero]
            base_den = one
            r0 = shift_list(restrict_kbar(tri, [zero], base_den, vars_),
                            center, zero)
            r1 = shift_list(restrict_kbar(tri, quad, base_den, vars_),
                            center, zero)
            if not r0[0].is_zero() or not r0[1].is_zero():
                raise IdentityFailure("zero section is not doubly tangent")
            c0 = r0[2]
            c1 = r1[2] - r0[2]
        else:
            # tangency with the second-point section: disc(a q + S2) linear in a
            s = tri["s"]
            def disc_of(dl):
                return dl[1] * dl[1] - 4 * dl[2] * dl[0]
            f0 = disc_of(s)
            f1 = disc_of(_list_add(quad, s, zero))
            fm = disc_of(_list_add(_list_scale(quad, -one), s, zero))
            c2 = f1 + fm - 2 * f0
            if not c2.is_zero():
                raise IdentityFailure("second-point condition is not linear")
            c0 = f0
            c1 = (f1 - fm) * mpq(1, 2)
        N = _list_scale(quad, -c0)
        return ClearedSection(N, c1, center), c1
    if route == "su":
        center = centered("lam")
        quad = quad_at(center)
        base = [-c for c in data.su]
        eu = data.su_den
        r0 = shift_list(restrict_kbar(tri, base, eu, vars_), center, zero)
        full = _list_add(base, _list_scale(quad, eu), zero)
        r1 = shift_list(restrict_kbar(tri, full, eu, vars_), center, zero)
        if not r0[0].is_zero() or not r0[1].is_zero():
            raise IdentityFailure("u-section base is not doubly tangent at lam")
        c0 = r0[2]
        c1 = r1[2] - r0[2]
        # D2 = base/eu + (-c0/c1)(x - lam)^2 = N / (eu c1)
        N = _list_add(_list_scale(base, c1), _list_scale(quad, -c0 * eu), zero)
        return ClearedSection(N, eu * c1, center), c1
    raise UnknownTarget(f"unknown route {route}")


# ---------------------------------------------------------------------------
# Equations
# ---------------------------------------------------------------------------

def _disc_quadratic(c):
    return c[1] * c[1] - 4 * c[2] * c[0]


def _disc_cubic(c):
    c0, c1, c2, c3 = c
    return (18 * c3 * c2 * c1 * c0 - 4 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2
            - 4 * c3 * c1 ** 3 - 27 * c3 ** 2 * c0 ** 2)


def _disc_quartic(c):
    e, d, cc, b, a = c
    return (256 * a ** 3 * e ** 3 - 192 * a ** 2 * b * d * e ** 2
            - 128 * a ** 2 * cc ** 2 * e ** 2 + 144 * a ** 2 * cc * d ** 2 * e
            - 27 * a ** 2 * d ** 4 + 144 * a * b ** 2 * cc * e ** 2
            - 6 * a * b ** 2 * d ** 2 * e - 80 * a * b * cc ** 2 * d * e
            + 18 * a * b * cc * d ** 3 + 16 * a * cc ** 4 * e
            - 4 * a * cc ** 3 * d ** 2 - 27 * b ** 4 * e ** 2
            + 18 * b ** 3 * cc * d * e - 4 * b ** 3 * d ** 3
            - 4 * b ** 2 * cc ** 3 * e + b ** 2 * cc ** 2 * d ** 2)


def _resultant_list(f, g, vars_):
    """Resultant of two dense coefficient lists of multivariate polynomials."""
    fv = MultiPoly.zero(vars_ + ("_u",), QQ)
    gv = MultiPoly.zero(vars_ + ("_u",), QQ)
    u = MultiPoly.var("_u", vars_ + ("_u",), QQ)
    for i, c in enumerate(f):
        fv = fv + c.with_vars(vars_ + ("_u",)) * u ** i
    for i, c in enumerate(g):
        gv = gv + c.with_vars(vars_ + ("_u",)) * u ** i
    from .poly import sylvester_resultant
    res = sylvester_resultant(fv, gv, "_u")
    return res.drop_vars(("_u",)).with_vars(vars_)


class ConstraintSystem:
    """Equations over QQ[unknowns] with provenance and known denominators."""

    def __init__(self, family, target, unknowns, equations, provenance,
                 registry, verify_equations=(), audit=None):
        self.family = family
        self.target = target
        self.unknowns = unknowns
        self.equations = equations
        self.provenance = provenance
        self.registry = registry
        self.verify_equations = list(verify_equations)
        self.audit = audit if audit is not None else []

    def __repr__(self):
        degs = [
            tuple(e.degree(v) for v in self.unknowns) for e in self.equations]
        return (f"ConstraintSystem({self.family}:{self.target}, "
                f"unknowns={self.unknowns}, degrees={degs})")


def strip_equation(E, registry, audit=None):
    """Remove rational content and known spurious factors (recorded)."""
    if E.is_zero():
        return E
    E = E.primitive_rational()
    changed = True
    while changed:
        changed = False
        for key, p in registry.items():
            while True:
                try:
                    q = exact_divide(E, p)
                except Exception:
                    break
                E = q
                changed = True
                if audit is not None:
                    audit.append(("stripped", key))
                if E.is_constant():
                    return E.primitive_rational()
        E = E.primitive_rational()
    return E


def joint_strip(polys, registry, audit=None):
    """Divide a family by common registry factors and rational content.

    Keeps ratios intact, so homogeneous constructions (discriminants,
    resultants, the perfect-cube conditions) are only rescaled by nonzero
    excluded-locus factors.
    """
    import math as _m
    from gmpy2 import mpz
    from .errors import DivisionNotExact as _DNE
    if not any(not p.is_zero() for p in polys):
        return list(polys)
    num, den = mpz(0), mpz(1)
    for p in polys:
        if p.is_zero():
            continue
        c = p.content_rational()
        num = mpz(_m.gcd(int(num), int(c.numerator)))
        den = den * c.denominator // _m.gcd(int(den), int(c.denominator))
    cont = mpq(num, den)
    if cont and cont != 1:
        inv = 1 / cont
        polys = [p if p.is_zero() else p.map_coeffs(lambda v: v * inv, p.field)
                 for p in polys]
    changed = True
    while changed:
        changed = False
        for key, p in registry.items():
            while True:
                try:
                    divided = {i: exact_divide(e, p)
                               for i, e in enumerate(polys) if not e.is_zero()}
                except _DNE:
                    break
                polys = [divided.get(i, e) for i, e in enumerate(polys)]
                changed = True
                if audit is not None:
                    audit.append(("joint_stripped", key))
    # whatever common factor remains beyond the registry
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else gcd_multivariate(g, p)
        if g.is_constant():
            break
    if g is not None and not g.is_constant():
        polys = [p if p.is_zero() else exact_divide(p, g) for p in polys]
        if audit is not None:
            audit.append(("joint_gcd", g.to_string()))
    return polys


def build_constraint_system(family_id, target):
    """Cleared polynomial system for a stored catalog target."""
    label = CATALOG_BY_NAME[target]
    if label.family != family_id:
        raise UnknownTarget(f"{target} does not belong to family {family_id}")
    route = label.route
    if route in ("a1", "a2"):
        unknowns = ("mu", "nu")
    elif route == "a1_54":
        unknowns = ("mu", "nu")
    elif route in ("su",):
        unknowns = ("alpha", "beta", "lam")
    elif route == "a2prime":
        unknowns = ("alpha", "beta", "lam")
    else:
        raise UnknownTarget(route)
    data = cleared_family_data(family_id, route, unknowns)
    vars_ = data.unknowns
    zero = MultiPoly.zero(vars_, QQ)
    audit = []
    if route == "a2prime":
        return _build_a2prime_system(label, data, audit)
    section, c1 = build_section(data, route, vars_)
    _registry_add(data.registry, c1)
    restricted = restrict_kbar(data.tri, section.N, section.den, vars_)
    shifted = shift_list(restricted, section.center_num, zero)
    if not shifted[0].is_zero() or not shifted[1].is_zero():
        raise IdentityFailure("restriction lacks the forced double factor")
    m = shifted[2:7]
    while len(m) < 5:
        m.append(zero)
    m = joint_strip(m, data.registry, audit)
    tags = list(label.system)
    if route == "su":
        tags = ["second_point"] + tags
    equations, provenance, verify = [], [], []
    for tag in tags:
        eqs, ver = _equation_for(tag, label, data, section, m, vars_, zero)
        for e, name in eqs:
            stripped = strip_equation(e, data.registry, audit)
            if stripped.is_zero() or stripped.is_constant():
                raise IdentityFailure(f"equation {name} collapsed")
            equations.append(stripped)
            provenance.append(name)
        verify.extend(ver)
    verify = [strip_equation(v, data.registry, audit) for v in verify]
    return ConstraintSystem(family_id, target, vars_, equations, provenance,
                            data.registry, verify, audit)


def _equation_for(tag, label, data, section, m, vars_, zero):
    tri = data.tri
    route = label.route
    if tag == "m1":
        return [(m[1], "m1")], []
    if tag == "m2":
        return [(m[2], "m2")], []
    if tag == "second_point":
        if route in ("a2", "a2prime"):
            raise IdentityFailure("second point already used for the section")
        combined = _list_add(_list_scale(data.tri["s"], section.den),
                             section.N, zero)
        combined = joint_strip(combined, data.registry)
        return [(_disc_quadratic(combined), "second_point")], []
    if tag == "third_point":
        combined = _list_add(_list_scale(data.su, section.den),
                             _list_scale(section.N, data.su_den), zero)
        combined = joint_strip(combined, data.registry)
        return [(_disc_quadratic(combined), "third_point")], []
    if tag == "first_point":
        stripped = joint_strip(list(section.N), data.registry)
        return [(_disc_quadratic(stripped), "first_point")], []
    if tag == "discr":
        k = 1 if route in ("a1", "a1_54", "su") else 0
        coeffs = m[k:]
        disc = _disc_cubic(coeffs) if len(coeffs) == 4 else _disc_quartic(coeffs)
        return [(disc, f"discr(k={k})")], []
    if tag == "cusp":
        k = 1 if route in ("a1", "a1_54", "su") else 0
        coeffs = m[k:]
        dd = [coeffs[i] * (i * (i - 1)) for i in range(2, len(coeffs))]
        d1 = [coeffs[i] * i for i in range(1, len(coeffs))]
        # the derivative pair gives the smaller eliminant; the full pair is
        # rechecked on every cluster
        r2 = _resultant_list(d1, dd, vars_)
        r1 = _resultant_list(coeffs, dd, vars_)
        return [(r2, f"cusp'(k={k})")], [r1]
    if tag == "perfect_cube":
        e1 = 3 * m[2] * m[4] - m[3] * m[3]
        e2 = 3 * m[1] * m[3] - m[2] * m[2]
        e3 = 9 * m[1] * m[4] - m[2] * m[3]
        return [(e1, "cube:3m2m4-m3^2"), (e2, "cube:3m1m3-m2^2")], [e3]
    raise UnknownTarget(f"unknown equation tag {tag}")


def _build_a2prime_system(label, data, audit):
    """The tangency-to-the-second-section system expanded about its contact."""
    vars_ = data.unknowns
    zero = MultiPoly.zero(vars_, QQ)
    one = MultiPoly.const(1, vars_, QQ)
    al = MultiPoly.var("alpha", vars_)
    be = MultiPoly.var("beta", vars_)
    la = MultiPoly.var("lam", vars_)
    section, c1 = build_section(data, "a2prime", vars_)
    _registry_add(data.registry, c1)
    restricted = restrict_kbar(data.tri, section.N, section.den, vars_)
    # contact point of the section with the second-point section
    lam2_num = -(la * be - 2 * la + 2 * one)
    lam2_den = 2 * la * al + be + 2 * la - 2 * one
    _registry_add(data.registry, lam2_den)
    shifted = shift_list_frac(restricted, lam2_num, lam2_den, zero)
    n = joint_strip(shifted, data.registry, audit)
    eqs = []
    for e, name in ((n[0], "n0"), (n[2], "n2")):
        stripped = strip_equation(e, data.registry, audit)
        if stripped.is_zero() or stripped.is_constant():
            raise IdentityFailure(f"equation {name} collapsed")
        eqs.append((stripped, name))
    cubic = n[3:7]
    disc = _disc_cubic(cubic)
    eqs.append((strip_equation(disc, data.registry, audit), "n_discr"))
    equations = [e for e, _ in eqs]
    provenance = [nm for _, nm in eqs]
    verify = [strip_equation(n[1], data.registry, audit)]
    return ConstraintSystem(label.family, label.name, vars_, equations,
                            provenance, data.registry, verify, audit)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def strip_variable_contents(E, var, audit=None):
    """Remove the content of E with respect to one variable (recorded).

    The content is a polynomial in the other unknowns; its vanishing locus
    is a candidate solution component that the count check must cover, so
    it is kept in the audit trail rather than silently dropped.
    """
    if E.is_zero() or E.degree(var) <= 0:
        return E
    coeffs = [E.coeff_of(var, i) for i in range(E.degree(var) + 1)]
    cont = None
    for c in coeffs:
        if c.is_zero():
            continue
        cont = c if cont is None else gcd_multivariate(cont, c)
        if cont.is_constant():
            return E
    if cont is None or cont.is_constant():
        return E
    if audit is not None:
        audit.append(("variable_content", var, cont.to_string()))
    return exact_divide(E, cont)


def resultant_elim(f, g, var, registry=None, audit=None):
    """Resultant w.r.t. var with content and registry factors stripped."""
    live = sorted(set(v for v in f.vars if f.degree(v) > 0)
                  | set(v for v in g.vars if g.degree(v) > 0))
    if var not in live:
        raise ValueError(f"{var} does not occur")
    f = strip_variable_contents(f, var, audit)
    g = strip_variable_contents(g, var, audit)
    others = [v for v in live if v != var]
    if not others:
        res = resultant(f, g, var)
    elif len(others) == 1:
        res = _resultant_interp_fast(f, g, var, others[0])
    else:
        res = _resultant_interp_multi(f, g, var, others)
    if res.is_zero():
        return res
    if registry is not None:
        res = strip_equation(res, registry, audit)
    return res.primitive_rational()


def _resultant_interp_fast(f, g, var, other):
    """Bivariate resultant by Newton interpolation with early termination.

    Divided differences that vanish for a long stretch signal that the true
    degree is far below the Sylvester bound; the candidate is then verified
    at several fresh evaluation points before being accepted, and on any
    mismatch the full-bound interpolation resumes.
    """
    dfn, dfo = f.degree(var), f.degree(other)
    dgn, dgo = g.degree(var), g.degree(other)
    bound = dfn * dgo + dgn * dfo
    lf = f.leading_coeff(var)
    lg = g.leading_coeff(var)

    def value_at(c):
        if not lf.eval_var(other, c).constant_value():
            return None
        if not lg.eval_var(other, c).constant_value():
            return None
        fv = f.eval_var(other, c).to_univariate(var)
        gv = g.eval_var(other, c).to_univariate(var)
        fa, sa = _rat_to_int(fv)
        ga, sb = _rat_to_int(gv)
        return mpq(int_resultant(fa, ga)) / (sa ** dgn) / (sb ** dfn)

    points, newton = [], []
    streak = 0
    t = 0
    pending = []
    while len(points) <= bound:
        if not pending:
            pending = [mpq(t), mpq(-t)] if t else [mpq(0)]
            t += 1
        c = pending.pop(0)
        v = value_at(c)
        if v is None:
            continue
        # incremental Newton: d = (v - P(c)) / prod(c - x_i)
        acc = mpq(0)
        prod = mpq(1)
        for d_k, x_k in zip(newton, points):
            acc += d_k * prod
            prod *= (c - x_k)
        d_new = (v - acc) / prod
        points.append(c)
        newton.append(d_new)
        if d_new:
            streak = 0
        else:
            streak += 1
            if streak >= 24 and len(points) > 8:
                if _confirm_interp(points, newton, value_at, t):
                    break
                streak = 0
    coeffs = _newton_to_dense(points, newton)
    out = MultiPoly.from_univariate(coeffs, other, f.vars, f.field)
    return out


def _confirm_interp(points, newton, value_at, t_start):
    t = t_start + 17
    checked = 0
    while checked < 5:
        for c in (mpq(t), mpq(-t)):
            v = value_at(c)
            if v is None:
                continue
            acc = mpq(0)
            prod = mpq(1)
            for d_k, x_k in zip(newton, points):
                acc += d_k * prod
                prod *= (c - x_k)
            if acc != v:
                return False
            checked += 1
        t += 13
    return True


def _newton_to_dense(points, newton):
    n = len(points)
    coeffs = [mpq(0)] * n
    acc = [mpq(1)]
    for k in range(n):
        if newton[k]:
            for i, cc in enumerate(acc):
                coeffs[i] += newton[k] * cc
        if k + 1 < n:
            new = [mpq(0)] * (len(acc) + 1)
            for i, cc in enumerate(acc):
                new[i] -= cc * points[k]
                new[i + 1] += cc
            acc = new
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _resultant_interp_multi(f, g, var, others):
    """Recursive interpolation for >= 3 variables (exact over QQ)."""
    w = others[-1]
    rest = others[:-1]
    bound = f.degree(var) * g.degree(w) + g.degree(var) * f.degree(w)
    lf, lg = f.leading_coeff(var), g.leading_coeff(var)
    points, values = [], []
    t = 0
    dv_f, dv_g = f.degree(var), g.degree(var)
    while len(points) <= bound:
        cands = (mpq(0),) if t == 0 else (mpq(t), mpq(-t))
        t += 1
        for cv in cands:
            if len(points) > bound:
                break
            if lf.eval_var(w, cv).is_zero() or lg.eval_var(w, cv).is_zero():
                continue
            fv = f.eval_var(w, cv)
            gv = g.eval_var(w, cv)
            if fv.degree(var) != dv_f or gv.degree(var) != dv_g:
                continue
            sub = resultant_elim(fv, gv, var)
            values.append(sub)
            points.append(cv)
    # interpolate polynomial-valued samples in w
    n = len(points)
    div = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            inv = 1 / (points[i] - points[i - j])
            div[i] = (div[i] - div[i - 1]) * inv
    wv = MultiPoly.var(w, f.vars, QQ)
    out = MultiPoly.zero(f.vars, QQ)
    acc = MultiPoly.const(1, f.vars, QQ)
    for k in range(n):
        out = out + div[k] * acc
        if k + 1 < n:
            acc = acc * (wv - points[k])
    return out


class SolutionCluster:
    """One Galois orbit of solutions: a field with parameter assignments."""

    def __init__(self, field, assignments, factor):
        self.field = field
        self.assignments = assignments
        self.factor = factor  # defining eliminant factor (integer coeffs)

    @property
    def degree(self):
        return 1 if getattr(self.field, "is_rational", False) \
            else self.field.degree

    def __repr__(self):
        vals = {k: str(v) for k, v in self.assignments.items()}
        return f"Cluster(deg {self.degree}: {vals})"


def solve_system(system, max_cluster_degree=8):
    """Eliminate, factor, back-substitute and verify; returns clusters.

    The eliminant factors are screened against the recorded denominators and
    excluded loci; every returned cluster makes all system equations vanish
    exactly and avoids all excluded loci.  Discarded factors are kept in
    system.audit.
    """
    eqs = system.equations
    unknowns = list(system.unknowns)
    if len(unknowns) == 2:
        return _solve_two(system, eqs, unknowns, max_cluster_degree,
                          extra_verify=system.verify_equations)
    if len(unknowns) == 3:
        return _solve_three(system, eqs, unknowns, max_cluster_degree)
    raise UnknownTarget("solver supports systems in two or three unknowns")


def _solve_two(system, eqs, unknowns, max_deg, extra_verify=()):
    u1, u2 = unknowns
    # spec order: eliminate the second unknown first, fall back to the first
    for elim, keep in ((u2, u1), (u1, u2)):
        if all(e.degree(elim) > 0 for e in eqs[:2]):
            R = resultant_elim(eqs[0], eqs[1], elim, system.registry,
                               system.audit)
            if not R.is_zero():
                return _clusters_from_eliminant(system, eqs, R, keep, elim,
                                                max_deg, extra_verify)
    # both eliminations degenerate: common factor
    g = gcd_multivariate(eqs[0], eqs[1])
    if not g.is_constant():
        system.audit.append(("common_factor", g.to_string()))
        reduced = [exact_divide(eqs[0], g), exact_divide(eqs[1], g)]
        reduced = [strip_equation(e, system.registry, system.audit)
                   for e in reduced]
        if all(not e.is_constant() for e in reduced):
            sub = ConstraintSystem(system.family, system.target,
                                   system.unknowns, reduced,
                                   system.provenance, system.registry,
                                   system.verify_equations, system.audit)
            return _solve_two(sub, reduced, unknowns, max_deg, extra_verify)
    raise PositiveDimensional("eliminant vanished identically")


def _clusters_from_eliminant(system, eqs, R, keep, elim, max_deg,
                             extra_verify=()):
    unit, facs = factor_rational(R, keep)
    clusters = []
    for fac, _m in facs:
        coeffs = fac.to_univariate(keep)
        deg = len(coeffs) - 1
        if deg > max_deg:
            system.audit.append(("skipped_degree", fac.to_string()))
            continue
        if deg == 1:
            field = QQ
            root = -coeffs[0] / coeffs[1]
            embed = lambda v: mpq(v)
        else:
            ints = [int(c * _common_den(coeffs)) for c in coeffs]
            field = NumberField(ints, check_irreducible=False)
            root = field.gen()
        assignment = {keep: root if deg > 1 else mpq(root)}
        found = _back_substitute(system, eqs, assignment, field, keep, elim,
                                 fac, clusters, extra_verify)
        if not found:
            system.audit.append(("no_valid_backsub", fac.to_string()))
    return clusters


def _common_den(coeffs):
    import math as _m
    den = 1
    for c in coeffs:
        den = den * int(c.denominator) // _m.gcd(den, int(c.denominator))
    return den


def _back_substitute(system, eqs, assignment, field, keep, elim, fac,
                     clusters, extra_verify=()):
    """Find the eliminated unknown over the cluster field and verify."""
    x0 = assignment[keep]
    fibers = []
    for e in eqs:
        fib = _specialize(e, keep, x0, field, elim)
        fibers.append(fib)
    h = None
    for fib in fibers:
        if not any(True for c in fib if c):
            continue
        h = fib if h is None else field_gcd(h, fib, field)
        if h is not None and len(h) == 1:
            break
    if h is None or len(h) <= 1:
        return False
    found = False
    for hy, _m in _factor_over(h, field):
        if len(hy) != 2:
            system.audit.append(("nonlinear_fiber", fac.to_string()))
            continue
        y0 = -hy[0] / hy[1]
        cand = {keep: x0, elim: y0}
        if _verify_cluster(system, cand, field, extra_verify):
            clusters.append(SolutionCluster(field, cand,
                                            fac.to_univariate(keep)))
            found = True
    return found


def _specialize(e, name, value, field, remaining):
    """e(name=value) as a dense list in the remaining unknown over field."""
    rows = {}
    iv = e.vars.index(name)
    ir = e.vars.index(remaining)
    maxd = e.degree(remaining)
    out = [field.zero] * (maxd + 1)
    powers = {}
    for exps, c in e.terms.items():
        k = exps[iv]
        if k not in powers:
            powers[k] = value ** k if k else field.one
        out[exps[ir]] = out[exps[ir]] + field.coerce(c) * powers[k]
    while out and not out[-1]:
        out.pop()
    return out


def _factor_over(coeffs, field):
    if getattr(field, "is_rational", False):
        from .singular import factor_univariate_over
        return factor_univariate_over(coeffs, field)
    return factor_over_field(coeffs, field)


def _verify_cluster(system, assignment, field, extra_verify=()):
    vals = {k: v for k, v in assignment.items()}
    for e in system.equations:
        if _eval_poly(e, vals, field):
            return False
    for key, p in system.registry.items():
        live = [v for v in p.vars if p.degree(v) > 0]
        if not set(live) <= set(vals):
            continue
        if not _eval_poly(p, vals, field):
            system.audit.append(("excluded_locus", key))
            return False
    for v in extra_verify:
        if v.is_zero() or v.is_constant():
            continue
        if _eval_poly(v, vals, field):
            system.audit.append(("verify_equation_failed", str(assignment)))
            return False
    return True


def _eval_poly(e, vals, field):
    total = field.zero
    for exps, c in e.terms.items():
        acc = field.coerce(c)
        for name, k in zip(e.vars, exps):
            if k:
                acc = acc * vals[name] ** k
        total = total + acc
    return total


def _solve_three(system, eqs, unknowns, max_deg):
    """Cascade elimination for the three-unknown section systems."""
    best = None
    for elim in unknowns:
        degs = [e.degree(elim) for e in eqs]
        if any(d <= 0 for d in degs):
            continue
        score = max(degs)
        if best is None or score < best[1]:
            best = (elim, score)
    if best is None:
        raise PositiveDimensional("no unknown occurs in all equations")
    elim = best[0]
    rest = [u for u in unknowns if u != elim]
    r1 = resultant_elim(eqs[0], eqs[1], elim, system.registry, system.audit)
    r2 = resultant_elim(eqs[0], eqs[2], elim, system.registry, system.audit)
    if r1.is_zero() or r2.is_zero():
        raise PositiveDimensional("cascade eliminant vanished")
    sub = ConstraintSystem(system.family, system.target, tuple(rest),
                           [r1, r2], ["cascade1", "cascade2"],
                           system.registry, [], system.audit)
    pair_clusters = _solve_two(sub, [r1, r2], rest, max_deg,
                               extra_verify=())
    clusters = []
    for pc in pair_clusters:
        field = pc.field
        fibers = []
        for e in eqs:
            fib = _specialize_multi(e, pc.assignments, field, elim)
            fibers.append(fib)
        h = None
        for fib in fibers:
            if not fib:
                continue
            h = fib if h is None else field_gcd(h, fib, field)
            if len(h) == 1:
                break
        if h is None or len(h) <= 1:
            system.audit.append(("no_third_root", str(pc.assignments)))
            continue
        for hy, _m in _factor_over(h, field):
            if len(hy) != 2:
                system.audit.append(("nonlinear_third", str(pc.assignments)))
                continue
            z0 = -hy[0] / hy[1]
            cand = dict(pc.assignments)
            cand[elim] = z0
            if _verify_cluster(system, cand, field, system.verify_equations):
                clusters.append(SolutionCluster(field, cand, pc.factor))
    return clusters


def _specialize_multi(e, assign, field, remaining):
    ir = e.vars.index(remaining)
    maxd = e.degree(remaining)
    out = [field.zero] * (maxd + 1)
    for exps, c in e.terms.items():
        acc = field.coerce(c)
        for name, k in zip(e.vars, exps):
            if k and name != remaining:
                acc = acc * assign[name] ** k
        out[exps[ir]] = out[exps[ir]] + acc
    while out and not out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# Matching clusters against stored catalog values
# ---------------------------------------------------------------------------

def cluster_matches_label(cluster, label):
    """Whether a cluster reproduces the stored parameters of a label."""
    lf = label_field(label)
    if getattr(lf, "is_rational", False):
        if cluster.degree != 1:
            return False
        stored = label_parameters(label, lf)
        return all(cluster.assignments.get(k) == v for k, v in stored.items()
                   if k in cluster.assignments)
    if cluster.degree != lf.degree:
        return False
    # embed the stored generator into the cluster field: roots of its
    # minimal polynomial there, then compare parameter values
    mp = [mpq(c) for c in lf.min_poly]
    field = cluster.field
    coeffs = [field.coerce(c) for c in mp]
    for root_fac, _m in factor_over_field(coeffs, field):
        if len(root_fac) != 2:
            continue
        eps = -root_fac[0] / root_fac[1]
        ok = True
        for k, v in cluster.assignments.items():
            if k not in label.params:
                continue
            acc = field.coerce(0)
            for c in reversed(label.params[k]):
                acc = acc * eps + field.coerce(c)
            if acc != v:
                ok = False
                break
        if ok:
            return True
    return False


def solve(family_id, target, max_cluster_degree=8):
    """Build the stored system for a target and solve it."""
    system = build_constraint_system(family_id, target)
    clusters = solve_system(system, max_cluster_degree)
    return system, clusters
