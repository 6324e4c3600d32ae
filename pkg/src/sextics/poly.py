"""Sparse multivariate polynomials over QQ or a number field.

Carries every formula in the library: resultants by fraction-free
subresultant remainder sequences, discriminants, Yun squarefree
decomposition, Zassenhaus factorization over QQ, Trager factorization over
number fields, exact division, and the primed-symmetrization operator used
by the involution formulas.
"""

from __future__ import annotations

import math
import random

from gmpy2 import mpq, mpz

from .errors import DivisionNotExact
from .numfield import QQ, FieldElement, NumberField

_ZERO = mpq(0)
_ONE = mpq(1)


def _domain_zero(field):
    return field.zero


def _coerce(field, c):
    if isinstance(c, FieldElement):
        return field.coerce(c)
    if getattr(field, "is_rational", False):
        return mpq(c)
    return field.coerce(c)


class MultiPoly:
    """Polynomial as a map from exponent vectors to nonzero coefficients."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = tuple(vars)
        self.terms = terms  # dict: tuple[int] -> coeff, no zeros stored

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, vars, field=QQ):
        return cls(field, vars, {})

    @classmethod
    def const(cls, c, vars, field=QQ):
        c = _coerce(field, c)
        if not c:
            return cls(field, vars, {})
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name, vars, field=QQ):
        e = [0] * len(vars)
        e[tuple(vars).index(name)] = 1
        return cls(field, tuple(vars), {tuple(e): _coerce(field, 1)})

    @classmethod
    def from_terms(cls, entries, vars, field=QQ):
        terms = {}
        for exps, c in entries:
            c = _coerce(field, c)
            if not c:
                continue
            key = tuple(exps)
            acc = terms.get(key)
            c = c if acc is None else acc + c
            if c:
                terms[key] = c
            elif acc is not None:
                del terms[key]
        return cls(field, tuple(vars), terms)

    @classmethod
    def from_univariate(cls, coeffs, name, vars=None, field=QQ):
        vars = (name,) if vars is None else tuple(vars)
        idx = vars.index(name)
        entries = []
        for i, c in enumerate(coeffs):
            e = [0] * len(vars)
            e[idx] = i
            entries.append((tuple(e), c))
        return cls.from_terms(entries, vars, field)

    # -- basic structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return _domain_zero(self.field)
        (e, c), = self.terms.items()
        if any(e):
            raise ValueError("polynomial is not constant")
        return c

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.field != other.field:
            raise ValueError("coefficient field mismatch")

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars, self.field)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            s = c if acc is None else acc + c
            if s:
                terms[e] = s
            elif acc is not None:
                del terms[e]
        return MultiPoly(self.field, self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.vars,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = _coerce(self.field, other)
            if not c:
                return MultiPoly(self.field, self.vars, {})
            return MultiPoly(self.field, self.vars,
                             {e: v * c for e, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                acc = out.get(key)
                s = c if acc is None else acc + c
                if s:
                    out[key] = s
                elif acc is not None:
                    del out[key]
        return MultiPoly(self.field, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.vars == other.vars and self.field == other.field
                    and self.terms == other.terms)
        return self.is_constant() and self.constant_value() == _coerce(self.field, other)

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- calculus and substitution ----------------------------------------------

    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MultiPoly(self.field, self.vars, out)

    def coeff_of(self, name, power):
        """Coefficient of name**power, kept in the same variable set."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                ne = list(e)
                ne[i] = 0
                out[tuple(ne)] = c
        return MultiPoly(self.field, self.vars, out)

    def leading_coeff(self, name):
        return self.coeff_of(name, self.degree(name))

    def to_univariate(self, name):
        """Dense coefficient list; other variables must be absent."""
        i = self.vars.index(name)
        d = self.degree(name)
        out = [_domain_zero(self.field)] * (d + 1)
        for e, c in self.terms.items():
            if any(e[j] for j in range(len(e)) if j != i):
                raise ValueError("polynomial is not univariate in " + name)
            out[e[i]] = c
        return out

    def subs(self, assignment):
        """Substitute variables by polynomials or scalars (partial allowed)."""
        polys = {}
        for k, v in assignment.items():
            if not isinstance(v, MultiPoly):
                v = MultiPoly.const(v, self.vars, self.field)
            polys[self.vars.index(k)] = v
        one = MultiPoly.const(1, self.vars, self.field)
        # cache powers per substituted variable
        pow_cache = {i: [one] for i in polys}
        out = MultiPoly.zero(self.vars, self.field)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, self.vars, self.field)
            plain = list(e)
            for i, p in polys.items():
                k = e[i]
                plain[i] = 0
                if k:
                    cache = pow_cache[i]
                    while len(cache) <= k:
                        cache.append(cache[-1] * p)
                    term = term * cache[k]
            key = tuple(plain)
            term = term * MultiPoly(self.field, self.vars, {key: _coerce(self.field, 1)})
            out = out + term
        return out

    def evaluate(self, values):
        """Full evaluation: values maps every occurring variable to a scalar."""
        idx = {self.vars.index(k): _coerce(self.field, v) for k, v in values.items()}
        total = _domain_zero(self.field)
        for e, c in self.terms.items():
            acc = c
            for i, ei in enumerate(e):
                if not ei:
                    continue
                if i not in idx:
                    raise ValueError(f"missing value for {self.vars[i]}")
                acc = acc * idx[i] ** ei
            total = total + acc
        return total

    def eval_var(self, name, value):
        """Evaluate a single variable at a scalar, keeping the others."""
        i = self.vars.index(name)
        value = _coerce(self.field, value)
        out = {}
        powers = {0: _coerce(self.field, 1)}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            c = c * powers[k]
            if not c:
                continue
            ne = list(e)
            ne[i] = 0
            key = tuple(ne)
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s:
                out[key] = s
            elif acc is not None:
                del out[key]
        return MultiPoly(self.field, self.vars, out)

    def drop_vars(self, names):
        keep = [i for i, v in enumerate(self.vars) if v not in names]
        for e in self.terms:
            for i, v in enumerate(self.vars):
                if v in names and e[i]:
                    raise ValueError(f"variable {v} still occurs")
        new_vars = tuple(self.vars[i] for i in keep)
        return MultiPoly(self.field, new_vars,
                         {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    def with_vars(self, new_vars):
        """Re-embed into a larger variable tuple."""
        new_vars = tuple(new_vars)
        pos = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for p, ei in zip(pos, e):
                ne[p] = ei
            out[tuple(ne)] = c
        return MultiPoly(self.field, new_vars, out)

    def map_coeffs(self, fn, new_field):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return MultiPoly(new_field, self.vars, out)

    def content_rational(self):
        """Positive rational content (gcd of rational coefficients)."""
        if getattr(self.field, "is_rational", False):
            coeffs = list(self.terms.values())
        else:
            coeffs = [x for c in self.terms.values() for x in c.coeffs if x]
        if not coeffs:
            return _ONE
        num = mpz(0)
        den = mpz(1)
        for c in coeffs:
            num = mpz(math.gcd(int(num), int(c.numerator)))
            den = den * c.denominator // math.gcd(int(den), int(c.denominator))
        return mpq(num, den)

    def primitive_rational(self):
        c = self.content_rational()
        if c == 1:
            return self
        inv = 1 / c
        return self.map_coeffs(lambda x: x * inv, self.field)

    # -- ordering and text -------------------------------------------------------

    def sorted_terms(self):
        """Graded lexicographic, highest first."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_string(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k)
            cs = _coeff_text(c)
            if mono:
                body = f"{cs}*{mono}" if cs not in ("1", "-1") else ("-" + mono if cs == "-1" else mono)
            else:
                body = cs
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return self.to_string()


def _coeff_text(c):
    if isinstance(c, FieldElement):
        if c.is_rational():
            return str(c.coeffs[0])
        from .numfield import _poly_text
        return "(" + _poly_text(c.coeffs, c.field.name) + ")"
    return str(c)


def poly_from_string(text, vars, field=QQ):
    """Parse the canonical serialization (sums of c*v^k monomials)."""
    vars = tuple(vars)
    text = text.replace(" ", "")
    out = MultiPoly.zero(vars, field)
    if text in ("", "0"):
        return out
    depth = 0
    pieces, cur = [], ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            if cur:
                pieces.append(cur)
            cur = ""
        elif ch == "-" and depth == 0 and cur not in ("", "-") and not cur.endswith(("*", "^", "/")):
            pieces.append(cur)
            cur = "-"
        else:
            cur += ch
    if cur:
        pieces.append(cur)
    for piece in pieces:
        neg = False
        while piece.startswith("-"):
            neg = not neg
            piece = piece[1:]
        factors = _split_factors(piece)
        coeff = _coerce(field, 1)
        exps = [0] * len(vars)
        for f in factors:
            if not f:
                continue
            if f.startswith("("):
                from .numfield import parse_element
                val = parse_element(f, field=None if getattr(field, "is_rational", False) else field)
                coeff = coeff * _coerce(field, val)
            elif f[0].isalpha():
                name, _, power = f.partition("^")
                exps[vars.index(name)] += int(power) if power else 1
            else:
                coeff = coeff * _coerce(field, mpq(f))
        if neg:
            coeff = -coeff
        out = out + MultiPoly.from_terms([(tuple(exps), coeff)], vars, field)
    return out


def _split_factors(piece):
    depth = 0
    out, cur = [], ""
    for ch in piece:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------

def exact_divide(f, u):
    """Quotient q with f = q*u; raises DivisionNotExact otherwise."""
    if not isinstance(u, MultiPoly):
        u = MultiPoly.const(u, f.vars, f.field)
    f._check(u)
    if u.is_zero():
        raise DivisionNotExact("division by zero polynomial")
    if f.is_zero():
        return f
    u_terms = u.sorted_terms()
    ue, uc = u_terms[0]
    if getattr(f.field, "is_rational", False):
        uc_inv = 1 / uc
    else:
        uc_inv = uc.inverse()
    q = {}
    r = dict(f.terms)
    while r:
        re, rc = max(r.items(), key=lambda t: (sum(t[0]), t[0]))
        qe = tuple(a - b for a, b in zip(re, ue))
        if any(x < 0 for x in qe):
            raise DivisionNotExact("leading monomial not divisible")
        qc = rc * uc_inv
        q[qe] = qc
        for e2, c2 in u.terms.items():
            key = tuple(a + b for a, b in zip(qe, e2))
            acc = r.get(key)
            s = -(qc * c2) if acc is None else acc - qc * c2
            if s:
                r[key] = s
            elif acc is not None:
                del r[key]
    return MultiPoly(f.field, f.vars, q)


def divides(u, f):
    try:
        exact_divide(f, u)
        return True
    except DivisionNotExact:
        return False


# ---------------------------------------------------------------------------
# Integer univariate engine (dense lists of python ints, low degree first)
# ---------------------------------------------------------------------------

def _istrip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _iadd(a, b):
    n = max(len(a), len(b))
    return _istrip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(n)])


def _imul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _istrip(out)


def _iscale(a, s):
    return [] if not s else [x * s for x in a]


def _icontent(a):
    g = 0
    for x in a:
        g = math.gcd(g, abs(x))
        if g == 1:
            return 1
    return g


def _iprimitive(a):
    g = _icontent(a)
    if g in (0, 1):
        return list(a)
    return [x // g for x in a]


def int_resultant(a, b):
    """Exact resultant of integer polynomials by subresultant PRS."""
    a = _istrip([int(x) for x in a])
    b = _istrip([int(x) for x in b])
    if not a or not b:
        return 0
    la, lb = len(a) - 1, len(b) - 1
    if la == 0 and lb == 0:
        return 1
    if la == 0:
        return a[0] ** lb
    if lb == 0:
        return b[0] ** la
    s = 1
    if la < lb:
        a, b = b, a
        la, lb = lb, la
        if la & lb & 1:
            s = -s
    g, h = 1, 1
    t = 1
    while True:
        la, lb = len(a) - 1, len(b) - 1
        delta = la - lb
        if la & lb & 1:
            s = -s
        r = _int_prem(a, b)
        if not r:
            return 0
        a = b
        denom = g * h ** delta
        b = [x // denom for x in r]
        g = a[-1]
        if delta == 0:
            pass  # h unchanged: h^(1-0) g^0
        elif delta == 1:
            h = g
        else:
            h = (g ** delta) // (h ** (delta - 1))
        if len(b) - 1 == 0:
            la = len(a) - 1
            if la == 0:
                return s  # both constants after reduction: shouldn't happen
            res = (b[0] ** la) // (h ** (la - 1)) if la > 1 else b[0]
            return s * res


def _int_prem(a, b):
    """Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    steps = len(a) - len(b) + 1
    for _ in range(steps):
        if len(r) < len(b):
            r = _iscale(r, lb)
            _istrip(r)
            continue
        lead = r[-1]
        r = [x * lb for x in r[:-1]]
        if lead:
            k = len(r) - db
            for i in range(db):
                r[i + k] -= lead * b[i]
        _istrip(r)
        if not r:
            return []
    return r


def int_gcd(a, b):
    """Primitive gcd of integer polynomials (positive leading coefficient)."""
    a = _iprimitive(_istrip([int(x) for x in a]))
    b = _iprimitive(_istrip([int(x) for x in b]))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    g, h = 1, 1
    while True:
        if len(b) - 1 == 0:
            return [1]
        r = _int_prem(a, b)
        if not r:
            res = _iprimitive(b)
            if res[-1] < 0:
                res = [-x for x in res]
            return res
        delta = (len(a) - 1) - (len(b) - 1)
        denom = g * h ** delta
        a, b = b, [x // denom for x in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta) // (h ** (delta - 1))


def _rat_to_int(coeffs):
    """Clear denominators: returns (integer list, scale) with int = scale * rat."""
    den = mpz(1)
    for c in coeffs:
        den = den * c.denominator // math.gcd(int(den), int(c.denominator))
    return [int(c * den) for c in coeffs], mpq(den)


# ---------------------------------------------------------------------------
# Univariate gcd / squarefree over QQ and over number fields
# ---------------------------------------------------------------------------

def _q_gcd(a, b):
    """Monic gcd of rational coefficient lists via integer primitive PRS."""
    a = [mpq(c) for c in a]
    b = [mpq(c) for c in b]
    while a and not a[-1]:
        a.pop()
    while b and not b[-1]:
        b.pop()
    if not a:
        src = b
    elif not b:
        src = a
    else:
        ia, _ = _rat_to_int(a)
        ib, _ = _rat_to_int(b)
        src = [mpq(x) for x in int_gcd(ia, ib)]
    if not src:
        return []
    lead = src[-1]
    return [c / lead for c in src]


def _f_strip(p):
    while p and not p[-1]:
        p.pop()
    return p


def _f_divmod(a, b, field):
    a = _f_strip(list(a))
    inv = b[-1].inverse() if isinstance(b[-1], FieldElement) else 1 / b[-1]
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - c * y
        a.pop()
    return q, _f_strip(a)


def field_gcd(a, b, field):
    """Monic gcd of coefficient lists over a field object (QQ or NumberField)."""
    if getattr(field, "is_rational", False):
        return _q_gcd(a, b)
    a = [field.coerce(c) for c in a]
    b = [field.coerce(c) for c in b]
    _f_strip(a), _f_strip(b)
    while b:
        a, b = b, _f_divmod(a, b, field)[1]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def field_deriv(a):
    return _f_strip([a[i] * i for i in range(1, len(a))])


def squarefree_univariate(coeffs, field):
    """Yun decomposition: list of (factor coeff list, multiplicity)."""
    f = [_coerce(field, c) for c in coeffs]
    _f_strip(f)
    if len(f) <= 1:
        return []
    fp = field_deriv(f)
    a = field_gcd(f, fp, field)
    if len(a) == 1:
        return [(f, 1)]
    b = _f_divmod(f, a, field)[0]
    c = _f_divmod(fp, a, field)[0]
    d = _f_sub(c, field_deriv(b), field)
    out = []
    i = 1
    while True:
        if len(b) == 1:
            break
        p = field_gcd(b, d, field)
        if len(p) > 1:
            out.append((p, i))
        b = _f_divmod(b, p, field)[0]
        c = _f_divmod(d, p, field)[0]
        d = _f_sub(c, field_deriv(b), field)
        i += 1
    return out


def _f_sub(a, b, field):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(x - y)
    return _f_strip(out)


class SquarefreeDecomposition:
    """Pairwise-coprime squarefree factors with multiplicities."""

    def __init__(self, parts, unit, var, field):
        self.parts = parts  # list of (MultiPoly univariate, multiplicity)
        self.unit = unit    # scalar so that unit * prod(part^mult) = input
        self.var = var
        self.field = field

    def reassemble(self):
        vars_ = self.parts[0][0].vars if self.parts else (self.var,)
        acc = MultiPoly.const(self.unit, vars_, self.field)
        for p, m in self.parts:
            acc = acc * p ** m
        return acc

    def simple_part(self):
        """Product of multiplicity-1 factors (the d-tilde of the J invariants)."""
        vars_ = self.parts[0][0].vars if self.parts else (self.var,)
        acc = MultiPoly.const(1, vars_, self.field)
        for p, m in self.parts:
            if m == 1:
                acc = acc * p
        return acc


def squarefree_decompose(f, name=None):
    """Yun decomposition of a univariate MultiPoly (monic factors)."""
    if name is None:
        livevars = [v for v in f.vars if f.degree(v) > 0]
        name = livevars[0] if livevars else f.vars[0]
    coeffs = f.to_univariate(name)
    parts = squarefree_univariate(coeffs, f.field)
    unit = _coerce(f.field, 1)
    rebuilt = [_coerce(f.field, 1)]
    for p, m in parts:
        for _ in range(m):
            rebuilt = _field_list_mul(rebuilt, p, f.field)
    if len(rebuilt) != len(coeffs):
        raise AssertionError("squarefree reassembly degree mismatch")
    unit = coeffs[-1] * (rebuilt[-1].inverse() if isinstance(rebuilt[-1], FieldElement)
                         else 1 / rebuilt[-1])
    out = [(MultiPoly.from_univariate(p, name, f.vars, f.field), m) for p, m in parts]
    return SquarefreeDecomposition(out, unit, name, f.field)


def _field_list_mul(a, b, field):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _f_strip(out) or [field.zero]


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------

def sylvester_matrix(f, g, name):
    m, n = f.degree(name), g.degree(name)
    fc = [f.coeff_of(name, i) for i in range(m + 1)]
    gc = [g.coeff_of(name, i) for i in range(n + 1)]
    size = m + n
    rows = []
    for i in range(n):
        row = [MultiPoly.zero(f.vars, f.field)] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [MultiPoly.zero(f.vars, f.field)] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(f, g, name):
    """Independent oracle: Bareiss determinant of the Sylvester matrix."""
    m, n = f.degree(name), g.degree(name)
    if m < 0 or n < 0:
        return MultiPoly.zero(f.vars, f.field)
    if m == 0 and n == 0:
        return MultiPoly.const(1, f.vars, f.field)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    rows = sylvester_matrix(f, g, name)
    return _bareiss_det(rows, f.vars, f.field)


def _bareiss_det(rows, vars_, field):
    n = len(rows)
    m = [[rows[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = MultiPoly.const(1, vars_, field)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for swap in range(k + 1, n):
                if not m[swap][k].is_zero():
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(vars_, field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = MultiPoly.zero(vars_, field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f, g, name):
    """Res_name(f, g) by fraction-free subresultant PRS.

    Conventions match the Sylvester determinant exactly (sign included);
    a constant g gives g**deg(f).
    """
    if not isinstance(g, MultiPoly):
        g = MultiPoly.const(g, f.vars, f.field)
    f._check(g)
    m, n = f.degree(name), g.degree(name)
    if m < 0 or n < 0:
        return MultiPoly.zero(f.vars, f.field)
    if m == 0 and n == 0:
        return MultiPoly.const(1, f.vars, f.field)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    others = [v for v in f.vars if v != name and (f.degree(v) > 0 or g.degree(v) > 0)]
    if getattr(f.field, "is_rational", False) and not others:
        fa, sa = _rat_to_int(f.to_univariate(name))
        ga, sb = _rat_to_int(g.to_univariate(name))
        r = int_resultant(fa, ga)
        value = mpq(r) / (sa ** n) / (sb ** m)
        return MultiPoly.const(value, f.vars, f.field)
    if not others:
        # univariate over a number field: Euclidean recursion with scaling
        val = _field_resultant(f.to_univariate(name), g.to_univariate(name), f.field)
        return MultiPoly.const(val, f.vars, f.field)
    if getattr(f.field, "is_rational", False) and len(others) == 1:
        return _resultant_interp(f, g, name, others[0])
    return _prs_resultant(f, g, name)


def _rational_content_field(coeffs):
    """Positive rational content of a FieldElement/mpq coefficient list."""
    num = mpz(0)
    den = mpz(1)
    for c in coeffs:
        parts = c.coeffs if isinstance(c, FieldElement) else (c,)
        for x in parts:
            if not x:
                continue
            num = mpz(math.gcd(int(num), int(x.numerator)))
            den = den * x.denominator // math.gcd(int(den), int(x.denominator))
    if not num:
        return mpq(1)
    return mpq(num, den)


def _field_resultant(a, b, field):
    """Euclidean resultant over a field, with content stripping.

    Remainders are scaled to unit rational content; each scaling by c is
    corrected exactly through Res(b, c r) = c^deg(b) Res(b, r).
    """
    a = [field.coerce(c) for c in a]
    b = [field.coerce(c) for c in b]
    _f_strip(a), _f_strip(b)
    if not a or not b:
        return field.zero
    res = field.one
    correction = mpq(1)
    sign = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res = res * b[0] ** da
            break
        if da < db:
            a, b = b, a
            if da & db & 1:
                sign = -sign
            continue
        _, r = _f_divmod(a, b, field)
        if not r:
            return field.zero
        cont = _rational_content_field(r)
        if cont != 1:
            inv = 1 / cont
            r = [x * inv for x in r]
            correction = correction * cont ** db
        dr = len(r) - 1
        res = res * b[-1] ** (da - dr)
        if da & db & 1:
            sign = -sign
        a, b = b, r
    res = res * correction
    return res if sign == 1 else -res


def _prs_resultant(f, g, name):
    """Generic subresultant PRS over the polynomial coefficient ring."""
    m, n = f.degree(name), g.degree(name)
    sign = 1
    A, B = f, g
    if m < n:
        A, B = B, A
        m, n = n, m
        if m & n & 1:
            sign = -sign
    one = MultiPoly.const(1, f.vars, f.field)
    gc, hc = one, one
    while True:
        da, db = A.degree(name), B.degree(name)
        delta = da - db
        if da & db & 1:
            sign = -sign
        R = _pseudo_rem(A, B, name)
        if R.is_zero():
            return MultiPoly.zero(f.vars, f.field)
        A = B
        denom = gc * hc ** delta
        B = exact_divide(R, denom)
        gc = A.leading_coeff(name)
        if delta == 1:
            hc = gc
        elif delta > 1:
            hc = exact_divide(gc ** delta, hc ** (delta - 1))
        if B.degree(name) == 0:
            da = A.degree(name)
            lead = B.coeff_of(name, 0)
            if da > 1:
                res = exact_divide(lead ** da, hc ** (da - 1))
            else:
                res = lead ** da
            return res if sign == 1 else -res


def _pseudo_rem(a, b, name):
    lb = b.leading_coeff(name)
    db = b.degree(name)
    r = a
    steps = a.degree(name) - db + 1
    x = MultiPoly.var(name, a.vars, a.field)
    for _ in range(steps):
        dr = r.degree(name)
        if dr < db:
            r = r * lb
            continue
        lead = r.leading_coeff(name)
        r = r * lb - lead * x ** (dr - db) * b
        if r.degree(name) >= dr:
            # cancellation is exact by construction
            raise AssertionError("pseudo-division failed to reduce degree")
        if r.is_zero():
            return r
    return r


def _resultant_interp(f, g, name, other):
    """Bivariate resultant over QQ by evaluation at the second variable."""
    dfn, dfo = f.degree(name), f.degree(other)
    dgn, dgo = g.degree(name), g.degree(other)
    bound = dfn * dgo + dgn * dfo
    lf = f.leading_coeff(name)
    lg = g.leading_coeff(name)
    points, values = [], []
    t = 0
    while len(points) <= bound:
        for cand in (t, -t) if t else (0,):
            c = mpq(cand)
            if len(points) > bound:
                break
            if not lf.eval_var(other, c).constant_value():
                continue
            if not lg.eval_var(other, c).constant_value():
                continue
            fv = f.eval_var(other, c).to_univariate(name)
            gv = g.eval_var(other, c).to_univariate(name)
            fa, sa = _rat_to_int(fv)
            ga, sb = _rat_to_int(gv)
            r = mpq(int_resultant(fa, ga)) / (sa ** dgn) / (sb ** dfn)
            points.append(c)
            values.append(r)
        t += 1
    coeffs = interpolate_rational(points, values)
    return MultiPoly.from_univariate(coeffs, other, f.vars, f.field)


def interpolate_rational(points, values):
    """Newton interpolation over QQ; returns dense coefficient list."""
    n = len(points)
    divided = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (points[i] - points[i - j])
    coeffs = [mpq(0)] * n
    acc = [mpq(1)]
    for k in range(n):
        for i, c in enumerate(acc):
            coeffs[i] += divided[k] * c
        if k + 1 < n:
            # acc *= (x - points[k])
            new = [mpq(0)] * (len(acc) + 1)
            for i, c in enumerate(acc):
                new[i] -= c * points[k]
                new[i + 1] += c
            acc = new
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def discriminant(f, name):
    """(-1)^(n(n-1)/2) Res(f, f')/lc, n = deg(f)."""
    n = f.degree(name)
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    lc = f.leading_coeff(name)
    if lc.is_zero():
        raise ValueError("leading coefficient vanishes; normalize first")
    res = resultant(f, f.derivative(name), name)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    out = exact_divide(res, lc)
    return out if sign == 1 else -out


# ---------------------------------------------------------------------------
# Factorization over QQ (Zassenhaus)
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
                 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191]


def _mod_norm(a, p):
    return [x % p for x in a]


def _mp_strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mp_strip(out)


def _mp_divmod(a, b, p):
    a = _mp_strip([x % p for x in a])
    b = _mp_strip([x % p for x in b])
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        a.pop()
    return _mp_strip(q), _mp_strip(a)


def _mp_sub(a, b, p):
    n = max(len(a), len(b))
    return _mp_strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                      for i in range(n)])


def _mp_gcd(a, b, p):
    a = _mp_strip([x % p for x in a])
    b = _mp_strip([x % p for x in b])
    while b:
        a, b = b, _mp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _mp_pow(base, e, mod_poly, p):
    result = [1]
    base = _mp_divmod(base, mod_poly, p)[1]
    while e:
        if e & 1:
            result = _mp_divmod(_mp_mul(result, base, p), mod_poly, p)[1]
        base = _mp_divmod(_mp_mul(base, base, p), mod_poly, p)[1]
        e >>= 1
    return result


def _factor_mod_p(f, p, rng):
    """Distinct-degree + equal-degree factorization of squarefree monic f."""
    out = []
    # distinct degree
    stages = []
    h = [0, 1]
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _mp_pow(h, p, v, p)
        g = _mp_gcd(_mp_strip([(h[i] if i < len(h) else 0) - (1 if i == 1 else 0)
                               for i in range(max(len(h), 2))]), v, p)
        if len(g) > 1:
            stages.append((g, d))
            v = _mp_divmod(v, g, p)[0]
            h = _mp_divmod(h, v, p)[1]
    if len(v) > 1:
        stages.append((v, len(v) - 1))
    # equal degree (Cantor-Zassenhaus)
    for g, d in stages:
        parts = [g]
        final = []
        while parts:
            part = parts.pop()
            k = len(part) - 1
            if k == d:
                final.append(part)
                continue
            while True:
                t = [rng.randrange(p) for _ in range(k)]
                t = _mp_strip(t)
                if len(t) < 2:
                    continue
                e = (p ** d - 1) // 2
                w = _mp_pow(t, e, part, p)
                w = _mp_strip([(w[i] if i < len(w) else 0) - (1 if i == 0 else 0)
                               for i in range(max(len(w), 1))])
                gg = _mp_gcd(w, part, p)
                if 1 < len(gg) < len(part):
                    parts.append(gg)
                    parts.append(_mp_divmod(part, gg, p)[0])
                    break
        out.extend(final)
    return out


def _sym_mod(a, m):
    out = []
    half = m // 2
    for x in a:
        v = x % m
        if v > half:
            v -= m
        out.append(v)
    return _istrip(out)


def _lift_factors(f, mod_factors, p, target):
    """Multifactor linear Hensel lift of monic factors to modulus >= target."""
    lc = f[-1]
    k = 1
    q = p
    factors = [list(g) for g in mod_factors]
    # normalize: product of monic factors times lc = f mod p
    while q < target:
        q_next = q * p
        # current product
        prod = [lc % q_next]
        for g in factors:
            prod = _istrip([x % q_next for x in _imul(prod, g)])
        err = _istrip([(x - y) % q_next for x, y in
                       zip(f + [0] * max(0, len(prod) - len(f)),
                           prod + [0] * max(0, len(f) - len(prod)))])
        err = _istrip([(x // q) % p for x in err])
        if err:
            # distribute err over factors via CRT-like Bezout in F_p
            for i, g in enumerate(factors):
                others = [lc % p]
                for j, g2 in enumerate(factors):
                    if i != j:
                        others = _mp_mul(others, _mod_norm(g2, p), p)
                gi = _mod_norm(g, p)
                ginv = _mp_inverse_mod(others, gi, p)
                if ginv is None:
                    raise AssertionError("factors not coprime mod p")
                delta = _mp_divmod(_mp_mul(err, ginv, p), gi, p)[1]
                factors[i] = _istrip([(g[idx] if idx < len(g) else 0)
                                      + q * (delta[idx] if idx < len(delta) else 0)
                                      for idx in range(max(len(g), len(delta)))])
        q = q_next
    return factors, q


def _mp_inverse_mod(a, mod_poly, p):
    """Inverse of a modulo mod_poly over F_p, or None."""
    r0, r1 = [x % p for x in mod_poly], _mp_divmod(a, mod_poly, p)[1]
    t0, t1 = [], [1]
    while r1:
        qt, r = _mp_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, _mp_sub(t0, _mp_mul(qt, t1, p), p)
    if len(r0) != 1:
        return None
    inv = pow(r0[0], p - 2, p)
    return [x * inv % p for x in t0]


def factor_int_squarefree(f, seed=0):
    """Irreducible factors of a primitive squarefree integer polynomial."""
    f = _istrip([int(c) for c in f])
    n = len(f) - 1
    if n <= 1:
        return [f]
    rng = random.Random((seed, tuple(f)).__hash__() ^ 0x5EED)
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if f[-1] % p == 0:
            continue
        fp = _mod_norm(f, p)
        inv = pow(fp[-1], p - 2, p)
        fp = [x * inv % p for x in fp]
        dfp = _mp_strip([i * fp[i] % p for i in range(1, len(fp))])
        if len(_mp_gcd(fp, dfp, p)) != 1:
            continue
        facs = _factor_mod_p(fp, p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if tried >= 4 or (best and len(best[1]) == 1):
            break
    if best is None:
        raise AssertionError("no usable prime found")
    p, facs = best
    if len(facs) == 1:
        return [f]
    # Landau-Mignotte style bound on factor coefficients
    norm = math.isqrt(sum(int(c) * int(c) for c in f)) + 1
    bound = 2 ** (n + 1) * norm * abs(f[-1])
    factors, q = _lift_factors(f, facs, p, 2 * bound + 1)
    # recombination: try subsets of modular factors by increasing size
    import itertools as _it
    result = []
    remaining = list(range(len(factors)))
    current = list(f)
    r = 1
    while 2 * r <= len(remaining):
        found = False
        lc = current[-1]
        for subset in _it.combinations(remaining, r):
            cand = [lc % q]
            for i in subset:
                cand = _istrip([x % q for x in _imul(cand, factors[i])])
            cand = _sym_mod(cand, q)
            cand = _iprimitive(cand)
            if len(cand) < 2:
                continue
            quot = _poly_divide_int(current, cand)
            if quot is not None:
                result.append(cand)
                current = quot
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            r += 1
    if len(current) > 1:
        res = _iprimitive(current)
        if res[-1] < 0:
            res = [-x for x in res]
        result.append(res)
    return result


def _poly_divide_int(f, g):
    """Exact division of integer polynomials, or None."""
    if len(g) > len(f):
        return None
    r = list(f)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(f) - len(g), -1, -1):
        lead = r[k + len(g) - 1]
        if lead % g[-1]:
            return None
        c = lead // g[-1]
        q[k] = c
        if c:
            for i, y in enumerate(g):
                r[i + k] -= c * y
    return q if not any(r) else None


def factor_rational(f, name=None):
    """Complete factorization over QQ of a univariate MultiPoly.

    Returns (unit, [(MultiPoly factor, multiplicity)]), factors primitive
    integer with positive leading coefficient, ordered by degree then by
    coefficient tuple.
    """
    if name is None:
        livevars = [v for v in f.vars if f.degree(v) > 0]
        name = livevars[0] if livevars else f.vars[0]
    coeffs = [mpq(c) for c in f.to_univariate(name)]
    if not any(coeffs):
        raise ValueError("factor of zero polynomial")
    sq = squarefree_univariate(coeffs, QQ)
    unit = mpq(1)
    rebuilt = [mpq(1)]
    pairs = []
    for part, mult in sq:
        ints, scale = _rat_to_int(part)
        ints = _iprimitive(ints)
        if ints[-1] < 0:
            ints = [-x for x in ints]
        for irr in factor_int_squarefree(ints):
            pairs.append((irr, mult))
    # unit = f / prod(factor^mult)
    prod = [mpq(1)]
    for irr, mult in pairs:
        for _ in range(mult):
            prod = _umul_q(prod, [mpq(c) for c in irr])
    unit = coeffs[-1] / prod[-1] if prod else coeffs[-1]
    pairs.sort(key=lambda t: (len(t[0]), [int(c) for c in t[0]]))
    out = [(MultiPoly.from_univariate([mpq(c) for c in irr], name, f.vars, f.field), m)
           for irr, m in pairs]
    return unit, out


def _umul_q(a, b):
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def is_irreducible_rational(coeffs):
    """Irreducibility over QQ of a dense rational coefficient list."""
    coeffs = [mpq(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    n = len(coeffs) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if not coeffs[0]:
        return False  # divisible by x
    g = _q_gcd(coeffs, [mpq(i) * coeffs[i] for i in range(1, len(coeffs))])
    if len(g) > 1:
        return False
    ints, _ = _rat_to_int(coeffs)
    ints = _iprimitive(ints)
    return len(factor_int_squarefree(ints)) == 1


# ---------------------------------------------------------------------------
# Factorization over a number field (Trager's method)
# ---------------------------------------------------------------------------

def factor_over_field(coeffs, field, name="y"):
    """Irreducible monic factors of a univariate polynomial over QQ(a).

    ``coeffs`` is a dense list of FieldElements (low degree first).
    Returns a list of (coeff list, multiplicity).
    """
    f = [field.coerce(c) for c in coeffs]
    _f_strip(f)
    if len(f) <= 1:
        return []
    inv = f[-1].inverse()
    f = [c * inv for c in f]
    out = []
    for part, mult in squarefree_univariate(f, field):
        for fac in _trager_squarefree(part, field):
            out.append((fac, mult))
    out.sort(key=lambda t: len(t[0]))
    return out


def _trager_squarefree(f, field, name="y"):
    if len(f) == 2:
        return [f]
    d = field.degree
    m_a = [mpq(c) for c in field.min_poly]
    for s in (0, 1, -1, 2, -2, 3, -3, 5, -5):
        norm = _trager_norm(f, m_a, s, field)
        g = _q_gcd(norm, [mpq(i) * norm[i] for i in range(1, len(norm))])
        if len(g) == 1:
            break
    else:
        raise AssertionError("no squarefree Trager shift found")
    unit, rat_factors = factor_rational(
        MultiPoly.from_univariate(norm, "t"), "t")
    if len(rat_factors) == 1:
        return [f]
    out = []
    a = field.gen()
    for rf, _m in rat_factors:
        rf_c = rf.to_univariate("t")
        # substitute t -> y + s*a in the rational factor, gcd with f
        shifted = _compose_linear_field(rf_c, s, a, field)
        fac = field_gcd(f, shifted, field)
        if len(fac) > 1:
            out.append(fac)
    total = sum(len(fac) - 1 for fac in out)
    if total != len(f) - 1:
        raise AssertionError("Trager factor degrees do not add up")
    return out


def _trager_norm(f, m_a, s, field):
    """Res_z(m_a(z), f(y - s z)) as a rational list in y."""
    vars_ = ("t", "z")
    tz = MultiPoly.var("t", vars_, QQ)
    zz = MultiPoly.var("z", vars_, QQ)
    shifted = tz - s * zz
    G = MultiPoly.zero(vars_, QQ)
    acc = MultiPoly.const(1, vars_, QQ)
    for c in f:
        cz = MultiPoly.from_univariate(list(c.coeffs), "z", vars_, QQ)
        G = G + cz * acc
        acc = acc * shifted
    m_poly = MultiPoly.from_univariate(m_a, "z", vars_, QQ)
    res = resultant(m_poly, G, "z")
    return res.to_univariate("t")


def _compose_linear_field(rat_coeffs, s, a, field):
    """Evaluate a rational polynomial at (y + s*a): coefficient list over field."""
    shift = [s * a, field.one]  # s*a + y
    out = [field.zero]
    acc = [field.one]
    for c in rat_coeffs:
        out = _f_add_scaled(out, acc, field.coerce(c), field)
        acc = _field_list_mul(acc, shift, field)
    return _f_strip(out)


def _f_add_scaled(a, b, s, field):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(x + y * s)
    return out


# ---------------------------------------------------------------------------
# Multivariate gcd by interpolation on univariate projections
# ---------------------------------------------------------------------------

def gcd_multivariate(f, g):
    """Gcd of MultiPolys over QQ (integer-primitive, positive leading sign)."""
    if f.is_zero():
        return g.primitive_rational()
    if g.is_zero():
        return f.primitive_rational()
    live = sorted(set(v for v in f.vars if f.degree(v) > 0)
                  | set(v for v in g.vars if g.degree(v) > 0),
                  key=f.vars.index)
    if not live:
        return MultiPoly.const(1, f.vars, f.field)
    if len(live) == 1:
        name = live[0]
        fa, _ = _rat_to_int(f.to_univariate(name))
        ga, _ = _rat_to_int(g.to_univariate(name))
        h = int_gcd(fa, ga)
        return MultiPoly.from_univariate([mpq(c) for c in h], name, f.vars, f.field)
    if len(live) == 2:
        return _gcd_brown_bivariate(f, g, live)
    return _gcd_prs(f, g, live)


def _coeffs_in(f, name):
    return [f.coeff_of(name, i) for i in range(f.degree(name) + 1)]


def _content_wrt(f, name):
    """Gcd of the coefficients of f viewed in the main variable name."""
    cont = MultiPoly.zero(f.vars, f.field)
    for c in _coeffs_in(f, name):
        if c.is_zero():
            continue
        cont = gcd_multivariate(cont, c)
        if cont.is_constant():
            break
    return cont if not cont.is_zero() else MultiPoly.const(1, f.vars, f.field)


def _gcd_brown_bivariate(f, g, live):
    name, interp_var = live[0], live[1]
    if max(f.degree(name), g.degree(name)) > max(f.degree(interp_var),
                                                 g.degree(interp_var)):
        name, interp_var = interp_var, name
    cont_f = _content_wrt(f, name)
    cont_g = _content_wrt(g, name)
    cont = gcd_multivariate(cont_f, cont_g)
    fp = exact_divide(f, cont_f)
    gp = exact_divide(g, cont_g)
    lf, lg = fp.leading_coeff(name), gp.leading_coeff(name)
    gamma = gcd_multivariate(lf, lg)
    bound = min(fp.degree(name), gp.degree(name))
    points, images = [], []
    needed = gamma.degree(interp_var) + min(fp.degree(interp_var),
                                            gp.degree(interp_var)) + 1
    t = 0
    guard = 0
    while True:
        guard += 1
        if guard > 1000:
            raise AssertionError("bivariate gcd interpolation did not converge")
        cands = (mpq(0),) if t == 0 else (mpq(t), mpq(-t))
        t += 1
        for c in cands:
            if not lf.eval_var(interp_var, c).constant_value():
                continue
            if not lg.eval_var(interp_var, c).constant_value():
                continue
            fa, _ = _rat_to_int(fp.eval_var(interp_var, c).to_univariate(name))
            ga, _ = _rat_to_int(gp.eval_var(interp_var, c).to_univariate(name))
            h = int_gcd(fa, ga)
            dh = len(h) - 1
            if dh == 0:
                return cont.primitive_rational()
            if dh > bound:
                continue
            if dh < bound:
                bound = dh
                points, images = [], []
            gam = gamma.eval_var(interp_var, c).constant_value()
            scale = gam / mpq(h[-1])
            images.append([mpq(x) * scale for x in h])
            points.append(c)
        if len(points) >= needed:
            coeff_lists = []
            for k in range(bound + 1):
                vals = [img[k] if k < len(img) else mpq(0) for img in images]
                coeff_lists.append(interpolate_rational(points, vals))
            cand = MultiPoly.zero(f.vars, f.field)
            xmono = MultiPoly.var(name, f.vars, f.field)
            for k, cl in enumerate(coeff_lists):
                cand = cand + MultiPoly.from_univariate(cl, interp_var, f.vars,
                                                        f.field) * xmono ** k
            # the imposed leading coefficient may exceed the true one; strip
            # the content in the main variable before testing divisibility
            ccont = _content_wrt(cand, name)
            if not ccont.is_constant():
                cand = exact_divide(cand, ccont)
            cand = cand.primitive_rational()
            if divides(cand, fp) and divides(cand, gp):
                return (cand * cont).primitive_rational()
            needed += 2


def _gcd_prs(f, g, live):
    """Primitive PRS gcd for three or more variables."""
    name = min(live, key=lambda v: max(f.degree(v), g.degree(v)))
    cont_f = _content_wrt(f, name)
    cont_g = _content_wrt(g, name)
    cont = gcd_multivariate(cont_f, cont_g)
    a = exact_divide(f, cont_f)
    b = exact_divide(g, cont_g)
    if a.degree(name) < b.degree(name):
        a, b = b, a
    while not b.is_zero() and b.degree(name) > 0:
        r = _pseudo_rem(a, b, name)
        if not r.is_zero():
            r = exact_divide(r, _content_wrt(r, name))
        a, b = b, r
    if not b.is_zero():
        return cont.primitive_rational()
    return (a * cont).primitive_rational()


def _interp_polys(points, images, var):
    """Interpolate polynomial-valued samples along var (Newton scheme)."""
    vars_ = images[0].vars
    field = images[0].field
    n = len(points)
    divided = list(images)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            inv = 1 / (points[i] - points[i - j])
            divided[i] = (divided[i] - divided[i - 1]) * inv
    x = MultiPoly.var(var, vars_, field)
    out = MultiPoly.zero(vars_, field)
    acc = MultiPoly.const(1, vars_, field)
    for k in range(n):
        out = out + divided[k] * acc
        if k + 1 < n:
            acc = acc * (x - points[k])
    return out


# ---------------------------------------------------------------------------
# Primed symmetrization
# ---------------------------------------------------------------------------

PRIMED_BASE = ("a1", "a2", "b1", "b2", "b3", "c1", "c2")
PRIMED_VARS = PRIMED_BASE + tuple(s + "p" for s in PRIMED_BASE)


def primed_symmetrize(e, m):
    """Sum over all ways of priming exactly m of the factors of each monomial.

    ``e`` is a MultiPoly in the coefficient symbols a1..c2 (primed versions
    allowed with exponent zero); extends to polynomials by linearity.  A
    monomial s1^e1*...*sk^ek of degree n yields the sum over k-tuples
    (j1..jk), ji <= ei, sum ji = m of prod binom(ei, ji) si^(ei-ji) si'^ji.
    """
    vars_ = e.vars
    base_idx = []
    for s in PRIMED_BASE:
        if s in vars_ and (s + "p") in vars_:
            base_idx.append((vars_.index(s), vars_.index(s + "p")))
        elif s in vars_:
            raise ValueError(f"primed partner of {s} missing from variables")
    out = MultiPoly.zero(vars_, e.field)
    for exps, c in e.terms.items():
        if any(exps[j] for _, j in base_idx):
            raise ValueError("input monomial already contains primed symbols")
        slots = [(i, j, exps[i]) for i, j in base_idx if exps[i]]
        n = sum(k for _, _, k in slots)
        if m < 0 or m > n:
            raise ValueError(f"cannot prime {m} of {n} factors")
        for assign in _bounded_compositions(m, [k for _, _, k in slots]):
            coeff = c
            new = list(exps)
            for (i, j, k), ji in zip(slots, assign):
                coeff = coeff * math.comb(k, ji)
                new[i] = k - ji
                new[j] = ji
            out = out + MultiPoly.from_terms([(tuple(new), coeff)], vars_, e.field)
    return out


def _bounded_compositions(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    first = bounds[0]
    for j in range(min(first, total) + 1):
        for rest in _bounded_compositions(total - j, bounds[1:]):
            yield (j,) + rest
