"""Exact arithmetic over the rationals and simple algebraic number fields.

Rationals are gmpy2.mpq values (arbitrary precision, always reduced,
positive denominator).  A number field is a simple extension QQ(e) given by
a monic irreducible minimal polynomial; elements are coefficient vectors in
the power basis.  Complex embeddings are certified by isolating rational
boxes: Sturm sequences on the real line, exact winding numbers on rational
rectangles off it.
"""

from __future__ import annotations

import math

from gmpy2 import mpq, mpz

from .errors import FieldDegreeError, FieldMismatch

Rational = mpq

_ZERO = mpq(0)
_ONE = mpq(1)


def rational(x) -> mpq:
    """Coerce ints, strings or mpq to an exact rational."""
    return mpq(x)


# ---------------------------------------------------------------------------
# Dense univariate arithmetic over QQ (coefficient lists, low degree first).
# Kept private and tiny; the real polynomial machinery lives in poly.py.
# ---------------------------------------------------------------------------

def _ustrip(c):
    while c and not c[-1]:
        c.pop()
    return c


def _uadd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) + (b[i] if i < len(b) else _ZERO)
           for i in range(n)]
    return _ustrip(out)


def _uneg(a):
    return [-x for x in a]


def _uscale(a, s):
    if not s:
        return []
    return [x * s for x in a]


def _umul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _ustrip(out)


def _udivmod(a, b):
    """Quotient and remainder over QQ; b nonzero."""
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    r = _ustrip(list(a))
    q = [_ZERO] * max(0, len(r) - len(b) + 1)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        if not r[-1]:
            r.pop()
            continue
        k = len(r) - len(b)
        c = r[-1] * inv
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r.pop()
    return _ustrip(q), _ustrip(r)


def _ugcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _udivmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def _uxgcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [_ONE], []
    t0, t1 = [], [_ONE]
    while r1:
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _uadd(s0, _uneg(_umul(q, s1)))
        t0, t1 = t1, _uadd(t0, _uneg(_umul(q, t1)))
    if r0:
        lead = r0[-1]
        r0 = [x / lead for x in r0]
        s0 = [x / lead for x in s0]
        t0 = [x / lead for x in t0]
    return r0, s0, t0


def _ueval(a, x):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _uderiv(a):
    return _ustrip([i * a[i] for i in range(1, len(a))])


def _usub(a, b):
    return _uadd(a, _uneg(b))


def _ucontent_primitive(a):
    """Scale a rational coefficient list to a primitive integer one."""
    if not a:
        return mpq(0), []
    den = mpz(1)
    for c in a:
        den = den * c.denominator // math.gcd(int(den), int(c.denominator))
    ints = [mpz(c * den) for c in a]
    g = mpz(0)
    for c in ints:
        g = mpz(math.gcd(int(g), int(c)))
    if ints[-1] < 0:
        g = -g
    return mpq(g, den), [mpq(c // g) for c in ints]


# ---------------------------------------------------------------------------
# Number fields and their elements
# ---------------------------------------------------------------------------

class RationalDomain:
    """The field QQ, presented with the same small interface as NumberField."""

    degree = 1
    is_rational = True

    def coerce(self, x):
        if isinstance(x, FieldElement):
            raise FieldMismatch("cannot coerce a number-field element into QQ")
        return mpq(x)

    @property
    def zero(self):
        return _ZERO

    @property
    def one(self):
        return _ONE

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("QQ")


QQ = RationalDomain()


class NumberField:
    """Simple extension QQ(e) defined by an irreducible polynomial.

    ``def_poly`` keeps the primitive integer form used for display; the
    monic rational form drives arithmetic.  Irreducibility is certified at
    construction via rational factorization.
    """

    is_rational = False

    def __init__(self, coeffs, name="e", check_irreducible=True):
        coeffs = [mpq(c) for c in coeffs]
        _ustrip(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        _, self.def_poly = _ucontent_primitive(coeffs)
        lead = coeffs[-1]
        self.min_poly = tuple(c / lead for c in coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        if check_irreducible and self.degree > 1:
            from . import poly
            if not poly.is_irreducible_rational(list(self.def_poly)):
                raise ValueError("minimal polynomial is reducible over QQ")
        # reduction table: e^k for k = degree .. 2*degree-2 in the power basis
        d = self.degree
        table = []
        cur = [-c for c in self.min_poly[:-1]]
        table.append(list(cur))
        for _ in range(d - 2):
            cur = [_ZERO] + cur
            if len(cur) > d:
                top = cur.pop()
                if top:
                    cur = [cur[i] + top * table[0][i] for i in range(d)]
            cur = cur + [_ZERO] * (d - len(cur))
            table.append(list(cur))
        self._pow_table = table
        self._embeddings = None

    # -- construction helpers ------------------------------------------------

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field is not self and x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x
        vec = [_ZERO] * self.degree
        vec[0] = mpq(x)
        return FieldElement(self, vec)

    def gen(self):
        vec = [_ZERO] * self.degree
        if self.degree == 1:
            vec[0] = -self.min_poly[0]
        else:
            vec[1] = _ONE
        return FieldElement(self, vec)

    def from_coeffs(self, coeffs):
        coeffs = [mpq(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise ValueError("coefficient vector longer than field degree")
        coeffs += [_ZERO] * (self.degree - len(coeffs))
        return FieldElement(self, coeffs)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    # -- internal reduction --------------------------------------------------

    def _reduce(self, conv):
        """Reduce a convolution of length <= 2d-1 modulo the minimal polynomial."""
        d = self.degree
        out = list(conv[:d]) + [_ZERO] * (d - min(d, len(conv)))
        for k in range(d, len(conv)):
            c = conv[k]
            if not c:
                continue
            row = self._pow_table[k - d]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
        return out

    def __repr__(self):
        return f"QQ[{self.name}]/({_poly_text(self.def_poly, self.name)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    # -- embeddings ----------------------------------------------------------

    def embeddings(self):
        if self._embeddings is None:
            self._embeddings = enumerate_embeddings(self)
        return self._embeddings

    def signature(self):
        """(real embeddings, conjugate pairs)."""
        r = count_real_roots(list(self.min_poly))
        return r, (self.degree - r) // 2


class FieldElement:
    """Element of a NumberField in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _match(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatch(f"mixing {self.field} and {other.field}")
        return self.field.coerce(other)

    def __add__(self, other):
        o = self._match(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._match(other)
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._match(other)
        return FieldElement(self.field, [b - a for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, mpq, mpz)):
            s = mpq(other)
            return FieldElement(self.field, [a * s for a in self.coeffs])
        o = self._match(other)
        a, b = self.coeffs, o.coeffs
        d = self.field.degree
        if d == 2:
            a0, a1 = a
            b0, b1 = b
            cross = a1 * b1
            if cross:
                r0, r1 = self.field._pow_table[0]
                return FieldElement(self.field, (a0 * b0 + cross * r0,
                                                 a0 * b1 + a1 * b0 + cross * r1))
            return FieldElement(self.field, (a0 * b0, a0 * b1 + a1 * b0))
        conv = [_ZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(conv))

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = _uxgcd(_ustrip(list(self.coeffs)), list(self.field.min_poly))
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        inv = [c / g[0] for c in s]
        _, rem = _udivmod(inv, list(self.field.min_poly))
        return self.field.from_coeffs(rem)

    def __truediv__(self, other):
        o = self._match(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._match(other)
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            s = mpq(other)
        except (TypeError, ValueError):
            return NotImplemented
        return not any(self.coeffs[1:]) and self.coeffs[0] == s

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def min_poly_over_QQ(self):
        """Monic minimal polynomial of this element over QQ (coefficient list)."""
        d = self.field.degree
        # rows: 1, x, x^2, ... as QQ-vectors; search the first dependency
        rows = []
        power = self.field.one
        for k in range(d + 1):
            rows.append(list(power.coeffs))
            dep = _linear_dependency(rows)
            if dep is not None:
                lead = dep[-1]
                return [c / lead for c in dep]
            power = power * self
        raise AssertionError("no dependency found up to field degree")

    def __repr__(self):
        return _poly_text(self.coeffs, self.field.name)


def _linear_dependency(rows):
    """Coefficients c (last nonzero) with sum c_i rows[i] = 0, else None."""
    m = [list(r) + [_ZERO] * 0 for r in rows]
    n = len(rows)
    width = len(rows[0])
    # track the combination producing each reduced row
    combo = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    pivots = {}
    for i in range(n):
        row, cmb = list(m[i]), list(combo[i])
        for col, (prow, pcmb) in pivots.items():
            f = row[col]
            if f:
                row = [a - f * b for a, b in zip(row, prow)]
                cmb = [a - f * b for a, b in zip(cmb, pcmb)]
        lead = None
        for col in range(width):
            if row[col]:
                lead = col
                break
        if lead is None:
            if i == n - 1:
                return cmb
            continue
        inv = 1 / row[lead]
        pivots[lead] = ([a * inv for a in row], [a * inv for a in cmb])
    return None


# ---------------------------------------------------------------------------
# Canonical text form
# ---------------------------------------------------------------------------

def _poly_text(coeffs, name):
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mag = c
            var = name if i == 1 else f"{name}^{i}"
            if mag == 1:
                term = var
            elif mag == -1:
                term = f"-{var}"
            else:
                term = f"{mag}*{var}"
            parts.append(term)
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


def format_element(x, var="x"):
    """Canonical text form, e.g. ``(52 - 59*e + 16*e^2 = 0; x = 1/2 + 3/4*e)``."""
    if isinstance(x, FieldElement):
        if x.field.degree == 1 or x.is_rational():
            return str(x.coeffs[0])
        field = x.field
        return (f"({_poly_text(field.def_poly, field.name)} = 0; "
                f"{var} = {_poly_text(x.coeffs, field.name)})")
    return str(mpq(x))


def parse_element(text, field=None):
    """Inverse of format_element; returns mpq or FieldElement."""
    text = text.strip()
    if not text.startswith("("):
        return mpq(text)
    inner = text[1:-1]
    poly_part, elem_part = inner.split(";")
    lhs = poly_part.split("=")[0].strip()
    name = _detect_name(lhs)
    coeffs = _parse_poly_text(lhs, name)
    if field is None:
        field = NumberField(coeffs, name=name)
    rhs = elem_part.split("=", 1)[1].strip()
    vec = _parse_poly_text(rhs, field.name)
    return field.from_coeffs(vec)


def _detect_name(text):
    for ch in text:
        if ch.isalpha():
            return ch
    return "e"


def _parse_poly_text(text, name):
    text = text.replace("- ", "+ -").replace(" ", "")
    coeffs = {}
    for term in text.split("+"):
        if not term:
            continue
        if name in term:
            head, _, tail = term.partition(name)
            power = 1
            if tail.startswith("^"):
                power = int(tail[1:])
            head = head.rstrip("*")
            if head in ("", "-"):
                c = mpq(head + "1")
            else:
                c = mpq(head)
        else:
            power, c = 0, mpq(term)
        coeffs[power] = coeffs.get(power, _ZERO) + c
    out = [_ZERO] * (max(coeffs) + 1 if coeffs else 1)
    for k, v in coeffs.items():
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# Real root isolation (Sturm / bisection)
# ---------------------------------------------------------------------------

def sturm_chain(p):
    chain = [_ustrip(list(p)), _uderiv(p)]
    while chain[-1]:
        rem = _udivmod(chain[-2], chain[-1])[1]
        chain.append(_uneg(rem))
    chain.pop()
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = _ueval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            changes += 1
    return changes


def count_real_roots(p, lo=None, hi=None):
    """Distinct real roots of p in (lo, hi]; whole line when bounds omitted."""
    p = _ustrip([mpq(c) for c in p])
    if len(p) <= 1:
        return 0
    sf = _udivmod(p, _ugcd(p, _uderiv(p)))[0] if len(_ugcd(p, _uderiv(p))) > 1 else p
    chain = sturm_chain(sf)
    bound = root_bound(sf)
    a = lo if lo is not None else -bound
    b = hi if hi is not None else bound
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def root_bound(p):
    """Cauchy bound: all complex roots have |z| < bound (a rational)."""
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=_ZERO)
    return 1 + m / lead


def isolate_real_roots(p):
    """Disjoint rational intervals [(lo, hi)], each with exactly one root, sorted.

    Rational roots may come out as degenerate intervals lo == hi.
    """
    p = _ustrip([mpq(c) for c in p])
    g = _ugcd(p, _uderiv(p))
    sf = _udivmod(p, g)[0] if len(g) > 1 else p
    chain = sturm_chain(sf)
    bound = root_bound(sf)

    def count(a, b):
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    out = []

    def split(a, b, n):
        if n == 0:
            return
        if n == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        if not _ueval(sf, mid):
            out.append((mid, mid))
            eps = (b - a) / (4 * len(sf))
            while True:
                lo_pt, hi_pt = mid - eps, mid + eps
                if _ueval(sf, lo_pt) and _ueval(sf, hi_pt):
                    lo_n = count(a, lo_pt)
                    hi_n = count(hi_pt, b)
                    if lo_n + hi_n == n - 1:
                        break
                eps = eps / 3
            split(a, lo_pt, lo_n)
            split(hi_pt, b, hi_n)
            return
        split(a, mid, count(a, mid))
        split(mid, b, count(mid, b))

    split(-bound, bound, count(-bound, bound))
    return sorted(out)


def refine_real_interval(p, lo, hi, width):
    """Shrink an isolating interval of squarefree p below the given width."""
    p = _ustrip([mpq(c) for c in p])
    if lo == hi:
        return lo, hi
    slo = _ueval(p, lo)
    if not slo:
        return lo, lo
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = _ueval(p, mid)
        if not v:
            return mid, mid
        if (v > 0) == (slo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# Complex root isolation via exact winding numbers on rational rectangles
# ---------------------------------------------------------------------------

class Box:
    """Axis-aligned rectangle with rational corners in the complex plane."""

    __slots__ = ("re_lo", "re_hi", "im_lo", "im_hi")

    def __init__(self, re_lo, re_hi, im_lo, im_hi):
        self.re_lo, self.re_hi = mpq(re_lo), mpq(re_hi)
        self.im_lo, self.im_hi = mpq(im_lo), mpq(im_hi)

    @property
    def width(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def center(self):
        return ((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    def mirror(self):
        return Box(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)

    def contains_value(self, re, im):
        return (self.re_lo <= re <= self.re_hi) and (self.im_lo <= im <= self.im_hi)

    def disjoint(self, other):
        return (self.re_hi < other.re_lo or other.re_hi < self.re_lo
                or self.im_hi < other.im_lo or other.im_hi < self.im_lo)

    def __repr__(self):
        return (f"Box([{self.re_lo}, {self.re_hi}] x "
                f"[{self.im_lo}, {self.im_hi}])")


def _complex_poly_on_segment(p, z0, z1):
    """Real and imaginary parts of p(z0 + t*(z1-z0)) as polynomials in t."""
    x0, y0 = z0
    x1, y1 = z1
    zr = [x0, x1 - x0]
    zi = [y0, y1 - y0]
    re, im = [p[-1]], []
    for c in reversed(p[:-1]):
        nre = _usub(_umul(re, zr), _umul(im, zi))
        nim = _uadd(_umul(re, zi), _umul(im, zr))
        re = _uadd(nre, [c])
        im = nim
    return _ustrip(re), _ustrip(im)


class BoundaryRoot(Exception):
    """A root lies on the rectangle boundary; the caller must perturb."""


def _edge_crossings(re, im):
    """Signed crossings of the positive real axis along one edge, t in [0,1]."""
    if not im:
        raise BoundaryRoot  # image runs along the real axis
    if not re:
        # purely imaginary values: a root on the edge iff im vanishes there
        if _ueval(im, mpq(0)) == 0 or _ueval(im, mpq(1)) == 0 \
                or count_real_roots(im, mpq(0), mpq(1)):
            raise BoundaryRoot
        return 0
    g = _ugcd(re, im)
    if len(g) > 1 and (not _ueval(g, mpq(0)) or not _ueval(g, mpq(1))
                       or count_real_roots(g, mpq(0), mpq(1))):
        raise BoundaryRoot
    # strip roots of im at the endpoints; they are not interior crossings
    im_w = list(im)
    if not _ueval(im_w, mpq(0)):
        if _ueval(re, mpq(0)) > 0:
            raise BoundaryRoot  # corner value sits on the measuring ray
        while im_w and not im_w[0]:
            im_w = im_w[1:]  # divide by t; positive on (0,1)
    if not _ueval(im_w, mpq(1)):
        if _ueval(re, mpq(1)) > 0:
            raise BoundaryRoot
        k = 0
        while not _ueval(im_w, mpq(1)):
            im_w = _udivmod(im_w, [mpq(-1), mpq(1)])[0]
            k += 1
        if k % 2:
            im_w = _uneg(im_w)  # restore interior signs on (0,1)
    if len(im_w) <= 1:
        return 0
    total = 0
    for lo, hi in isolate_real_roots(im_w):
        # decide strictly inside (0,1) versus outside
        while True:
            if hi < 0 or lo > 1 or (lo == hi and not (0 < lo < 1)):
                lo = None
                break
            if (lo == hi and 0 < lo < 1) or (lo > 0 and hi < 1):
                break
            lo, hi = refine_real_interval(im_w, lo, hi, (hi - lo) / 4)
        if lo is None:
            continue
        if lo == hi:
            # exact rational root r: local sign pattern of (t-r)^k * w(r)
            r = lo
            w, k = list(im_w), 0
            while True:
                q, rem = _udivmod(w, [-r, mpq(1)])
                if rem:
                    break
                w, k = q, k + 1
            if k % 2 == 0:
                continue
            v = _ueval(w, r)
            sb = 1 if v > 0 else -1
            sa = -sb
            vre = _ueval(re, r)
            if vre < 0:
                continue
            if not vre:
                raise BoundaryRoot
        else:
            va, vb = _ueval(im_w, lo), _ueval(im_w, hi)
            if not va or not vb:
                raise BoundaryRoot  # endpoint of isolating interval is a root
            sa = 1 if va > 0 else -1
            sb = 1 if vb > 0 else -1
            if sa == sb:
                continue
            guard = 0
            while count_real_roots(re, lo, hi) or not _ueval(re, lo):
                lo, hi = refine_real_interval(im_w, lo, hi, (hi - lo) / 4)
                guard += 1
                if guard > 400:
                    raise BoundaryRoot
            mid = (lo + hi) / 2
            vre = _ueval(re, mid)
            if vre < 0:
                continue
            if not vre:
                raise BoundaryRoot
        total += 1 if (sa < 0 < sb) else -1
    return total


def count_roots_in_box(p, box):
    """Exact number of roots of squarefree p inside an open rational box."""
    corners = [(box.re_lo, box.im_lo), (box.re_hi, box.im_lo),
               (box.re_hi, box.im_hi), (box.re_lo, box.im_hi)]
    total = 0
    for i in range(4):
        re, im = _complex_poly_on_segment(p, corners[i], corners[(i + 1) % 4])
        total += _edge_crossings(re, im)
    return total


def _subdivide(p, box, n_roots, out):
    """Quadtree subdivision down to count-1 boxes, nudging cut lines off roots."""
    if n_roots == 0:
        return
    if n_roots == 1:
        out.append(box)
        return
    for shift in (mpq(1, 2), mpq(27, 64), mpq(37, 64), mpq(17, 32)):
        xm = box.re_lo + shift * (box.re_hi - box.re_lo)
        ym = box.im_lo + shift * (box.im_hi - box.im_lo)
        quads = [Box(box.re_lo, xm, box.im_lo, ym),
                 Box(xm, box.re_hi, box.im_lo, ym),
                 Box(box.re_lo, xm, ym, box.im_hi),
                 Box(xm, box.re_hi, ym, box.im_hi)]
        try:
            counts = [count_roots_in_box(p, q) for q in quads]
        except BoundaryRoot:
            continue
        if sum(counts) != n_roots:
            continue
        for q, c in zip(quads, counts):
            _subdivide(p, q, c, out)
        return
    raise AssertionError("failed to split roots with all cut offsets")


class Embedding:
    """One embedding of a number field into CC, certified by a root box."""

    __slots__ = ("field", "box", "is_real")

    def __init__(self, field, box, is_real):
        self.field = field
        self.box = box
        self.is_real = is_real

    def __repr__(self):
        kind = "real" if self.is_real else "complex"
        return f"Embedding({kind}, {self.box})"


def enumerate_embeddings(field):
    """All embeddings: real ones ascending, then conjugate pairs adjacent.

    Pairs are ordered by real part, positive imaginary part listed first.
    """
    p = list(field.min_poly)
    reals = isolate_real_roots(p)
    # certify disjointness by refinement
    refined = []
    for lo, hi in reals:
        refined.append(refine_real_interval(p, lo, hi, mpq(1, 1024)))
    embeddings = [Embedding(field, Box(lo, hi, 0, 0), True) for lo, hi in refined]

    n_pairs = (field.degree - len(reals)) // 2
    if n_pairs:
        bound = root_bound(p)
        upper = None
        for eps_num in (1, 3, 7, 13):
            eps = mpq(eps_num, 1000)
            try:
                cand = Box(-bound - eps, bound + eps / 3, eps, bound + eps)
                if count_roots_in_box(p, cand) == n_pairs:
                    upper = cand
                    break
            except BoundaryRoot:
                continue
        if upper is None:
            raise AssertionError("could not frame the upper half plane roots")
        boxes = []
        _subdivide(p, upper, n_pairs, boxes)
        refined_boxes = []
        for b in boxes:
            while b.width > mpq(1, 128):
                b = _refine_complex_box(p, b)
            refined_boxes.append(b)
        # sort pairs: by real part, ties by imaginary part; refine until decidable
        boxes = _sort_disjoint(p, refined_boxes)
        for b in boxes:
            embeddings.append(Embedding(field, b, False))
            embeddings.append(Embedding(field, b.mirror(), False))
    return embeddings


def _refine_complex_box(p, box):
    """Halve an isolating box, keeping the quadrant that holds its root."""
    for shift in (mpq(1, 2), mpq(27, 64), mpq(37, 64), mpq(17, 32), mpq(31, 64)):
        xm = box.re_lo + shift * (box.re_hi - box.re_lo)
        ym = box.im_lo + shift * (box.im_hi - box.im_lo)
        quads = [Box(box.re_lo, xm, box.im_lo, ym),
                 Box(xm, box.re_hi, box.im_lo, ym),
                 Box(box.re_lo, xm, ym, box.im_hi),
                 Box(xm, box.re_hi, ym, box.im_hi)]
        try:
            counts = [count_roots_in_box(p, q) for q in quads]
        except BoundaryRoot:
            continue
        if sum(counts) != 1:
            continue
        return quads[counts.index(1)]
    raise AssertionError("failed to refine isolating box")


def _sort_disjoint(p, boxes):
    boxes = list(boxes)
    changed = True
    guard = 0
    while changed and guard < 64:
        changed = False
        guard += 1
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                a, b = boxes[i], boxes[j]
                if a.re_hi < b.re_lo or b.re_hi < a.re_lo:
                    continue
                if a.im_hi < b.im_lo or b.im_hi < a.im_lo:
                    continue
                boxes[i] = _refine_complex_box(p, a)
                boxes[j] = _refine_complex_box(p, b)
                changed = True

    def key(bx):
        return (bx.re_lo + bx.re_hi, bx.im_lo + bx.im_hi)

    return sorted(boxes, key=key)


# ---------------------------------------------------------------------------
# Certified numeric evaluation (interval arithmetic over rational boxes)
# ---------------------------------------------------------------------------

def _ival_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _ival_mul(a, b):
    vals = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return (min(vals), max(vals))


def _box_add(a, b):
    return (_ival_add(a[0], b[0]), _ival_add(a[1], b[1]))


def _box_mul(a, b):
    re = _ival_add(_ival_mul(a[0], b[0]), _ival_mul((-b[1][1], -b[1][0]), a[1]))
    im = _ival_add(_ival_mul(a[0], b[1]), _ival_mul(a[1], b[0]))
    return (re, im)


def numeric_evaluate(x, embedding, precision_bits=53):
    """A complex box of width <= 2^-precision_bits certified to contain x."""
    field = embedding.field
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldMismatch("element does not belong to the embedding's field")
        coeffs = list(x.coeffs)
    else:
        coeffs = [mpq(x)]
    target = mpq(1, mpz(2) ** precision_bits)
    p = list(field.min_poly)
    box = embedding.box
    while True:
        gen_box = ((box.re_lo, box.re_hi), (box.im_lo, box.im_hi))
        acc = ((mpq(0), mpq(0)), (mpq(0), mpq(0)))
        for c in reversed(coeffs):
            acc = _box_mul(acc, gen_box)
            acc = _box_add(acc, (((c, c), (mpq(0), mpq(0)))))
        width = max(acc[0][1] - acc[0][0], acc[1][1] - acc[1][0])
        if width <= target:
            return Box(acc[0][0], acc[0][1], acc[1][0], acc[1][1])
        if embedding.is_real:
            lo, hi = refine_real_interval(p, box.re_lo, box.re_hi,
                                          (box.re_hi - box.re_lo) / 4 or target / 4)
            box = Box(lo, hi, 0, 0)
        else:
            box = _refine_complex_box(p, box)


# ---------------------------------------------------------------------------
# Field operations used by the rest of the library
# ---------------------------------------------------------------------------

def field_arithmetic(x, y, op):
    """Spec-surface arithmetic dispatcher: op in {add, sub, mul, div}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def extend_field(field, g_coeffs, cap=24):
    """Adjoin a root of g (irreducible over ``field``) via a primitive element.

    Returns (new_field, embed, root) where embed maps old elements into the
    new field and root is a root of g there.  For field == QQ the new field
    is simply QQ[z]/(g).
    """
    if field is None or getattr(field, "is_rational", False):
        g = [mpq(c) for c in g_coeffs]
        if len(g) - 1 > cap:
            raise FieldDegreeError(f"extension degree {len(g) - 1} exceeds cap {cap}")
        if len(g) == 2:
            val = -g[0] / g[1]
            return QQ, (lambda a: mpq(a)), val
        new = NumberField(g, check_irreducible=False)
        return new, (lambda a, _f=new: _f.coerce(a)), new.gen()

    d = field.degree
    coeffs = [field.coerce(c) for c in g_coeffs]
    e = len(coeffs) - 1
    if e == 1:
        root = -coeffs[0] / coeffs[1]
        return field, (lambda a: a), root
    if d * e > cap:
        raise FieldDegreeError(f"extension degree {d * e} exceeds cap {cap}")

    from . import poly  # deferred: poly imports numfield

    m_a = list(field.min_poly)
    for s in (1, -1, 2, -2, 3, -3, 5, -5, 7, 11):
        M = _trager_norm_shift(m_a, coeffs, s)
        if len(_ugcd(M, _uderiv(M))) == 1:
            break
    else:
        raise AssertionError("no squarefree primitive-element shift found")
    new = NumberField(M, check_irreducible=False)
    gamma = new.gen()
    # a = unique root in `new` of gcd(m_a(z), G(gamma - s z, z))
    m_a_new = [new.coerce(c) for c in m_a]
    h = _eval_bivariate_shift(coeffs, gamma, s, new)
    gcd_la = _monic_gcd_field(m_a_new, h)
    assert len(gcd_la) == 2, "primitive element bookkeeping failed"
    a_new = -gcd_la[0] / gcd_la[1]
    embed_cache = {}

    def embed(elem, _field=field, _a=a_new, _new=new):
        if isinstance(elem, FieldElement):
            if elem.field != _field:
                raise FieldMismatch("embedding expects elements of the base field")
            key = elem.coeffs
            got = embed_cache.get(key)
            if got is None:
                acc = _new.zero
                for c in reversed(elem.coeffs):
                    acc = acc * _a + _new.coerce(c)
                embed_cache[key] = got = acc
            return got
        return _new.coerce(elem)

    root = gamma - s * a_new
    return new, embed, root


def _trager_norm_shift(m_a, g_coeffs, s):
    """Res_z(m_a(z), G(t - s z, z)) as a rational coefficient list in t."""
    from . import poly

    tz = poly.MultiPoly.var("t", ("t", "z"), QQ)
    zz = poly.MultiPoly.var("z", ("t", "z"), QQ)
    shifted = tz - s * zz
    G = poly.MultiPoly.zero(("t", "z"), QQ)
    for i, c in enumerate(g_coeffs):
        cz = poly.MultiPoly.from_univariate(list(c.coeffs), "z", ("t", "z"), QQ)
        G = G + cz * shifted ** i
    m_poly = poly.MultiPoly.from_univariate(m_a, "z", ("t", "z"), QQ)
    res = poly.resultant(m_poly, G, "z")
    return res.to_univariate("t")


def _eval_bivariate_shift(g_coeffs, gamma, s, new_field):
    """G(gamma - s z, z) as a polynomial in z over the new field.

    The old-field coefficients c(a) re-expand with the generator a replaced
    by the indeterminate z; a is then recovered as the root of the gcd with
    the old minimal polynomial.
    """
    shift = [gamma, new_field.coerce(-s)]  # gamma - s*z
    out = [new_field.zero]
    term_power = [new_field.one]
    for c in g_coeffs:
        c_in_z = [new_field.coerce(v) for v in c.coeffs]
        contrib = _field_poly_mul(c_in_z, term_power, new_field)
        out = _field_poly_add(out, contrib, new_field)
        term_power = _field_poly_mul(term_power, shift, new_field)
    while out and not out[-1]:
        out.pop()
    return out


def _field_poly_add(a, b, field):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else field.zero) + (b[i] if i < len(b) else field.zero)
            for i in range(n)]


def _field_poly_mul(a, b, field):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _monic_gcd_field(a, b):
    """Monic gcd of two coefficient lists over a NumberField."""
    a = [c for c in a]
    b = [c for c in b]

    def strip(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_(f, g):
        f = list(f)
        inv = g[-1].inverse()
        while len(f) >= len(g) and strip(f):
            if not f[-1]:
                f.pop()
                continue
            c = f[-1] * inv
            k = len(f) - len(g)
            for i, y in enumerate(g):
                f[i + k] = f[i + k] - c * y
            f.pop()
        return strip(f)

    a, b = strip(a), strip(b)
    while b:
        a, b = b, divmod_(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def fields_isomorphic(f1, f2):
    """Whether QQ[z]/(f1) and QQ[z]/(f2) are isomorphic fields."""
    from . import poly

    f1 = [mpq(c) for c in f1]
    f2 = [mpq(c) for c in f2]
    if len(f1) != len(f2):
        return False
    if len(f1) == 2:
        return True
    field = NumberField(f2, check_irreducible=False)
    facs = poly.factor_over_field([field.coerce(c) for c in f1], field)
    return any(len(g) == 2 for g, _ in facs)
