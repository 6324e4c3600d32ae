"""Root-lattice combinatorics for curves on the covering surface.

Chamber elements of the A-lattices are integer vectors d with zero sum in
the standard presentation; the square is -sum d_i^2 and the symmetric ones
are antisymmetric under reversal.  Rational curves of low degree on the
covering surface come from three bounded steps of the reflection-chamber
walk, in bijection with complete collections of infinitely-near double
points.  Rank-2 positive definite lattices and their orbit counts certify
the arithmetic Zariski pairs.
"""

from __future__ import annotations

import itertools

from .errors import NotAType, NotDefinite


# ---------------------------------------------------------------------------
# Singularity sets and chains
# ---------------------------------------------------------------------------

class SingularitySet:
    """Multiset of A-D-E labels with their Milnor numbers."""

    def __init__(self, labels):
        self.labels = list(labels)
        self.total_milnor = sum(int(s[1:]) for s in self.labels)

    @classmethod
    def from_string(cls, text):
        from .singular import parse_singularity_string
        return cls(parse_singularity_string(text))

    def a_type_only(self):
        return all(s.startswith("A") for s in self.labels)

    def chain_lengths(self):
        """Lengths of the chains of infinitely near double points."""
        if not self.a_type_only():
            raise NotAType("chains are defined for A-type points only")
        return [(int(s[1:]) + 1) // 2 for s in self.labels]

    def __repr__(self):
        return f"SingularitySet({'+'.join(self.labels)})"


class ChainConfig:
    """Chain lengths with an optional height assignment summing to 8."""

    def __init__(self, chains, heights=None):
        self.chains = list(chains)
        self.heights = list(heights) if heights is not None else None
        if self.heights is not None:
            if len(self.heights) != len(self.chains):
                raise ValueError("height list length mismatch")
            if any(h < 0 or h > r for h, r in zip(self.heights, self.chains)):
                raise ValueError("height exceeds chain length")
            if sum(self.heights) != 8:
                raise ValueError("heights must sum to 8")


# ---------------------------------------------------------------------------
# Chamber elements of A_k
# ---------------------------------------------------------------------------

class AkElement:
    """Element of A_k as the vector d of consecutive differences."""

    __slots__ = ("k", "d")

    def __init__(self, k, d):
        self.k = k
        self.d = tuple(d)
        if len(self.d) != k + 1:
            raise ValueError("difference vector must have length k+1")
        if sum(self.d) != 0:
            raise ValueError("not in the lattice: entries must sum to zero")

    @property
    def square(self):
        return -sum(x * x for x in self.d)

    def is_chamber(self):
        return all(a <= b for a, b in zip(self.d, self.d[1:]))

    def is_symmetric(self):
        return all(self.d[i] == -self.d[self.k - i] for i in range(self.k + 1))

    def dot(self, other):
        return -sum(a * b for a, b in zip(self.d, other.d))

    def __eq__(self, other):
        return isinstance(other, AkElement) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"AkElement(k={self.k}, d={self.d})"


def enumerate_chamber_elements(k, bound, symmetric_only=False):
    """All chamber elements of A_k with square >= -bound.

    The non-decreasing difference vectors with zero sum and bounded square
    come from padding a multiset of nonzero values with zeros.
    """
    if k < 1 or bound < 2:
        raise ValueError("need k >= 1 and bound >= 2")
    out = []
    max_abs = int(bound ** 0.5)
    negatives = _bounded_multisets(max_abs, bound)
    for neg, neg_sq in negatives:
        for pos, pos_sq in _bounded_multisets(max_abs, bound - neg_sq):
            if sum(neg) != sum(pos):
                continue
            if len(neg) + len(pos) > k + 1:
                continue
            if not neg and not pos:
                continue
            d = ([-v for v in neg]
                 + [0] * (k + 1 - len(neg) - len(pos)) + list(reversed(pos)))
            el = AkElement(k, d)
            if symmetric_only and not el.is_symmetric():
                continue
            out.append(el)
    out.sort(key=lambda e: (-e.square, e.d))
    return out


def _bounded_multisets(max_abs, sq_budget):
    """Non-increasing tuples of positive integers with bounded square sum."""
    results = [((), 0)]
    stack = [((), 0, max_abs)]
    while stack:
        prefix, sq, cap = stack.pop()
        for v in range(1, cap + 1):
            nsq = sq + v * v
            if nsq > sq_budget:
                continue
            tup = prefix + (v,)
            results.append((tup, nsq))
            stack.append((tup, nsq, v))
    return results


def a_element(k, q):
    """The chamber vector with q leading -1 and q trailing +1 entries."""
    if 2 * q > k + 1:
        raise ValueError(f"a^{q} does not fit in A_{k}")
    d = [-1] * q + [0] * (k + 1 - 2 * q) + [1] * q
    return AkElement(k, d)


def b_element(k, q):
    """a^1 + a^q."""
    base = a_element(k, 1).d
    add = a_element(k, q).d
    return AkElement(k, [x + y for x, y in zip(base, add)])


# ---------------------------------------------------------------------------
# The three bounded reflection-walk steps
# ---------------------------------------------------------------------------

class StepVector:
    """A candidate vector a + r*h with per-point A-lattice components."""

    __slots__ = ("components", "r", "label")

    def __init__(self, components, r, label):
        self.components = components  # dict point index -> AkElement
        self.r = r
        self.label = label

    def square(self):
        return sum(c.square for c in self.components.values()) + 2 * self.r * self.r

    def dot(self, other):
        total = 2 * self.r * other.r
        for i, c in self.components.items():
            o = other.components.get(i)
            if o is not None:
                total += c.dot(o)
        return total

    def __repr__(self):
        return f"StepVector({self.label}, r={self.r})"


def _component_options(k, budget, symmetric):
    """Chamber elements of A_k with square >= -budget, grouped by square."""
    els = enumerate_chamber_elements(k, budget, symmetric_only=symmetric)
    return els


def _candidate_vectors(milnors, r, symmetric):
    """All vectors sum_i a_i + r*h with square -2, chamber a_i components."""
    budget = 2 * r * r + 2
    per_point = []
    for mu in milnors:
        opts = [(None, 0)]
        for el in _component_options(mu, budget, symmetric):
            opts.append((el, -el.square))
        per_point.append(opts)
    out = []

    def rec(i, comps, used):
        if used > budget:
            return
        if i == len(per_point):
            if used == budget:
                out.append(StepVector(dict(comps), r, None))
            return
        for el, cost in per_point[i]:
            if el is not None:
                comps[i] = el
            rec(i + 1, comps, used + cost)
            if el is not None:
                del comps[i]

    rec(0, {}, 0)
    return out


def vinberg_steps(sset):
    """Vectors appended at the three even steps of the chamber walk.

    Step 0 seeds the walls with the exceptional classes; each candidate at
    a later step must have non-negative product with everything already
    accepted.  Step 6 keeps reversal-symmetric vectors only (the others
    project one-to-one, not two-to-one).  The returned step-6 list excludes
    the genus-zero vector representing the curve itself, reported apart.
    """
    if isinstance(sset, str):
        sset = SingularitySet.from_string(sset)
    if not sset.a_type_only():
        raise NotAType("the walk is implemented for A-type points only")
    if sset.total_milnor != 19:
        raise ValueError("the walk expects a maximizing configuration (mu = 19)")
    milnors = [int(s[1:]) for s in sset.labels]
    accepted = []  # includes step-0 walls implicitly via chamber condition

    def admissible(v, earlier):
        return all(v.dot(u) >= 0 for u in earlier)

    step2 = [v for v in _candidate_vectors(milnors, 1, False)
             if v.square() == -2]
    step2 = [v for v in step2 if _is_line_shape(v)]
    # all candidates at step 2 are admissible against step 0 by chamber-ness
    step4 = []
    for v in _candidate_vectors(milnors, 2, False):
        if v.square() != -2:
            continue
        if admissible(v, step2):
            step4.append(v)
    step6 = []
    genus_zero = []
    for v in _candidate_vectors(milnors, 3, True):
        if v.square() != -2:
            continue
        if not admissible(v, step2 + step4):
            continue
        if _is_genus_zero_shape(v, milnors):
            genus_zero.append(v)
        else:
            step6.append(v)
    _label_vectors(step2, step4, step6, milnors)
    return {"step2": step2, "step4": step4, "step6": step6,
            "genus_zero": genus_zero}


def _decompose_as_a(el):
    """Write a chamber element as a^q if possible: returns q or None."""
    k = el.k
    for q in range(1, (k + 1) // 2 + 1):
        if el == a_element(k, q):
            return q
    return None


def _decompose_as_b(el):
    k = el.k
    for q in range(1, (k + 1) // 2 + 1):
        if el == b_element(k, q):
            return q
    return None


def _is_line_shape(v):
    """Step-2 shapes: a_i^2 + h or a_i^1 + a_j^1 + h."""
    qs = []
    for el in v.components.values():
        q = _decompose_as_a(el)
        if q is None:
            return False
        qs.append(q)
    return sorted(qs) in ([2], [1, 1])


def _is_genus_zero_shape(v, milnors):
    qs = {}
    for i, el in v.components.items():
        q = _decompose_as_a(el)
        if q is None:
            return False
        qs[i] = q
    return sum(qs.values()) == 10


def _label_vectors(step2, step4, step6, milnors):
    for v in step2:
        parts = {i: _decompose_as_a(el) for i, el in v.components.items()}
        v.label = ("line", tuple(sorted(parts.items())))
    for v in step4:
        parts = {i: _decompose_as_a(el) for i, el in v.components.items()}
        if any(q is None for q in parts.values()):
            raise AssertionError("step-4 vector is not a sum of a^q components")
        v.label = ("conic", tuple(sorted(parts.items())))
    for v in step6:
        marked = None
        parts = {}
        for i, el in v.components.items():
            q = _decompose_as_a(el)
            if q is None:
                qb = _decompose_as_b(el)
                if qb is None or marked is not None:
                    raise AssertionError("step-6 vector has an unexpected shape")
                marked = (i, qb)
            else:
                parts[i] = q
        if marked is None:
            raise AssertionError("step-6 vector lacks its marked component")
        v.label = ("cubic", marked, tuple(sorted(parts.items())))


# ---------------------------------------------------------------------------
# Splitting curves: the combinatorial side
# ---------------------------------------------------------------------------

def splitting_curves(sset):
    """Lines, conics and marked cubics through complete collections.

    Complete pairs, quintuples, and septuples with a marked level-zero
    double point, in explicit bijection with the three walk steps.
    """
    if isinstance(sset, str):
        sset = SingularitySet.from_string(sset)
    chains = sset.chain_lengths()
    n = len(chains)
    lines = []
    for i in range(n):
        if chains[i] >= 2:
            lines.append(((i, 2),))
    for i, j in itertools.combinations(range(n), 2):
        lines.append(((i, 1), (j, 1)))
    conics = [tuple(sorted(c.items()))
              for c in _prefix_selections(chains, 5)]
    cubics = []
    for sel in _prefix_selections(chains, 7):
        for marked in sorted(sel):
            cubics.append((marked, tuple(sorted(sel.items()))))
    steps = vinberg_steps(sset)
    _assert_bijection(steps, lines, conics, cubics)
    return {"lines": lines, "conics": conics, "cubics": cubics}


def _prefix_selections(chains, total):
    """Assignments 0 <= q_i <= r_i with sum q_i = total."""
    out = []

    def rec(i, remaining, acc):
        if i == len(chains):
            if remaining == 0:
                out.append(dict(acc))
            return
        for q in range(0, min(chains[i], remaining) + 1):
            if q:
                acc[i] = q
            rec(i + 1, remaining - q, acc)
            if q:
                del acc[i]

    rec(0, total, {})
    return out


def _assert_bijection(steps, lines, conics, cubics):
    got_lines = sorted(v.label[1] for v in steps["step2"])
    want_lines = sorted(tuple(sorted(dict(l).items())) for l in lines)
    if got_lines != want_lines:
        raise AssertionError("step-2 vectors do not match complete pairs")
    got_conics = sorted(v.label[1] for v in steps["step4"])
    if got_conics != sorted(conics):
        raise AssertionError("step-4 vectors do not match complete quintuples")
    got_cubics = sorted((v.label[1], v.label[2]) for v in steps["step6"])
    normalized = []
    for marked, sel in cubics:
        sel_d = dict(sel)
        qb = sel_d.pop(marked)
        normalized.append(((marked, qb), tuple(sorted(sel_d.items()))))
    if got_cubics != sorted(normalized):
        raise AssertionError("step-6 vectors do not match marked septuples")


def splitting_counts(sset):
    s = splitting_curves(sset)
    return (len(s["lines"]), len(s["conics"]), len(s["cubics"]))


# ---------------------------------------------------------------------------
# Rank-2 definite lattices: reduction, orthogonal group, orbit counts
# ---------------------------------------------------------------------------

class GramLattice:
    def __init__(self, gram):
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        self.rank = len(self.gram)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    def is_positive_definite(self):
        if self.rank != 2:
            raise NotDefinite("only rank 2 is supported here")
        a, b = self.gram[0][0], self.gram[0][1]
        c = self.gram[1][1]
        return a > 0 and a * c - b * b > 0

    def value(self, v):
        a, b = self.gram[0][0], self.gram[0][1]
        c = self.gram[1][1]
        return a * v[0] ** 2 + 2 * b * v[0] * v[1] + c * v[1] ** 2

    def dot(self, v, w):
        a, b = self.gram[0][0], self.gram[0][1]
        c = self.gram[1][1]
        return a * v[0] * w[0] + b * (v[0] * w[1] + v[1] * w[0]) + c * v[1] * w[1]

    def __repr__(self):
        return f"GramLattice({self.gram})"


def diag(a, b):
    return GramLattice(((a, 0), (0, b)))


def rank2_reduce(lat):
    """Gauss-reduced form (0 <= 2|b| <= a <= c); an isomorphism invariant."""
    if isinstance(lat, GramLattice):
        g = [list(r) for r in lat.gram]
    else:
        g = [list(r) for r in lat]
        lat = GramLattice(g)
    if not lat.is_positive_definite():
        raise NotDefinite("reduction requires positive definite input")
    a, b, c = g[0][0], g[0][1], g[1][1]
    while True:
        if a > c:
            a, c = c, a
        # shear the second vector by the first
        t = round(b / a) if a else 0
        b2 = b - t * a
        c2 = c - 2 * t * b + t * t * a
        b, c = b2, c2
        if a > c:
            a, c = c, a
            continue
        if 2 * abs(b) <= a:
            break
    if b < 0:
        b = -b
    return GramLattice(((a, b), (b, c)))


def short_vectors(lat, norm):
    """All integer vectors of the given norm in a rank-2 definite lattice."""
    if not lat.is_positive_definite():
        raise NotDefinite("enumeration requires positive definite input")
    a, b = lat.gram[0][0], lat.gram[0][1]
    c = lat.gram[1][1]
    det = a * c - b * b
    out = []
    # a x^2 + 2b xy + c y^2 = norm: y bounded by norm * a / det
    y_max = int((norm * a / det) ** 0.5) + 1
    for y in range(-y_max, y_max + 1):
        # a x^2 + 2b x y + (c y^2 - norm) = 0
        A, B, C = a, 2 * b * y, c * y * y - norm
        disc = B * B - 4 * A * C
        if disc < 0:
            continue
        root = _isqrt(disc)
        if root * root != disc:
            continue
        for sgn in (1, -1) if root else (1,):
            num = -B + sgn * root
            if num % (2 * A):
                continue
            out.append((num // (2 * A), y))
    return sorted(set(out))


def _isqrt(n):
    import math
    return math.isqrt(n)


def orthogonal_group(lat):
    """All integer 2x2 matrices preserving the Gram form."""
    if not lat.is_positive_definite():
        raise NotDefinite("finite orthogonal groups need definite input")
    a, c = lat.gram[0][0], lat.gram[1][1]
    v_opts = short_vectors(lat, a)
    w_opts = short_vectors(lat, c)
    b = lat.gram[0][1]
    out = []
    for v in v_opts:
        for w in w_opts:
            if lat.dot(v, w) != b:
                continue
            det = v[0] * w[1] - v[1] * w[0]
            if det in (1, -1):
                out.append(((v[0], w[0]), (v[1], w[1])))
    return out


def zariski_orbits(lat):
    """Orbits of the characteristic residue classes under the isometries.

    Classes v mod 2T with v.T even and v^2 = 6 mod 8, acted on by the
    orthogonal group; for the catalog lattices there are exactly two.
    """
    if isinstance(lat, (tuple, list)):
        lat = GramLattice(lat)
    if not lat.is_positive_definite():
        raise NotDefinite("orbit computation needs positive definite input")
    a, b = lat.gram[0][0], lat.gram[0][1]
    c = lat.gram[1][1]
    if a % 2 or c % 2:
        raise ValueError("the lattice must be even")
    classes = []
    for v in ((0, 0), (1, 0), (0, 1), (1, 1)):
        if (a * v[0] + b * v[1]) % 2 or (b * v[0] + c * v[1]) % 2:
            continue
        if lat.value(v) % 8 != 6:
            continue
        classes.append(v)
    group = orthogonal_group(lat)
    orbits = []
    seen = set()
    for v in classes:
        if v in seen:
            continue
        orbit = set()
        for m in group:
            img = ((m[0][0] * v[0] + m[0][1] * v[1]) % 2,
                   (m[1][0] * v[0] + m[1][1] * v[1]) % 2)
            orbit.add(img)
        seen |= orbit
        orbits.append((v, sorted(orbit)))
    return orbits


def smith_normal_form(mat):
    """Diagonal invariants of an integer matrix (discriminant-group checks)."""
    m = [list(map(int, row)) for row in mat]
    rows, cols = len(m), len(m[0])
    out = []
    r = c = 0
    while r < rows and c < cols:
        # find pivot of least absolute value
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[r], m[bi] = m[bi], m[r]
        for row in m:
            row[c], row[bj] = row[bj], row[c]
        again = False
        for i in range(rows):
            if i != r and m[i][c] % m[r][c]:
                q = m[i][c] // m[r][c]
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                again = True
        for j in range(cols):
            if j != c and m[r][j] % m[r][c]:
                q = m[r][j] // m[r][c]
                for row in m:
                    row[j] -= q * row[c]
                again = True
        if again:
            continue
        for i in range(rows):
            if i != r:
                q = m[i][c] // m[r][c]
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        for j in range(cols):
            if j != c:
                q = m[r][j] // m[r][c]
                for row in m:
                    row[j] -= q * row[c]
        # enforce divisibility towards the remaining block
        fixed = False
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                if m[i][j] % m[r][c]:
                    for row in m:
                        row[c] += row[j]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        out.append(abs(m[r][c]))
        r += 1
        c += 1
    out.sort()
    return out
