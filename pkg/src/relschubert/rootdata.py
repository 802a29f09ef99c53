"""Reductive root data with exact weight arithmetic and Weyl-group combinatorics.

Weights and coweights are vectors in a fixed lattice basis of t* and t,
paired by the ordinary dot product.  Type strings such as "G2", "A2xA1+u1"
or "T2" build data whose lattice basis consists of the fundamental weights
of each simple factor followed by the central coordinates.
"""
import hashlib
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, ResourceError
from .linalg import dot, frac, inverse, matvec, nullspace, primitive

DEFAULT_ENUMERATION_BOUND = 10 ** 6

_TYPE_RANGES = {"A": (1, 20), "B": (2, 4), "C": (2, 4), "D": (4, 4), "G": (2, 2), "F": (4, 4)}


def cartan_matrix(kind, n):
    """Cartan matrix with entries <alpha_i, alpha_j^vee> (Bourbaki numbering)."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if kind in "ABC":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if kind == "B":
            a[n - 2][n - 1] = -2
        if kind == "C":
            a[n - 1][n - 2] = -2
    elif kind == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif kind == "G":
        a = [[2, -1], [-3, 2]]
    elif kind == "F":
        a = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    else:
        raise ConfigError("unknown Cartan type %r" % kind)
    return a


def weyl_order(kind, n):
    if kind == "A":
        return math.factorial(n + 1)
    if kind in "BC":
        return 2 ** n * math.factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"G": 12, "F": 1152}[kind]


def validate_cartan(a):
    """Raise ConfigError naming the first violated Cartan-matrix condition."""
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ConfigError("Cartan matrix must be square")
        if a[i][i] != 2:
            raise ConfigError("Cartan matrix diagonal entry (%d,%d) is not 2" % (i + 1, i + 1))
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise ConfigError("off-diagonal entry (%d,%d) is positive" % (i + 1, j + 1))
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ConfigError("entries (%d,%d) and (%d,%d) are not simultaneously zero"
                                      % (i + 1, j + 1, j + 1, i + 1))
    norms = _root_norms(a)
    g = [[Fraction(a[i][j]) * norms[j] / 2 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise ConfigError("Cartan matrix is not symmetrizable")
    for k in range(1, n + 1):
        if _det([row[:k] for row in g[:k]]) <= 0:
            raise ConfigError("Cartan matrix is not of finite type (leading minor %d not positive)" % k)


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def _root_norms(a):
    """Squared lengths of simple roots, shortest root of each component at 2."""
    n = len(a)
    norms = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        comp = [start]
        norms[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and a[i][j] != 0 and norms[j] is None:
                    norms[j] = norms[i] * Fraction(a[j][i], a[i][j])
                    comp.append(j)
                    queue.append(j)
        low = min(norms[i] for i in comp)
        for i in comp:
            norms[i] = norms[i] * 2 / low
    return norms


def _components(a):
    n = len(a)
    seen = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in range(n):
                if j not in seen and a[i][j] != 0:
                    seen.add(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _classify(a):
    """Type label of a connected Cartan matrix, or None if not recognized."""
    n = len(a)
    for kind in "ABCDGF":
        lo, hi = 1, 30
        if kind in "GF":
            lo = hi = {"G": 2, "F": 4}[kind]
        if n < lo or n > hi:
            continue
        try:
            if cartan_matrix(kind, n) == [list(r) for r in a]:
                return "%s%d" % (kind, n)
        except (IndexError, ConfigError):
            pass
    return None


def _clean(x):
    x = frac(x)
    return int(x) if x.denominator == 1 else x


class RootDatum:
    """A reductive root datum with exact arithmetic.

    simple_roots and simple_coroots are vectors in a lattice basis of t* and
    t respectively.  Central directions are the coordinates left over by the
    semisimple part; all roots vanish on them.
    """

    def __init__(self, simple_roots, simple_coroots, label="", enumeration_bound=DEFAULT_ENUMERATION_BOUND,
                 dim=None):
        self.simple_roots = [tuple(_clean(x) for x in v) for v in simple_roots]
        self.simple_coroots = [tuple(_clean(x) for x in v) for v in simple_coroots]
        if dim is None:
            if not self.simple_roots:
                raise ConfigError("a datum without roots needs an explicit dimension")
            dim = len(self.simple_roots[0])
        self.dim = dim
        self.rank = len(self.simple_roots)
        self.central_rank = dim - self.rank
        self.enumeration_bound = enumeration_bound
        if len(self.simple_coroots) != self.rank:
            raise ConfigError("number of simple roots and coroots differ")
        self.cartan = [[dot(a, c) for c in self.simple_coroots] for a in self.simple_roots]
        for row in self.cartan:
            for x in row:
                if Fraction(x).denominator != 1:
                    raise ConfigError("Cartan pairings must be integers")
        self.cartan = [[int(x) for x in row] for row in self.cartan]
        validate_cartan(self.cartan)
        self.label = label or self._auto_label()
        self.components = [(_classify([[self.cartan[i][j] for j in c] for i in c]), c)
                           for c in _components(self.cartan)]
        self.norms = _root_norms(self.cartan)
        r = self.rank
        self.gram = [[Fraction(self.cartan[i][j]) * self.norms[j] / 2 for j in range(r)] for i in range(r)]
        self._build_bases()
        self._build_roots()
        self._elements = None
        self._w0 = None
        self.factors = None
        self.reflections = [self._reflection_matrix(self.simple_roots[i], self.simple_coroots[i])
                            for i in range(r)]

    def _auto_label(self):
        parts = [_classify([[self.cartan[i][j] for j in c] for i in c]) or "X%d" % len(c)
                 for c in _components(self.cartan)]
        s = "x".join(parts)
        if self.central_rank:
            s = (s + "+u%d" % self.central_rank) if s else "T%d" % self.central_rank
        return s

    # -- lattice bases -------------------------------------------------
    def _build_bases(self):
        n, r = self.dim, self.rank
        if r:
            z = nullspace([list(a) for a in self.simple_roots], n)
        else:
            z = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        self.central_coweights = [tuple(_clean(x) for x in primitive(v)) for v in z]
        m = [list(c) for c in self.simple_coroots] + [list(c) for c in self.central_coweights]
        self._fund_matrix = [[frac(x) for x in row] for row in m]
        minv = inverse(self._fund_matrix)
        cols = [tuple(_clean(minv[i][j]) for i in range(n)) for j in range(n)]
        self.fundamental_weights = cols[:r]
        self.central_weights = cols[r:]
        self._fund_inverse = minv
        mc = [list(a) for a in self.simple_roots] + [list(c) for c in self.central_weights]
        mcinv = inverse([[frac(x) for x in row] for row in mc])
        ccols = [tuple(_clean(mcinv[i][j]) for i in range(n)) for j in range(n)]
        self.fundamental_coweights = ccols[:r]
        basis = [list(a) for a in self.simple_roots] + [list(c) for c in self.central_weights]
        # columns alpha_1..alpha_r, zeta_1..zeta_N
        self._rootbasis_inverse = inverse([[frac(basis[j][i]) for j in range(n)] for i in range(n)])

    def fundamental_coords(self, lam):
        """Coordinates (<lam, alpha_i^vee>, <lam, z_k>) of a weight."""
        return tuple(_clean(x) for x in matvec(self._fund_matrix, [frac(x) for x in lam]))

    def from_fundamental(self, coords):
        return tuple(_clean(x) for x in matvec(self._fund_inverse, [frac(x) for x in coords]))

    def fundamental_covector(self, xi):
        """Covector c with <lam, xi> = c . fundamental_coords(lam)."""
        basis = list(self.fundamental_weights) + list(self.central_weights)
        return tuple(_clean(dot(b, xi)) for b in basis)

    def root_coords(self, lam):
        """Coordinates of a weight in the basis (alpha_1..alpha_r, zeta_1..zeta_N)."""
        return tuple(_clean(x) for x in matvec(self._rootbasis_inverse, [frac(x) for x in lam]))

    def coweight_from_coroot_coords(self, coords):
        """The coweight sum_i c_i alpha_i^vee (+ central part)."""
        out = [Fraction(0)] * self.dim
        vecs = list(self.simple_coroots) + list(self.central_coweights)
        for c, v in zip(coords, vecs):
            c = frac(c)
            if c:
                for k in range(self.dim):
                    out[k] += c * v[k]
        return tuple(_clean(x) for x in out)

    # -- roots -----------------------------------------------------------
    def _build_roots(self):
        r = self.rank
        a = self.cartan
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        roots = list(simple)
        rootset = set(roots)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(r):
                    pairing = sum(beta[j] * a[j][i] for j in range(r))
                    p = 0
                    cur = list(beta)
                    while True:
                        cur[i] -= 1
                        if tuple(cur) in rootset:
                            p += 1
                        else:
                            break
                    if p - pairing > 0:
                        new = list(beta)
                        new[i] += 1
                        new = tuple(new)
                        if new not in rootset:
                            rootset.add(new)
                            roots.append(new)
                            nxt.append(new)
            layer = nxt
        roots.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
        self.positive_roots_rootcoords = roots
        self.positive_roots = [self._combine(self.simple_roots, c) for c in roots]
        self.positive_coroots = []
        for c in roots:
            norm = sum(c[i] * c[j] * self.gram[i][j] for i in range(r) for j in range(r))
            cc = [c[j] * self.norms[j] / norm for j in range(r)]
            self.positive_coroots.append(self._combine(self.simple_coroots, cc))
        self._root_lookup = {}
        for k, v in enumerate(self.positive_roots):
            self._root_lookup[v] = k + 1
            self._root_lookup[tuple(-x for x in v)] = -(k + 1)

    def _combine(self, vecs, coeffs):
        out = [Fraction(0)] * self.dim
        for c, v in zip(coeffs, vecs):
            if c:
                for k in range(self.dim):
                    out[k] += c * v[k]
        return tuple(_clean(x) for x in out)

    def root_sign(self, vec):
        """+1 for a positive root, -1 for a negative root, 0 otherwise."""
        k = self._root_lookup.get(tuple(vec), 0)
        return (k > 0) - (k < 0)

    def coroot_of(self, vec):
        k = self._root_lookup.get(tuple(vec))
        if k is None:
            raise ValueError("not a root: %r" % (vec,))
        c = self.positive_coroots[abs(k) - 1]
        return c if k > 0 else tuple(-x for x in c)

    @property
    def rho(self):
        return self._combine(self.fundamental_weights, [1] * self.rank)

    @property
    def rho_vee(self):
        return self._combine(self.fundamental_coweights, [1] * self.rank)

    def inner(self, lam, mu):
        """W-invariant inner product of weights (semisimple part only)."""
        a = self.root_coords(lam)[:self.rank]
        b = self.root_coords(mu)[:self.rank]
        r = self.rank
        return sum(frac(a[i]) * self.gram[i][j] * b[j] for i in range(r) for j in range(r))

    def is_dominant(self, vec, kind="weight"):
        if kind == "weight":
            return all(dot(vec, c) >= 0 for c in self.simple_coroots)
        return all(dot(a, vec) >= 0 for a in self.simple_roots)

    # -- Weyl group --------------------------------------------------------
    @staticmethod
    def _reflection_matrix(alpha, coroot):
        n = len(alpha)
        return tuple(tuple(int(i == j) - alpha[i] * coroot[j] for j in range(n)) for i in range(n))

    def identity(self):
        n = self.dim
        return WeylElement(self, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def s(self, i):
        """Simple reflection s_i (1-based index)."""
        return WeylElement(self, self.reflections[i - 1])

    def element(self, word):
        """Product s_{i1} s_{i2} ... of simple reflections (1-based word)."""
        w = self.identity()
        for i in word:
            w = w.right_mul_simple(i - 1)
        return w

    def order(self):
        total = 1
        for lab, comp in self.components:
            if lab is None:
                raise ResourceError("cannot determine Weyl group order of an unrecognized component")
            total *= weyl_order(lab[0], int(lab[1:]))
        return total

    def elements(self):
        """All Weyl group elements, sorted by (length, canonical word)."""
        if self._elements is None:
            if self.order() > self.enumeration_bound:
                raise ResourceError("|W| = %d exceeds the enumeration bound %d"
                                    % (self.order(), self.enumeration_bound))
            self._elements = self.subgroup(range(1, self.rank + 1))
        return self._elements

    def subgroup(self, gens):
        """Elements of the parabolic subgroup generated by s_i, i in gens (1-based)."""
        gens = sorted(set(gens))
        start = self.identity()
        start._length = 0
        seen = {start.mat: start}
        layer = [start]
        out = [start]
        while layer:
            nxt = []
            for w in layer:
                for i in gens:
                    v = w.right_mul_simple(i - 1)
                    if v.mat not in seen:
                        v._length = w._length + 1
                        seen[v.mat] = v
                        nxt.append(v)
            if len(seen) > self.enumeration_bound:
                raise ResourceError("subgroup enumeration exceeded the bound %d" % self.enumeration_bound)
            out.extend(nxt)
            layer = nxt
        out.sort(key=lambda w: (w.length, w.word))
        return out

    def longest(self):
        if self._w0 is None:
            neg = tuple(-x for x in self.rho_vee)
            _, u = self.to_dominant(neg, kind="coweight")
            self._w0 = u
        return self._w0

    def to_dominant(self, vec, kind="weight"):
        """Return (dominant vector, u) with u . dominant = vec and u of minimal length."""
        cur = [frac(x) for x in vec]
        word = []
        while True:
            for i in range(self.rank):
                if kind == "weight":
                    p = dot(cur, self.simple_coroots[i])
                    if p < 0:
                        a = self.simple_roots[i]
                        cur = [x - p * y for x, y in zip(cur, a)]
                        break
                else:
                    p = dot(self.simple_roots[i], cur)
                    if p < 0:
                        c = self.simple_coroots[i]
                        cur = [x - p * y for x, y in zip(cur, c)]
                        break
            else:
                break
            word.append(i + 1)
        u = self.element(word)
        return tuple(_clean(x) for x in cur), u

    def min_coset_rep(self, w, J, side="right"):
        """Minimal-length element of w W_J (side='right') or W_J w (side='left')."""
        J = sorted(set(J))
        while True:
            for j in J:
                if side == "right":
                    if self.root_sign(w.act(self.simple_roots[j - 1])) < 0:
                        w = w.right_mul_simple(j - 1)
                        break
                else:
                    if self.root_sign(w.inverse().act(self.simple_roots[j - 1])) < 0:
                        w = self.s(j) * w
                        break
            else:
                return w

    def coset_reps(self, J):
        """Minimal representatives of W / W_J, i.e. w with w(alpha_j) > 0 for j in J."""
        J = sorted(set(J))
        out = []
        for w in self.elements():
            if all(self.root_sign(w.act(self.simple_roots[j - 1])) > 0 for j in J):
                out.append(w)
        return out

    def face(self, xi):
        """Face of the closed chamber containing the dominant coweight xi in its interior."""
        if not self.is_dominant(xi, kind="coweight"):
            raise ValueError("coweight is not dominant")
        J = tuple(i + 1 for i in range(self.rank) if dot(self.simple_roots[i], xi) == 0)
        return Face(self, J, tuple(_clean(x) for x in xi))

    def fingerprint(self):
        h = hashlib.sha256()
        h.update(repr((self.label, self.dim, self.simple_roots, self.simple_coroots)).encode())
        return h.hexdigest()[:16]

    def __repr__(self):
        return "RootDatum(%s)" % self.label


@dataclass(frozen=True)
class Face:
    datum: RootDatum
    vanishing: tuple
    interior_point: tuple


class WeylElement:
    """A Weyl group element; the integer matrix on weights is authoritative."""

    __slots__ = ("datum", "mat", "_hash", "_inv", "_word", "_length")

    def __init__(self, datum, mat):
        self.datum = datum
        self.mat = mat
        self._hash = hash(mat)
        self._inv = None
        self._word = None
        self._length = None

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.mat == other.mat

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        a, b = self.mat, other.mat
        n = len(a)
        bt = list(zip(*b))
        return WeylElement(self.datum, tuple(tuple(dot(a[i], bt[j]) for j in range(n)) for i in range(n)))

    def right_mul_simple(self, i):
        """self * s_i for a 0-based index i."""
        d = self.datum
        alpha, cov = d.simple_roots[i], d.simple_coroots[i]
        m = self.mat
        ma = [dot(row, alpha) for row in m]
        nz = [j for j, c in enumerate(cov) if c]
        new = []
        for r, row in enumerate(m):
            if ma[r]:
                row = list(row)
                for j in nz:
                    row[j] -= ma[r] * cov[j]
                row = tuple(row)
            new.append(row)
        return WeylElement(d, tuple(new))

    def act(self, lam):
        return tuple(_clean(x) for x in matvec(self.mat, lam))

    def act_coweight(self, xi):
        inv = self.inverse().mat
        return tuple(_clean(dot(col, xi)) for col in zip(*inv))

    def is_identity(self):
        return all(self.mat[i][j] == int(i == j) for i in range(len(self.mat)) for j in range(len(self.mat)))

    def _some_word(self):
        d = self.datum
        letters = []
        w = self
        while True:
            for i in range(d.rank):
                if d.root_sign(w.act(d.simple_roots[i])) < 0:
                    w = w.right_mul_simple(i)
                    letters.append(i + 1)
                    break
            else:
                break
        return letters[::-1]

    def inverse(self):
        if self._inv is None:
            word = self._word if self._word is not None else self._some_word()
            inv = self.datum.element(word[::-1])
            inv._inv = self
            self._inv = inv
        return self._inv

    @property
    def word(self):
        """Lexicographically least reduced word (1-based letters)."""
        if self._word is None:
            d = self.datum
            inv = self.inverse()
            letters = []
            while True:
                for i in range(d.rank):
                    if d.root_sign(inv.act(d.simple_roots[i])) < 0:
                        inv = inv.right_mul_simple(i)
                        letters.append(i + 1)
                        break
                else:
                    break
            self._word = tuple(letters)
            self._length = len(letters)
        return self._word

    @property
    def length(self):
        if self._length is None:
            self._length = len(self.word)
        return self._length

    def inversion_count(self):
        d = self.datum
        return sum(1 for b in d.positive_roots if d.root_sign(self.act(b)) < 0)

    def permutation(self, component=0):
        """Images w(1..n) for a type-A component, with w e_i = e_{w(i)}."""
        lab, comp = self.datum.components[component]
        if lab is None or lab[0] != "A":
            raise ValueError("permutation representation needs a type A component")
        pos = {idx + 1: k for k, idx in enumerate(comp)}
        perm = list(range(1, len(comp) + 2))
        for letter in self.word:
            if letter in pos:
                a = pos[letter]
                perm[a], perm[a + 1] = perm[a + 1], perm[a]
        return tuple(perm)

    def cycles(self, component=0):
        """Cycle notation string such as '(1 6)(2 12)'; '1' for the identity."""
        return cycle_string(self.permutation(component))

    def __repr__(self):
        return "W[%s]" % ("".join("s%d" % i for i in self.word) or "1")


def cycle_string(perm):
    n = len(perm)
    seen = set()
    parts = []
    for i in range(1, n + 1):
        if i in seen or perm[i - 1] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i - 1]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j - 1]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) or "1"


def parse_cycles(text, n):
    """Permutation images from cycle notation like '(2 3)(4 6 5)'."""
    perm = list(range(1, n + 1))
    text = text.strip()
    if text in ("", "1"):
        return tuple(perm)
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) for x in cyc.split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b
    return tuple(perm)


def element_from_permutation(datum, perm, component=0):
    """Weyl element of a type-A component with the given images."""
    lab, comp = datum.components[component]
    perm = list(perm)
    letters = []
    while True:
        for a in range(len(perm) - 1):
            if perm[a] > perm[a + 1]:
                perm[a], perm[a + 1] = perm[a + 1], perm[a]
                letters.append(comp[a] + 1)
                break
        else:
            break
    return datum.element(letters[::-1])


_PART = re.compile(r"^([ABCDFGT])(\d+)$")


def build_root_datum(spec, central_rank=0, enumeration_bound=DEFAULT_ENUMERATION_BOUND):
    """Build a RootDatum from a type string or a Cartan matrix (possibly wrapped in a dict).

    Type strings join simple types by 'x'; a '+uN' suffix adds a central
    torus, and 'TN' alone is an N-dimensional torus.
    """
    if isinstance(spec, RootDatum):
        return spec
    if isinstance(spec, dict):
        if "type" in spec:
            return build_root_datum(spec["type"], enumeration_bound=enumeration_bound)
        return build_root_datum(spec.get("cartan"), spec.get("central_rank", 0), enumeration_bound)
    if isinstance(spec, (list, tuple)):
        a = [[int(x) for x in row] for row in spec]
        validate_cartan(a)
        return _datum_from_blocks([(None, a)], central_rank, enumeration_bound)
    if not isinstance(spec, str):
        raise ConfigError("unsupported root datum specification %r" % (spec,))
    text = spec.replace(" ", "")
    center = 0
    m = re.search(r"\+u(\d+)$", text)
    if m:
        center = int(m.group(1))
        text = text[:m.start()]
    blocks = []
    for part in text.split("x") if text else []:
        pm = _PART.match(part)
        if not pm:
            raise ConfigError("unknown type string component %r" % part)
        kind, n = pm.group(1), int(pm.group(2))
        if kind == "T":
            center += n
            continue
        lo, hi = _TYPE_RANGES[kind]
        if not lo <= n <= hi:
            raise ConfigError("type %s%d is outside the supported range %s%d..%s%d" % (kind, n, kind, lo, kind, hi))
        blocks.append(("%s%d" % (kind, n), cartan_matrix(kind, n)))
    if not blocks and center == 0:
        raise ConfigError("empty type string")
    d = _datum_from_blocks(blocks, center + central_rank, enumeration_bound, label=spec.replace(" ", ""))
    if len(blocks) + (1 if center + central_rank else 0) > 1:
        factors, off = [], 0
        for lab, a in blocks:
            factors.append((build_root_datum(lab, enumeration_bound=enumeration_bound), off))
            off += len(a)
        if center + central_rank:
            factors.append((build_root_datum("T%d" % (center + central_rank)), off))
        d.factors = factors
    return d


def _datum_from_blocks(blocks, center, bound, label=""):
    r = sum(len(a) for _, a in blocks)
    n = r + center
    roots, coroots = [], []
    off = 0
    for _, a in blocks:
        k = len(a)
        for i in range(k):
            v = [0] * n
            for j in range(k):
                v[off + j] = a[i][j]
            roots.append(v)
            c = [0] * n
            c[off + i] = 1
            coroots.append(c)
        off += k
    return RootDatum(roots, coroots, label=label, enumeration_bound=bound, dim=n)


def unitary_datum(n, enumeration_bound=DEFAULT_ENUMERATION_BOUND):
    """U(n) in the standard basis e_1..e_n of t*, roots e_i - e_{i+1}."""
    roots = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(v)
    return RootDatum(roots, roots, label="A%d+u1" % (n - 1) if n > 1 else "T1",
                     enumeration_bound=enumeration_bound, dim=n)


def product_datum(data, label=None):
    """Direct product of root data (lattices concatenated, central parts kept per factor)."""
    n = sum(d.dim for d in data)
    roots, coroots = [], []
    off = 0
    for d in data:
        for a, c in zip(d.simple_roots, d.simple_coroots):
            v = [0] * n
            w = [0] * n
            v[off:off + d.dim] = a
            w[off:off + d.dim] = c
            roots.append(v)
            coroots.append(w)
        off += d.dim
    bound = min(d.enumeration_bound for d in data)
    out = RootDatum(roots, coroots, label=label or "x".join(d.label for d in data),
                    enumeration_bound=bound, dim=n)
    factors, off = [], 0
    for d in data:
        factors.append((d, off))
        off += d.dim
    out.factors = factors
    return out
