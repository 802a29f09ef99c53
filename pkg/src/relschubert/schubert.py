"""Schubert calculus on flag varieties over the rationals.

Polynomials live in S(t*) written in the variables (alpha_1..alpha_r,
zeta_1..zeta_N): the simple roots followed by the central weights.  A
polynomial is a dict mapping exponent tuples to Fractions.  Schubert
representatives come from the top class prod(positive roots)/|W| by
divided differences; Schubert expansions are read off by divided
differences as well.
"""
import json
import os
import threading
import warnings
from fractions import Fraction

from .linalg import frac
from .rootdata import RootDatum, build_root_datum

CACHE_FORMAT_VERSION = 1


# -- sparse polynomials ---------------------------------------------------
class PolynomialRep:
    """A sparse polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = frac(c)
        return cls(n, terms)

    def __add__(self, other):
        return PolynomialRep(self.nvars, p_add(self.terms, other.terms))

    def __sub__(self, other):
        return PolynomialRep(self.nvars, p_add(self.terms, other.terms, -1))

    def __mul__(self, other):
        if isinstance(other, PolynomialRep):
            return PolynomialRep(self.nvars, p_mul(self.terms, other.terms))
        return PolynomialRep(self.nvars, p_scale(self.terms, frac(other)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PolynomialRep) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted(set(sum(e) for e in self.terms))

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join("x%d^%d" % (i + 1, k) if k > 1 else "x%d" % (i + 1) for i, k in enumerate(e) if k)
            parts.append("%s%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)


def p_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def p_scale(a, c):
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def p_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def p_subst(p, images, nout):
    """Substitute variable j by the polynomial dict images[j] (None = unchanged is not allowed)."""
    one = {(0,) * nout: Fraction(1)}
    powers = [[one] for _ in images]
    out = {}
    for e, c in p.items():
        term = {(0,) * nout: c}
        for j, k in enumerate(e):
            if k:
                pw = powers[j]
                while len(pw) <= k:
                    pw.append(p_mul(pw[-1], images[j]))
                term = p_mul(term, pw[k])
        out = p_add(out, term)
    return out


def p_div_var(p, i):
    out = {}
    for e, c in p.items():
        if c == 0:
            continue
        if e[i] == 0:
            raise ArithmeticError("divided difference is not an exact quotient")
        e2 = list(e)
        e2[i] -= 1
        out[tuple(e2)] = c
    return out


def p_homogeneous_parts(p):
    parts = {}
    for e, c in p.items():
        parts.setdefault(sum(e), {})[e] = c
    return sorted(parts.items())


def _linear(n, coeffs):
    return PolynomialRep.linear(list(coeffs) + [0] * (n - len(coeffs))).terms


def _reflection_images(cartan, i, nvars):
    """Images of the variables under s_i: x_j -> x_j - A_ji x_i."""
    imgs = []
    for j in range(nvars):
        c = [0] * nvars
        c[j] = 1
        if j < len(cartan):
            c[i] -= cartan[j][i]
        imgs.append(_linear(nvars, c))
    return imgs


def _dd(cartan, i, p, nvars, cache):
    imgs = cache.get(i)
    if imgs is None:
        imgs = cache[i] = _reflection_images(cartan, i, nvars)
    return p_div_var(p_add(p, p_subst(p, imgs, nvars), -1), i)


# -- cohomology classes ----------------------------------------------------
class CohomologyClass:
    """A rational combination of Schubert classes sigma_w."""

    def __init__(self, datum, coefficients=None):
        self.datum = datum
        self.coefficients = {w: Fraction(c) for w, c in (coefficients or {}).items() if c != 0}

    def coefficient(self, w):
        return self.coefficients.get(w, Fraction(0))

    def __add__(self, other):
        out = dict(self.coefficients)
        for w, c in other.coefficients.items():
            out[w] = out.get(w, 0) + c
        return CohomologyClass(self.datum, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return CohomologyClass(self.datum, {w: v * frac(c) for w, v in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, CohomologyClass) and self.coefficients == other.coefficients

    def __bool__(self):
        return bool(self.coefficients)

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def degrees(self):
        return sorted(set(2 * w.length for w in self.coefficients))

    def restrict_to(self, elements):
        keep = set(elements)
        return CohomologyClass(self.datum, {w: c for w, c in self.coefficients.items() if w in keep})

    def to_json(self):
        return [[list(w.word), [c.numerator, c.denominator]] for w, c in self.items()]

    def __repr__(self):
        if not self.coefficients:
            return "0"
        return " + ".join("%s*sigma[%s]" % (c, "".join("s%d" % i for i in w.word) or "1") for w, c in self.items())


def schubert_class(d, w, c=1):
    return CohomologyClass(d, {w: c})


# -- the calculus ----------------------------------------------------------
class SchubertCalculus:
    """Per-datum Schubert data with a thread-safe memo of BGG representatives."""

    def __init__(self, d, calibrate_limit=200):
        self.d = d
        self.n = d.dim
        self._lock = threading.RLock()
        self._dd_cache = {}
        self._local = {}
        self._local_data = {}
        self.calibrate_limit = calibrate_limit
        self.comp_index = {}
        for c, (_, idx) in enumerate(d.components):
            for k, i in enumerate(idx):
                self.comp_index[i] = (c, k)

    # polynomial operations in the global variables
    def D(self, i, p):
        """Divided difference D_{alpha_i} (1-based i) on a polynomial dict."""
        return _dd(self.d.cartan, i - 1, p, self.n, self._dd_cache)

    def weyl_images(self, w):
        """Images of the variables under the action of w on S(t*)."""
        d = self.d
        imgs = []
        for j in range(self.n):
            if j < d.rank:
                imgs.append(_linear(self.n, d.root_coords(w.act(d.simple_roots[j]))))
            else:
                c = [0] * self.n
                c[j] = 1
                imgs.append(_linear(self.n, c))
        return imgs

    def act_poly(self, w, p):
        return p_subst(p, self.weyl_images(w), self.n)

    # local BGG tables
    def _local_datum(self, c):
        if c not in self._local_data:
            idx = self.d.components[c][1]
            cart = [[self.d.cartan[i][j] for j in idx] for i in idx]
            self._local_data[c] = build_root_datum(cart)
        return self._local_data[c]

    def local_table(self, c):
        with self._lock:
            if c in self._local:
                return self._local[c]
            L = self._local_datum(c)
            r = L.rank
            top = {(0,) * r: Fraction(1)}
            for beta in L.positive_roots_rootcoords:
                top = p_mul(top, _linear(r, beta))
            top = p_scale(top, Fraction(1, L.order()))
            w0 = L.longest()
            table = {w0: top}
            queue = [w0]
            cache = {}
            while queue:
                nxt = []
                for w in queue:
                    for i in range(r):
                        if L.root_sign(w.act(L.simple_roots[i])) < 0:
                            ws = w.right_mul_simple(i)
                            if ws not in table:
                                table[ws] = _dd(L.cartan, i, table[w], r, cache)
                                nxt.append(ws)
                queue = nxt
            if len(table) <= self.calibrate_limit:
                for w, p in table.items():
                    got = _extract_local(L, p, cache)
                    if got != {w: Fraction(1)}:
                        raise AssertionError("BGG calibration failed for %r in %s" % (w, L.label))
            self._local[c] = table
            return table

    def split(self, w):
        """Local words of w per simple component."""
        words = [[] for _ in self.d.components]
        for letter in w.word:
            c, k = self.comp_index[letter - 1]
            words[c].append(k + 1)
        return words

    def local_rep(self, c, localword):
        L = self._local_datum(c)
        return self.local_table(c)[L.element(localword)]

    def embed_local(self, c, p):
        idx = self.d.components[c][1]
        out = {}
        for e, v in p.items():
            g = [0] * self.n
            for k, x in zip(idx, e):
                g[k] = x
            out[tuple(g)] = v
        return out

    def rep(self, w):
        """BGG representative P_w as a polynomial dict in the global variables."""
        p = {(0,) * self.n: Fraction(1)}
        for c, word in enumerate(self.split(w)):
            if word:
                p = p_mul(p, self.embed_local(c, self.local_rep(c, word)))
        return p

    def rep_class(self, x):
        p = {}
        for w, c in x.coefficients.items():
            p = p_add(p, p_scale(self.rep(w), c))
        return p

    def extract(self, p):
        """Schubert expansion of the class of a polynomial dict."""
        d = self.d
        out = {}
        for deg, q in p_homogeneous_parts(p):
            frontier = {d.identity(): q}
            for _ in range(deg):
                new = {}
                for v, poly in frontier.items():
                    for i in range(d.rank):
                        if d.root_sign(v.act(d.simple_roots[i])) > 0:
                            vs = v.right_mul_simple(i)
                            if vs in new:
                                continue
                            new[vs] = self.D(i + 1, poly)
                frontier = {v: pl for v, pl in new.items() if pl}
                if not frontier:
                    break
            for v, poly in frontier.items():
                c = poly.get((0,) * self.n, 0)
                if c:
                    u = v.inverse()
                    out[u] = out.get(u, 0) + c
        return CohomologyClass(d, out)

    def export_tables(self):
        """JSON-ready map: component -> word -> list of (exponents, num, den)."""
        out = {}
        for c in range(len(self.d.components)):
            table = self.local_table(c)
            out[str(c)] = {"".join(str(i) for i in w.word) or "e":
                           [[list(e), v.numerator, v.denominator] for e, v in sorted(p.items())]
                           for w, p in sorted(table.items(), key=lambda kv: (kv[0].length, kv[0].word))}
        return out

    def save_cache(self, directory):
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, "bgg-%s.json" % self.d.fingerprint())
        payload = {"format_version": CACHE_FORMAT_VERSION, "fingerprint": self.d.fingerprint(),
                   "label": self.d.label, "tables": self.export_tables()}
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
        return path

    def load_cache(self, directory):
        """Load tables if the cache matches this datum; return True on success."""
        path = os.path.join(directory, "bgg-%s.json" % self.d.fingerprint())
        if not os.path.exists(path):
            return False
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except (OSError, ValueError):
            return False
        if payload.get("format_version") != CACHE_FORMAT_VERSION or payload.get("fingerprint") != self.d.fingerprint():
            return False
        with self._lock:
            for c, table in payload["tables"].items():
                c = int(c)
                L = self._local_datum(c)
                loaded = {}
                for word, terms in table.items():
                    w = L.element([] if word == "e" else [int(ch) for ch in word])
                    loaded[w] = {tuple(e): Fraction(a, b) for e, a, b in terms}
                self._local[c] = loaded
        return True


def _extract_local(L, p, cache):
    out = {}
    r = L.rank
    for deg, q in p_homogeneous_parts(p):
        frontier = {L.identity(): q}
        for _ in range(deg):
            new = {}
            for v, poly in frontier.items():
                for i in range(r):
                    if L.root_sign(v.act(L.simple_roots[i])) > 0:
                        vs = v.right_mul_simple(i)
                        if vs not in new:
                            new[vs] = _dd(L.cartan, i, poly, r, cache)
            frontier = {v: pl for v, pl in new.items() if pl}
        for v, poly in frontier.items():
            c = poly.get((0,) * r, 0)
            if c:
                out[v.inverse()] = c
    return out


_REGISTRY = {}
_REGISTRY_LOCK = threading.Lock()


def calculus(d):
    """Shared SchubertCalculus instance for a datum."""
    with _REGISTRY_LOCK:
        sc = _REGISTRY.get(id(d))
        if sc is None or sc.d is not d:
            sc = SchubertCalculus(d)
            _REGISTRY[id(d)] = sc
        return sc


# -- functional API ---------------------------------------------------------
def _poly(d, p):
    if isinstance(p, PolynomialRep):
        return p.terms
    return p


def divided_difference(d, i, p):
    """D_i p = (p - s_i p) / alpha_i for 1-based i."""
    res = calculus(d).D(i, _poly(d, p))
    return PolynomialRep(d.dim, res)


def weight_polynomial(d, lam):
    """The linear polynomial of a weight in the (alpha, zeta) variables."""
    return PolynomialRep.linear(d.root_coords(lam))


def bgg_representative(d, w):
    return PolynomialRep(d.dim, calculus(d).rep(w))


def extract_class(d, p):
    return calculus(d).extract(_poly(d, p))


def class_representative(d, x):
    return PolynomialRep(d.dim, calculus(d).rep_class(x))


def class_product(d, x, y):
    sc = calculus(d)
    return sc.extract(p_mul(sc.rep_class(x), sc.rep_class(y)))


def theta(d, lam):
    """Theta(lam) = sum_i <lam, alpha_i^vee> sigma_{s_i}."""
    coeffs = {}
    for i in range(d.rank):
        c = sum(frac(a) * b for a, b in zip(lam, d.simple_coroots[i]))
        if c:
            coeffs[d.s(i + 1)] = c
    return CohomologyClass(d, coeffs)


def chevalley_mul(d, lam, x):
    """Theta(lam) * x via the Chevalley formula."""
    out = {}
    for w, c in x.coefficients.items():
        lw = w.length
        for beta, cob in zip(d.positive_roots, d.positive_coroots):
            pairing = sum(frac(a) * b for a, b in zip(lam, cob))
            if not pairing:
                continue
            sb = w * _reflection(d, beta, cob)
            if sb.length == lw + 1:
                out[sb] = out.get(sb, 0) + c * pairing
    return CohomologyClass(d, out)


def _reflection(d, beta, coroot):
    from .rootdata import WeylElement
    return WeylElement(d, RootDatum._reflection_matrix(beta, coroot))


def weyl_action_coh(d, w, x):
    sc = calculus(d)
    return sc.extract(sc.act_poly(w, sc.rep_class(x)))


def phi_star(E, x, v=None):
    """Pullback along the embedding of the class v.x (v defaults to the identity)."""
    sc = calculus(E.target)
    p = sc.rep_class(x)
    if v is not None:
        p = sc.act_poly(v, p)
    src = calculus(E.source)
    return src.extract(p_subst(p, E.restriction_images(), E.source.dim))


def check_integrality(x, context=""):
    bad = [c for c in x.coefficients.values() if c.denominator != 1]
    if bad:
        warnings.warn("non-integral Schubert coefficient %s %s" % (bad[0], context))
    return not bad
