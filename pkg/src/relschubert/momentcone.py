"""Inequality generators for moment cones and moment polytopes.

Variables are the fundamental coordinates of (lam~, lam): first the source
weight lam~, then the target weight lam.  Two conventions are produced:

* cone form: (lam~, lam) lies in the moment cone of T*K, equivalently
  lam~ lies in the moment polytope of the orbit through -w0 lam;
* polytope form: lam~ lies in the moment polytope of the orbit through lam.

The forms differ by the substitution lam~ -> -w~0 lam~.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator

from .embedding import EmbeddingData, make_compatible
from .errors import ConfigError, ResourceError
from .linalg import dot, frac
from .polyhedra import InequalitySystem, RationalCone, Row, monoid_member, prune_redundant
from .schubert import check_integrality, phi_star, schubert_class
from .serialize import parse_rational


@dataclass
class MomentProblem:
    embedding: EmbeddingData
    mode: str = "cone"
    lam: tuple = None

    def __post_init__(self):
        if self.mode not in ("cone", "polytope", "invariant", "scalar"):
            raise ConfigError("unknown mode %r" % self.mode)
        if self.lam is not None:
            t = self.embedding.target
            if not t.is_dominant(self.lam):
                raise ConfigError("lambda is not dominant")


def variable_names(E):
    s, t = E.source, E.target
    names = ["xt%d" % (i + 1) for i in range(s.rank)] + ["zt%d" % (k + 1) for k in range(s.central_rank)]
    names += ["x%d" % (i + 1) for i in range(t.rank)] + ["z%d" % (k + 1) for k in range(t.central_rank)]
    return names


def _ensure(E):
    return E if E.chamber_adjusted else make_compatible(E)


def _covector(E, src_xi, tgt_xi, src_sign=1, tgt_sign=1):
    a = E.source.fundamental_covector(src_xi) if src_xi is not None else (0,) * E.source.dim
    b = E.target.fundamental_covector(tgt_xi) if tgt_xi is not None else (0,) * E.target.dim
    return tuple(src_sign * frac(x) for x in a) + tuple(tgt_sign * frac(x) for x in b)


def _chamber_rows(E, source=True, target=True):
    s, t = E.source, E.target
    n = s.dim + t.dim
    rows = []
    if source:
        for i in range(s.rank):
            c = [0] * n
            c[i] = 1
            rows.append(Row(tuple(c), 0, "ge", {"tag": "chamber"}))
    if target:
        for i in range(t.rank):
            c = [0] * n
            c[s.dim + i] = 1
            rows.append(Row(tuple(c), 0, "ge", {"tag": "chamber"}))
    return rows


def _word(w):
    return list(w.word)


def _coroot_coords(E, xi):
    return [[frac(x).numerator, frac(x).denominator] for x in E.source_coroot_coords(xi)]


def restricted_class(E, v, u):
    """phi*(v . sigma_u) as a source class (memoized on the embedding)."""
    def build():
        x = phi_star(E, schubert_class(E.target, u), v=v)
        check_integrality(x, "in the pullback of sigma_%s" % (u.word,))
        return x
    return E._cached(("phi", v.mat, u.mat), build)


def _check_budget(E):
    s, t = E.source, E.target
    total = s.order() * t.order() * max(1, len(E.cubicles()))
    bound = max(s.enumeration_bound, t.enumeration_bound)
    if t.order() > t.enumeration_bound or total > bound:
        raise ResourceError("|W~|*|W|*|W^rel| = %d exceeds the enumeration budget; use scalar_inequalities"
                            % total)


def nonvanishing_data(E):
    """All (v, u, u~, coefficient) with sigma~_{u~} in phi*(v sigma_u), l(u) <= l(w~0)."""
    E = _ensure(E)

    def build():
        _check_budget(E)
        top = E.source.longest().length
        out = []
        for cub in E.cubicles():
            v = cub.v
            for u in E.target.elements():
                if u.length > top:
                    break
                cls = restricted_class(E, v, u)
                for ut, c in cls.items():
                    out.append((cub, u, ut, c))
        return out
    return E._cached("nonvanishing", build)


def _center_rows(E, cub, polytope):
    rows = []
    for l in cub.lineality:
        fl = E.fpush(l)
        if polytope:
            coeffs = _covector(E, l, fl, src_sign=-1)
        else:
            coeffs = _covector(E, l, fl)
        rows.append(Row(coeffs, 0, "eq", {"tag": "center-equality", "direction": _coroot_coords(E, l)}))
    return rows


def cone_inequalities(E, prune=False):
    """Rows <lam~, w~ chi> + <lam, w f_* chi> >= 0 for qualifying triples (cone form)."""
    E = _ensure(E)
    w0t = E.source.longest()
    rows = _chamber_rows(E)
    seen_cubicles = set()
    for cub, u, ut, c in nonvanishing_data(E):
        v = cub.v
        wt = w0t * ut
        w = u * v.inverse()
        for chi in cub.rays:
            coeffs = _covector(E, wt.act_coweight(chi), w.act_coweight(E.fpush(chi)))
            rows.append(Row(coeffs, 0, "ge", {"tag": "cone", "wtilde": _word(wt), "w": _word(w), "v": _word(v),
                                              "ray": _coroot_coords(E, chi), "coefficient": [c.numerator, c.denominator]}))
        if v not in seen_cubicles:
            seen_cubicles.add(v)
            rows.extend(_center_rows(E, cub, polytope=False))
    s = InequalitySystem(variable_names(E), rows, {"mode": "cone", "form": "cone"})
    return prune_redundant(s) if prune else s


def _groups(E):
    w0t = E.source.longest()
    groups = {}
    for cub, u, ut, c in nonvanishing_data(E):
        key = (w0t * ut, u * cub.v.inverse())
        g = groups.setdefault(key, {"v": [], "rays": [], "lineality": cub.lineality})
        if cub.v not in g["v"]:
            g["v"].append(cub.v)
            g["rays"].extend(cub.rays)
    for g in groups.values():
        cone = RationalCone.from_generators(g["rays"], lineality=g["lineality"], dim=E.source.dim)
        g["extreme"] = cone.rays
    return groups


def grouped_cones(E):
    """Diagnostic regrouping of the cone rows by (w~, w).

    For each pair, C_{w~,w} is the intersection of the cones dual to the
    contributing cubicles, i.e. the dual of the cone spanned by all their
    rays.  Each (w~ word, w word) key maps to a dict with keys "v", "rows"
    and "extreme_rays".
    """
    E = _ensure(E)
    out = {}
    for (wt, w), g in _groups(E).items():
        out[(tuple(wt.word), tuple(w.word))] = {
            "v": [_word(v) for v in g["v"]], "rows": len(g["rays"]),
            "extreme_rays": [_coroot_coords(E, r) for r in g["extreme"]]}
    return dict(sorted(out.items()))


def grouped_system(E):
    """Cone-form system rebuilt from the merged C_{w~,w}; equivalent to cone_inequalities."""
    E = _ensure(E)
    rows = _chamber_rows(E)
    for (wt, w), g in _groups(E).items():
        for chi in g["extreme"]:
            coeffs = _covector(E, wt.act_coweight(chi), w.act_coweight(E.fpush(chi)))
            rows.append(Row(coeffs, 0, "ge", {"tag": "grouped", "wtilde": _word(wt), "w": _word(w),
                                              "ray": _coroot_coords(E, chi)}))
    for cub in E.cubicles():
        rows.extend(_center_rows(E, cub, polytope=False))
    return InequalitySystem(variable_names(E), rows, {"mode": "cone", "form": "cone"})


def polytope_system(E, prune=False):
    """Homogeneous rows <lam, w f_* chi> - <lam~, w~ chi> >= 0 (polytope form in lam~ and lam)."""
    E = _ensure(E)
    rows = _chamber_rows(E)
    seen_cubicles = set()
    for cub, u, ut, c in nonvanishing_data(E):
        v = cub.v
        w = u * v.inverse()
        for chi in cub.rays:
            coeffs = _covector(E, ut.act_coweight(chi), w.act_coweight(E.fpush(chi)), src_sign=-1)
            rows.append(Row(coeffs, 0, "ge", {"tag": "polytope", "wtilde": _word(ut), "w": _word(w), "v": _word(v),
                                              "ray": _coroot_coords(E, chi), "coefficient": [c.numerator, c.denominator]}))
        if v not in seen_cubicles:
            seen_cubicles.add(v)
            rows.extend(_center_rows(E, cub, polytope=True))
    s = InequalitySystem(variable_names(E), rows, {"mode": "polytope", "form": "polytope"})
    return prune_redundant(s) if prune else s


def polytope_inequalities(E, lam, prune=False):
    """The moment polytope of the orbit through lam, as a system in lam~ only."""
    E = _ensure(E)
    lam = tuple(parse_rational(x) for x in lam)
    if not E.target.is_dominant(lam):
        raise ConfigError("lambda is not dominant")
    full = polytope_system(E)
    fc = E.target.fundamental_coords(lam)
    off = E.source.dim
    sliced = full.restrict({off + i: fc[i] for i in range(E.target.dim)})
    sliced.meta.update({"mode": "polytope", "lambda": [[frac(x).numerator, frac(x).denominator] for x in fc]})
    return prune_redundant(sliced) if prune else sliced


def invariant_inequalities(E, prune=False):
    """Rows <lam, w f_* chi> >= 0 for pairs (w, v) with phi*(v sigma_{wv}) != 0."""
    E = _ensure(E)
    t = E.target
    n = E.source.dim
    rows = [Row(r.coeffs[n:], 0, "ge", r.provenance) for r in _chamber_rows(E, source=False)]
    done = set()
    for cub, u, ut, c in nonvanishing_data(E):
        v = cub.v
        if (v, u) in done:
            continue
        done.add((v, u))
        w = u * v.inverse()
        for chi in cub.rays:
            coeffs = tuple(frac(x) for x in t.fundamental_covector(w.act_coweight(E.fpush(chi))))
            rows.append(Row(coeffs, 0, "ge", {"tag": "invariant", "w": _word(w), "v": _word(v),
                                              "ray": _coroot_coords(E, chi)}))
    for cub in E.cubicles():
        for l in cub.lineality:
            coeffs = tuple(frac(x) for x in t.fundamental_covector(E.fpush(l)))
            rows.append(Row(coeffs, 0, "eq", {"tag": "center-equality", "direction": _coroot_coords(E, l)}))
    s = InequalitySystem(variable_names(E)[n:], rows, {"mode": "invariant"})
    return prune_redundant(s) if prune else s


def scalar_rays(E):
    """Distinct cubicle rays chi_k, each with the first cubicle (by l(v)) containing it."""
    E = _ensure(E)
    out = []
    seen = set()
    for cub in E.cubicles():
        for chi in cub.rays:
            if chi in seen:
                continue
            seen.add(chi)
            first = next(c for c in E.cubicles() if c.contains(chi))
            out.append((chi, first))
    return out


def scalar_pairs(E, chi, cub):
    """Pairs (u~, u) in W~^k x W^k with sigma~_{u~} in phi*(v_k sigma_u)."""
    s, t = E.source, E.target
    v = cub.v
    jt = [i + 1 for i in range(s.rank) if dot(s.simple_roots[i], chi) == 0]
    target_pt = v.inverse().act_coweight(E.fpush(chi))
    jw = [i + 1 for i in range(t.rank) if dot(t.simple_roots[i], target_pt) == 0]
    reps_t = set(s.coset_reps(jt))
    top = s.longest().length
    pairs = []
    for u in t.coset_reps(jw):
        if u.length > top:
            continue
        cls = restricted_class(E, v, u)
        for ut, c in cls.items():
            if ut in reps_t:
                pairs.append((ut, u, c))
    return pairs, target_pt


def scalar_inequalities(E, prune=False):
    """One row per ray chi_k and qualifying pair (cone form)."""
    E = _ensure(E)
    s, t = E.source, E.target
    w0t = s.longest()
    rows = _chamber_rows(E)
    for chi, cub in scalar_rays(E):
        pairs, target_pt = scalar_pairs(E, chi, cub)
        for ut, u, c in pairs:
            coeffs = _covector(E, (w0t * ut).act_coweight(chi), u.act_coweight(target_pt))
            rows.append(Row(coeffs, 0, "ge", {"tag": "scalar", "utilde": _word(ut), "u": _word(u), "v": _word(cub.v),
                                              "ray": _coroot_coords(E, chi),
                                              "coefficient": [c.numerator, c.denominator]}))
    done = set()
    for cub in E.cubicles():
        for l in cub.lineality:
            if l in done:
                continue
            done.add(l)
            rows.append(Row(_covector(E, l, E.fpush(l)), 0, "eq", {"tag": "center-equality",
                                                                   "direction": _coroot_coords(E, l)}))
    sys_ = InequalitySystem(variable_names(E), rows, {"mode": "scalar", "form": "cone"})
    return prune_redundant(sys_) if prune else sys_


# -- involutions -------------------------------------------------------------
def _involution_matrix(d):
    """Matrix of lam -> -w0 lam in fundamental coordinates."""
    w0 = d.longest()
    n = d.dim
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        lam = d.from_fundamental(e)
        cols.append(d.fundamental_coords(tuple(-x for x in w0.act(lam))))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _substitute(system, blocks):
    """Rows r(x) -> r(D x) for a block-diagonal D given as [(offset, matrix)]."""
    rows = []
    for r in system.rows:
        c = list(r.coeffs)
        for off, m in blocks:
            k = len(m)
            part = [sum(frac(r.coeffs[off + i]) * m[i][j] for i in range(k)) for j in range(k)]
            c[off:off + k] = part
        rows.append(Row(tuple(c), r.const, r.kind, r.provenance))
    return rows


def to_polytope_form(E, system):
    """Convert a cone-form system by the substitution lam~ -> -w~0 lam~."""
    E = _ensure(E)
    w0t = E.source.longest()
    rows = []
    for r in _substitute(system, [(0, _involution_matrix(E.source))]):
        prov = dict(r.provenance or {})
        if "wtilde" in prov:
            prov["wtilde"] = _word(w0t * E.source.element(prov["wtilde"]))
        rows.append(Row(r.coeffs, r.const, r.kind, prov))
    meta = dict(system.meta)
    meta["form"] = "polytope"
    return InequalitySystem(system.variables, rows, meta)


def dual_triple(E, wt, w, v):
    """(w~*, ((w^{-1})*)^{-1}, v*) for the duality involution."""
    E = _ensure(E)
    wts = E.dual_element(wt, kind="source")
    ws = E.dual_element(w.inverse(), kind="target").inverse()
    vs = E.dual_element(v, kind="target")
    return wts, ws, vs


def apply_duality(E, system):
    """Image of a cone-form system under (lam~, lam) -> (-w~0 lam~, -w0 lam)."""
    E = _ensure(E)
    s, t = E.source, E.target
    rows = []
    for r in _substitute(system, [(0, _involution_matrix(s)), (s.dim, _involution_matrix(t))]):
        prov = dict(r.provenance or {})
        if {"wtilde", "w", "v"} <= set(prov):
            wt, w, v = dual_triple(E, s.element(prov["wtilde"]), t.element(prov["w"]), t.element(prov["v"]))
            prov.update({"wtilde": _word(wt), "w": _word(w), "v": _word(v)})
        rows.append(Row(r.coeffs, r.const, r.kind, prov))
    meta = dict(system.meta)
    meta["dualized"] = not meta.get("dualized", False)
    return InequalitySystem(system.variables, rows, meta)


# -- lattice condition -------------------------------------------------------
def lattice_necessary(E, lam_tilde, lam, bound=64):
    """Integral necessary condition lam~ in f*(w^{-1} lam - v C_Z) over qualifying triples.

    Uses the polytope convention: the question is whether V~_{lam~} can
    occur in V_lam.  Returns (status, details) with status yes/no/unknown.
    """
    E = _ensure(E)
    s, t = E.source, E.target
    lam_tilde = tuple(parse_rational(x) for x in lam_tilde)
    lam = tuple(parse_rational(x) for x in lam)
    status = "yes"
    details = []
    gens_cache = {}
    for cub, u, ut, c in nonvanishing_data(E):
        v = cub.v
        w = u * v.inverse()
        x = tuple(a - b for a, b in zip(E.fstar(w.inverse().act(lam)), ut.inverse().act(lam_tilde)))
        if v not in gens_cache:
            gens = []
            for b in t.positive_roots:
                g = E.fstar(v.act(b))
                if any(g):
                    gens.append(g)
            gens_cache[v] = gens
        gens = gens_cache[v]
        den = 1
        for vec in gens + [x]:
            for y in vec:
                den = den * frac(y).denominator // _gcd(den, frac(y).denominator)
        res, witness = monoid_member([tuple(int(frac(y) * den) for y in g) for g in gens],
                                     tuple(int(frac(y) * den) for y in x), bound)
        details.append({"wtilde": _word(ut), "w": _word(w), "v": _word(v), "status": res})
        if res == "no":
            return "no", details
        if res == "unknown":
            status = "unknown"
    return status, details


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- sl2 closed form -----------------------------------------------------------
def sl2_interval(E, lam):
    """Closed-form interval [lo, hi] for lam~ (as <lam~, alpha~^vee>) for an sl2-triple embedding."""
    t = E.target
    h = E.h
    lam = tuple(parse_rational(x) for x in lam)
    hi = dot(lam, h)
    fc = t.fundamental_coords(lam)
    terms = [E.labels[i] * fc[i] for i in range(t.rank) if E.labels[i] != 0]
    lo = max([Fraction(0)] + [-hi + x for x in terms])
    return Fraction(lo), Fraction(hi)


# -- estimator ---------------------------------------------------------------
def _validate_points(X, dim):
    if isinstance(X, np.ndarray):
        if X.dtype.kind == "f":
            raise TypeError("floating point input is not accepted; use integers or Fractions")
        X = X.tolist()
    X = [list(row) for row in X]
    out = []
    for row in X:
        if len(row) != dim:
            raise ValueError("expected points of dimension %d, got %d" % (dim, len(row)))
        vals = []
        for x in row:
            if isinstance(x, float):
                raise TypeError("floating point input is not accepted; use integers or Fractions")
            vals.append(parse_rational(x))
        out.append(tuple(vals))
    return out


class MomentConeEstimator(BaseEstimator):
    """Estimator front end: fit builds the inequality system of an embedding.

    mode: 'cone' (cone form), 'polytope' (homogeneous polytope form),
    'invariant' or 'scalar'.  Points are fundamental coordinates of
    (lam~, lam), or of lam alone in invariant mode.
    """

    def __init__(self, embedding=None, mode="cone", prune=False):
        self.embedding = embedding
        self.mode = mode
        self.prune = prune

    def fit(self, X=None, y=None):
        if not isinstance(self.embedding, EmbeddingData):
            raise ConfigError("embedding must be an EmbeddingData instance")
        if self.mode not in ("cone", "polytope", "invariant", "scalar"):
            raise ConfigError("unknown mode %r" % self.mode)
        E = _ensure(self.embedding)
        gen = {"cone": cone_inequalities, "polytope": polytope_system, "invariant": invariant_inequalities,
               "scalar": scalar_inequalities}[self.mode]
        self.embedding_ = E
        self.system_ = gen(E, prune=self.prune)
        self.n_features_in_ = self.system_.dim
        return self

    def _check_fitted(self):
        if not hasattr(self, "system_"):
            raise RuntimeError("estimator is not fitted; call fit first")

    def predict(self, X):
        """Membership (bool) of each point."""
        self._check_fitted()
        pts = _validate_points(X, self.system_.dim)
        return np.array([self.system_.contains(p) for p in pts], dtype=bool)

    def transform(self, X):
        """Row slacks of each point as an object array of Fractions."""
        self._check_fitted()
        pts = _validate_points(X, self.system_.dim)
        out = np.empty((len(pts), len(self.system_.rows)), dtype=object)
        for i, p in enumerate(pts):
            for j, v in enumerate(self.system_.slacks(p)):
                out[i, j] = Fraction(v)
        return out

    def decision_function(self, X):
        """Smallest slack over inequality rows (negative means outside)."""
        self._check_fitted()
        pts = _validate_points(X, self.system_.dim)
        ge = self.system_.inequality_rows()
        res = np.empty(len(pts), dtype=object)
        for i, p in enumerate(pts):
            res[i] = min((Fraction(r.value(p)) for r in ge), default=Fraction(0))
        return res


# -- plotting ----------------------------------------------------------------
def slice_svg(system, size=320, margin=24):
    """SVG drawing of a bounded 2-D slice (a polygon in fundamental coordinates)."""
    from .polyhedra import vertex_enumeration
    if system.dim != 2:
        raise ConfigError("SVG slices need a system in exactly two variables, got %d" % system.dim)
    pts = [tuple(Fraction(x) for x in p) for p in vertex_enumeration(system)]
    if not pts:
        raise ConfigError("the slice is empty")
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    import math
    pts.sort(key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    span = max([max(p[0] for p in pts), max(p[1] for p in pts), Fraction(1)])
    scale = (size - 2 * margin) / float(span)

    def xy(p):
        return margin + float(p[0]) * scale, size - margin - float(p[1]) * scale

    poly = " ".join("%.3f,%.3f" % xy(p) for p in pts)
    labels = "".join('<text x="%.3f" y="%.3f" font-size="10">(%s, %s)</text>' % (xy(p) + (p[0], p[1])) for p in pts)
    ox, oy = xy((0, 0))
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
            '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="gray"/>'
            '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="gray"/>'
            '<polygon points="%s" fill="#9ecae1" stroke="#08519c"/>%s'
            '<text x="%d" y="%d" font-size="11">%s</text><text x="4" y="%d" font-size="11">%s</text></svg>\n'
            % (size, size, ox, oy, size - margin / 2, oy, ox, oy, ox, margin / 2, poly, labels,
               size - margin, size - 4, system.variables[0], margin, system.variables[1]))
