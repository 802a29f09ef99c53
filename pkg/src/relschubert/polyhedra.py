"""Exact rational polyhedral kernel.

Linear programs are solved by a dense rational simplex method with Bland's
rule.  Cones are converted between generator and inequality descriptions by
the double description method.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import ResourceError
from .linalg import dot, frac, inverse, nullspace, primitive, rank, rref

DEFAULT_DIM_BOUND = 8


# -- linear programming ---------------------------------------------------
def nonneg_solution(a, b):
    """A vector y >= 0 with a y = b, or None.  Phase one of the simplex method."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    rows = []
    for i in range(m):
        row = [frac(x) for x in a[i]]
        rhs = frac(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(n) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            break  # unbounded direction cannot occur in phase one
        piv = rows[leave]
        inv = 1 / piv[enter]
        piv = [x * inv for x in piv]
        rows[leave] = piv
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], piv)]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, piv)]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    y = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            y[bv] = rows[i][width]
        elif rows[i][width] != 0:
            return None
    return tuple(y)


def feasible_point(ge_rows, ge_rhs, eq_rows=(), eq_rhs=()):
    """A rational x with A x >= b and E x = f, or None."""
    ge_rows = [list(r) for r in ge_rows]
    eq_rows = [list(r) for r in eq_rows]
    n = len((ge_rows or eq_rows)[0]) if (ge_rows or eq_rows) else 0
    m1 = len(ge_rows)
    a, b = [], []
    for i, r in enumerate(ge_rows):
        a.append([frac(x) for x in r] + [-frac(x) for x in r] + [Fraction(-int(i == k)) for k in range(m1)])
        b.append(ge_rhs[i])
    for i, r in enumerate(eq_rows):
        a.append([frac(x) for x in r] + [-frac(x) for x in r] + [Fraction(0)] * m1)
        b.append(eq_rhs[i])
    if not a:
        return tuple(Fraction(0) for _ in range(n))
    y = nonneg_solution(a, b)
    if y is None:
        return None
    return tuple(y[j] - y[n + j] for j in range(n))


def conic_combination(gens, target):
    """Nonnegative coefficients c with sum c_i gens_i = target, or None."""
    gens = [list(g) for g in gens]
    dim = len(target)
    if not gens:
        return () if all(x == 0 for x in target) else None
    a = [[frac(g[k]) for g in gens] for k in range(dim)]
    return nonneg_solution(a, list(target))


# -- double description ----------------------------------------------------
def _dd_pointed(a, k):
    """Extreme rays of the pointed cone {c in Q^k : a c >= 0}, a of rank k."""
    a = [[frac(x) for x in row] for row in a]
    order = []
    chosen = []
    for i, row in enumerate(a):
        if rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            order.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise ValueError("constraint matrix does not have full column rank")
    inv = inverse(chosen)
    rays = []
    for j in range(k):
        r = tuple(inv[i][j] for i in range(k))
        rays.append(r)
    zeros = [frozenset(order[t] for t in range(k) if t != j) for j in range(k)]
    processed = list(order)
    rest = [i for i in range(len(a)) if i not in set(order)]
    for i in rest:
        row = a[i]
        vals = [dot(row, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        new_rays = [rays[t] for t in pos + zer]
        new_zeros = [zeros[t] for t in pos] + [zeros[t] | {i} for t in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < k - 2:
                    continue
                adjacent = True
                for t in range(len(rays)):
                    if t != p and t != q and common <= zeros[t]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = tuple(vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q]))
                new_rays.append(r)
                new_zeros.append(common | {i})
        rays, zeros = new_rays, new_zeros
        processed.append(i)
    return rays


def h_to_v(rows, eqs=(), dim=None, bound=None):
    """(lineality basis, extreme rays) of {x : rows.x >= 0, eqs.x = 0}."""
    rows = [tuple(frac(x) for x in r) for r in rows]
    eqs = [tuple(frac(x) for x in r) for r in eqs]
    allrows = rows + eqs + [tuple(-x for x in r) for r in eqs]
    if dim is None:
        dim = len(allrows[0])
    if bound is not None and dim > bound:
        raise ResourceError("cone dimension %d exceeds the bound %d" % (dim, bound))
    if not allrows:
        lin = [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
        return lin, []
    lineality = nullspace([list(r) for r in allrows], dim)
    basis, _ = rref([list(r) for r in allrows])
    k = len(basis)
    if k == 0:
        return lineality, []
    reduced = [[dot(r, b) for b in basis] for r in allrows]
    cs = _dd_pointed(reduced, k)
    rays = []
    for c in cs:
        x = [Fraction(0)] * dim
        for cj, b in zip(c, basis):
            if cj:
                for t in range(dim):
                    x[t] += cj * b[t]
        rays.append(primitive(x))
    return [primitive(v) for v in lineality], sorted(set(rays))


def canonical_rows(rows):
    return sorted(set(primitive(r) for r in rows if any(x != 0 for x in r)))


class RationalCone:
    """A rational polyhedral cone given by generators or by inequalities.

    The other description is computed lazily by double description; both
    are returned in canonical (primitive, sorted) form.
    """

    def __init__(self, dim, generators=None, lineality=None, facets=None, equations=None,
                 dim_bound=DEFAULT_DIM_BOUND):
        self.dim = dim
        self.dim_bound = dim_bound
        self._vin = None if generators is None else (
            [tuple(frac(x) for x in g) for g in generators], [tuple(frac(x) for x in g) for g in (lineality or [])])
        self._hin = None if facets is None else (
            [tuple(frac(x) for x in f) for f in facets], [tuple(frac(x) for x in f) for f in (equations or [])])
        if self._vin is None and self._hin is None:
            raise ValueError("a cone needs generators or facets")
        self._v = None
        self._h = None

    @classmethod
    def from_generators(cls, gens, lineality=(), dim=None, **kw):
        gens = list(gens)
        if dim is None:
            dim = len((gens or list(lineality))[0])
        return cls(dim, generators=gens, lineality=list(lineality), **kw)

    @classmethod
    def from_inequalities(cls, rows, equations=(), dim=None, **kw):
        rows = list(rows)
        if dim is None:
            dim = len((rows or list(equations))[0])
        return cls(dim, facets=rows, equations=list(equations), **kw)

    def _vpair(self):
        if self._v is None:
            rows, eqs = self._hin if self._hin is not None else self._hpair()[::-1]
            lin, rays = h_to_v(rows, eqs, self.dim, self.dim_bound)
            self._v = (_canonical_span(lin), rays)
        return self._v

    def _hpair(self):
        if self._h is None:
            gens, lin = self._vin if self._vin is not None else self._vpair()[::-1]
            eqs, facets = h_to_v(gens, lin, self.dim, self.dim_bound)
            self._h = (_canonical_span(eqs), facets)
        return self._h

    @property
    def rays(self):
        """Extreme rays modulo the lineality space."""
        return self._vpair()[1]

    @property
    def lineality(self):
        return self._vpair()[0]

    @property
    def facets(self):
        return self._hpair()[1]

    @property
    def equations(self):
        return self._hpair()[0]

    def dual(self):
        """The dual cone {y : y.x >= 0 for all x in the cone}."""
        if self._vin is not None:
            gens, lin = self._vin
            return RationalCone(self.dim, facets=gens, equations=lin, dim_bound=self.dim_bound)
        rows, eqs = self._hin
        return RationalCone(self.dim, generators=rows, lineality=eqs, dim_bound=self.dim_bound)

    def contains(self, x):
        if self._hin is not None:
            rows, eqs = self._hin
            return all(dot(f, x) >= 0 for f in rows) and all(dot(e, x) == 0 for e in eqs)
        gens, lin = self._vin
        return conic_combination(list(gens) + list(lin) + [tuple(-v for v in l) for l in lin], x) is not None

    def canonical(self):
        """(rays, lineality) in canonical form; equal cones give equal output."""
        return tuple(self.rays), tuple(self.lineality)

    def __eq__(self, other):
        return isinstance(other, RationalCone) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return "RationalCone(dim=%d, rays=%r, lineality=%r)" % (self.dim, self.rays, self.lineality)


def _canonical_span(vectors):
    if not vectors:
        return []
    basis, _ = rref([list(v) for v in vectors])
    return [primitive(v) for v in basis]


def dualize(cone):
    return cone.dual()


# -- inequality systems ----------------------------------------------------
def make_primitive(coeffs, const=0):
    vec = primitive(list(coeffs) + [const])
    return tuple(vec[:-1]), vec[-1]


@dataclass(frozen=True)
class Row:
    """The relation coeffs . x + const >= 0 (kind 'ge') or == 0 (kind 'eq')."""
    coeffs: tuple
    const: int = 0
    kind: str = "ge"
    provenance: dict = field(default=None, compare=False, hash=False)

    def value(self, x):
        return dot(self.coeffs, x) + self.const

    def holds(self, x):
        v = self.value(x)
        return v == 0 if self.kind == "eq" else v >= 0

    def key(self):
        return (self.kind != "eq", self.coeffs, self.const)


def _tag(provenance):
    if not provenance:
        return ""
    return provenance.get("tag", "")


class InequalitySystem:
    """A list of rows over named variables, kept in canonical order."""

    def __init__(self, variables, rows=(), meta=None):
        self.variables = list(variables)
        self.meta = dict(meta or {})
        self.rows = []
        seen = {}
        for r in rows:
            coeffs, const = make_primitive(r.coeffs, r.const)
            if r.kind == "eq":
                # canonical sign: first nonzero entry positive
                nz = next((c for c in list(coeffs) + [const] if c != 0), 0)
                if nz < 0:
                    coeffs, const = tuple(-c for c in coeffs), -const
            if all(c == 0 for c in coeffs):
                if (r.kind == "ge" and const >= 0) or (r.kind == "eq" and const == 0):
                    continue
            row = Row(coeffs, const, r.kind, r.provenance)
            k = row.key()
            if k in seen:
                continue
            seen[k] = row
        self.rows = sorted(seen.values(), key=Row.key)

    @property
    def dim(self):
        return len(self.variables)

    def __len__(self):
        return len(self.rows)

    def contains(self, x):
        return all(r.holds(x) for r in self.rows)

    def violated(self, x):
        return [r for r in self.rows if not r.holds(x)]

    def tight(self, x):
        return [r for r in self.rows if r.value(x) == 0]

    def slacks(self, x):
        return [r.value(x) for r in self.rows]

    def inequality_rows(self):
        return [r for r in self.rows if r.kind == "ge"]

    def equality_rows(self):
        return [r for r in self.rows if r.kind == "eq"]

    def non_chamber_rows(self):
        return [r for r in self.rows if _tag(r.provenance) not in ("chamber", "center-equality")]

    def restrict(self, fixed):
        """Substitute values for some variables; fixed maps index -> value."""
        keep = [i for i in range(self.dim) if i not in fixed]
        rows = []
        for r in self.rows:
            const = frac(r.const) + sum(frac(r.coeffs[i]) * frac(v) for i, v in fixed.items())
            coeffs = [r.coeffs[i] for i in keep]
            den = 1
            for c in [const]:
                den = den * c.denominator // gcd(den, c.denominator)
            rows.append(Row(tuple(c * den for c in coeffs), int(const * den), r.kind, r.provenance))
        return InequalitySystem([self.variables[i] for i in keep], rows, dict(self.meta))

    def feasible_point(self):
        ge = self.inequality_rows()
        eq = self.equality_rows()
        return feasible_point([r.coeffs for r in ge], [-r.const for r in ge],
                              [r.coeffs for r in eq], [-r.const for r in eq])

    def to_json(self):
        rows = []
        for r in self.rows:
            prov = dict(r.provenance or {})
            rows.append({"coeffs_num": [int(c) for c in r.coeffs], "coeffs_den": [1] * len(r.coeffs),
                         "const": [int(r.const), 1], "relation": ">=" if r.kind == "ge" else "==",
                         "provenance": prov})
        return {"variables": self.variables, "rows": rows}

    def pretty(self):
        out = []
        for r in self.rows:
            terms = []
            for c, v in zip(r.coeffs, self.variables):
                if c:
                    terms.append("%+d*%s" % (c, v))
            s = " ".join(terms) or "0"
            if r.const:
                s += " %+d" % r.const
            out.append(s + (" >= 0" if r.kind == "ge" else " == 0"))
        return "\n".join(out)

    def __repr__(self):
        return "InequalitySystem(%d rows over %s)" % (len(self.rows), ",".join(self.variables))


def _homogenized_columns(rows):
    """Columns (coeffs, -const) for a Farkas test, equalities doubled."""
    cols, owners = [], []
    for idx, r in enumerate(rows):
        col = tuple(r.coeffs) + (-r.const,)
        cols.append(col)
        owners.append((idx, 1))
        if r.kind == "eq":
            cols.append(tuple(-x for x in col))
            owners.append((idx, -1))
    return cols, owners


def implication_certificate(rows, target, dim):
    """Nonnegative multipliers proving target (coeffs, const) follows from rows.

    Returns a list of (row index, multiplier) with the t >= 0 slack dropped,
    or None when no certificate exists.
    """
    cols, owners = _homogenized_columns(rows)
    cols.append(tuple([0] * dim) + (-1,))
    goal = tuple(target.coeffs) + (-target.const,)
    y = conic_combination(cols, goal)
    if y is None:
        return None
    cert = {}
    for (idx, sign), c in zip(owners, y):
        if c:
            cert[idx] = cert.get(idx, Fraction(0)) + sign * c
    return sorted(cert.items())


def verify_certificate(rows, target, cert):
    dim = len(target.coeffs)
    combo = [Fraction(0)] * dim
    const = Fraction(0)
    for idx, c in cert:
        r = rows[idx]
        if r.kind == "ge" and c < 0:
            return False
        for k in range(dim):
            combo[k] += c * r.coeffs[k]
        const += c * r.const
    return tuple(combo) == tuple(Fraction(x) for x in target.coeffs) and const <= target.const


def implied(rows, target, dim):
    if target.kind == "eq":
        pos = Row(target.coeffs, target.const, "ge")
        neg = Row(tuple(-c for c in target.coeffs), -target.const, "ge")
        return implication_certificate(rows, pos, dim) is not None and \
            implication_certificate(rows, neg, dim) is not None
    return implication_certificate(rows, target, dim) is not None


def prune_redundant(system, keep_tags=(), certificates=None):
    """Remove rows implied by the remaining ones, in canonical order.

    Every removal is backed by a Farkas certificate, which is re-verified.
    When `certificates` is a dict it receives row -> certificate entries.
    """
    kept = list(system.rows)
    i = 0
    while i < len(kept):
        r = kept[i]
        if r.kind == "eq" or _tag(r.provenance) in keep_tags:
            i += 1
            continue
        others = kept[:i] + kept[i + 1:]
        cert = implication_certificate(others, r, system.dim)
        if cert is not None:
            if not verify_certificate(others, r, cert):
                raise AssertionError("redundancy certificate failed to verify")
            if certificates is not None:
                certificates[r] = [(others[k], c) for k, c in cert]
            kept.pop(i)
        else:
            i += 1
    out = InequalitySystem(system.variables, kept, system.meta)
    out.meta["pruned"] = True
    return out


def systems_equivalent(a, b):
    """True iff the feasible sets of a and b coincide (exact Farkas tests both ways)."""
    if a.dim != b.dim:
        return False
    for src, dst in ((a, b), (b, a)):
        for r in src.rows:
            if not implied(dst.rows, r, dst.dim):
                return False
    return True


def separating_point(system, row, tries=12):
    """A point satisfying system but violating row, or None if none found."""
    ge = system.inequality_rows()
    eq = system.equality_rows()
    eps = Fraction(1)
    for _ in range(tries):
        rows = [r.coeffs for r in ge] + [tuple(-c for c in row.coeffs)]
        rhs = [-r.const for r in ge] + [row.const + eps]
        x = feasible_point(rows, rhs, [r.coeffs for r in eq], [-r.const for r in eq])
        if x is not None:
            return x
        eps /= 4
    return None


def vertex_enumeration(system):
    """Vertices of a bounded system; raises ValueError if the slice is unbounded."""
    ge = system.inequality_rows()
    eq = system.equality_rows()
    n = system.dim
    rows = [tuple(r.coeffs) + (r.const,) for r in ge] + [tuple([0] * n) + (1,)]
    eqs = [tuple(r.coeffs) + (r.const,) for r in eq]
    lin, rays = h_to_v(rows, eqs, n + 1)
    if lin:
        raise ValueError("unbounded slice: contains a line")
    pts = []
    for r in rays:
        if r[n] == 0:
            raise ValueError("unbounded slice: recession direction %r" % (r[:n],))
    for r in rays:
        t = Fraction(r[n])
        pts.append(tuple(Fraction(x) / t for x in r[:n]))
    return sorted(set(pts))


def convex_hull_vertices(points):
    """Vertices of the convex hull of finitely many rational points."""
    pts = sorted(set(tuple(frac(x) for x in p) for p in points))
    if len(pts) <= 1:
        return pts
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        # p is a vertex iff it is not a convex combination of the others
        a = [[q[k] for q in others] for k in range(len(p))] + [[Fraction(1)] * len(others)]
        if nonneg_solution(a, list(p) + [1]) is None:
            out.append(p)
    return out


# -- integer monoids -------------------------------------------------------
def monoid_member(generators, x, bound=64):
    """Decide whether x is a nonnegative integer combination of generators.

    Returns (status, witness) with status in {'yes', 'no', 'unknown'}; the
    witness maps generator index -> multiplicity when status is 'yes'.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    x = tuple(int(v) for v in x)
    if all(v == 0 for v in x):
        return "yes", {}
    gens_nz = [(i, g) for i, g in enumerate(gens) if any(g)]
    if not gens_nz:
        return "no", None
    if conic_combination([g for _, g in gens_nz], x) is None:
        return "no", None
    dim = len(x)
    phi = feasible_point([g for _, g in gens_nz], [1] * len(gens_nz))
    if phi is not None:
        den = 1
        for c in phi:
            den = den * c.denominator // gcd(den, c.denominator)
        phi = [int(c * den) for c in phi]
    cone_facets = None
    if dim <= DEFAULT_DIM_BOUND and phi is not None:
        try:
            cone_facets = RationalCone.from_generators([g for _, g in gens_nz], dim=dim)
            cone_facets = (cone_facets.facets, cone_facets.equations)
        except ResourceError:
            cone_facets = None
    failed = set()
    hit_bound = [False]

    def in_cone(r):
        if cone_facets is None:
            return True
        fs, es = cone_facets
        return all(dot(f, r) >= 0 for f in fs) and all(dot(e, r) == 0 for e in es)

    def search(r, start, depth):
        if all(v == 0 for v in r):
            return {}
        if (r, start) in failed:
            return None
        if depth >= bound:
            hit_bound[0] = True
            return None
        if phi is not None and dot(phi, r) <= 0:
            return None
        for k in range(start, len(gens_nz)):
            idx, g = gens_nz[k]
            nr = tuple(a - b for a, b in zip(r, g))
            if not in_cone(nr):
                continue
            res = search(nr, k, depth + 1)
            if res is not None:
                res = dict(res)
                res[idx] = res.get(idx, 0) + 1
                return res
        if not hit_bound[0]:
            failed.add((r, start))
        return None

    res = search(x, 0, 0)
    if res is not None:
        return "yes", dict(sorted(res.items()))
    return ("unknown" if hit_bound[0] else "no"), None
