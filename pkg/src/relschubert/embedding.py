"""Embeddings f of compact groups and the chamber combinatorics they induce
on the source, including cubicles and the lifting homomorphism j.

f is stored through the lattice matrix L of f*: t* -> t~*, so that
f*(lam) = L lam and f_*(xi~) = L^T xi~.
"""
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, ResourceError
from .linalg import dot, frac, matvec, nullspace, primitive, rank, transpose
from .polyhedra import feasible_point, h_to_v
from .rootdata import build_root_datum, product_datum, unitary_datum


def _primes():
    found = []
    k = 2
    while True:
        if all(k % p for p in found if p * p <= k):
            found.append(k)
            yield k
        k += 1


def generic_sequence(dim, count=64):
    """Deterministic coefficient vectors with pairwise distinct prime entries."""
    gen = _primes()
    primes = [next(gen) for _ in range(dim * count + dim)]
    for k in range(count):
        yield [Fraction(primes[k * dim + i]) + Fraction(1, primes[k * dim + dim - 1 - i] + 1) for i in range(dim)]


@dataclass(frozen=True)
class Cubicle:
    v: object
    interior_point: tuple
    rays: tuple
    lineality: tuple
    inequalities: tuple

    def contains(self, xi, strict=False):
        vals = [dot(r, xi) for r in self.inequalities]
        if strict:
            return all(x > 0 for x in vals)
        return all(x >= 0 for x in vals)


@dataclass(frozen=True)
class LiftJ:
    generators: tuple
    w0_image: object

    def __call__(self, w):
        out = None
        for i in w.word:
            g = self.generators[i - 1]
            out = g if out is None else out * g
        return out if out is not None else self.w0_image.datum.identity()


class EmbeddingData:
    """The map f between a source datum (K~) and a target datum (K)."""

    def __init__(self, source, target, lattice_matrix, chamber_adjusted=False, adjusting_element=None,
                 description=""):
        self.source = source
        self.target = target
        self.L = [tuple(int(x) if frac(x).denominator == 1 else frac(x) for x in row) for row in lattice_matrix]
        if len(self.L) != source.dim or any(len(r) != target.dim for r in self.L):
            raise ConfigError("f* matrix has shape %dx%d, expected %dx%d"
                              % (len(self.L), len(self.L[0]) if self.L else 0, source.dim, target.dim))
        self.LT = [tuple(r) for r in transpose(self.L)]
        if rank(self.L) < source.dim:
            ker = nullspace([list(r) for r in self.LT], source.dim)
            raise ConfigError("f_* is not injective; kernel vector %s" % (list(primitive(ker[0])),))
        self.chamber_adjusted = chamber_adjusted
        self.adjusting_element = adjusting_element
        self.description = description
        self._lock = threading.RLock()
        self._cache = {}

    # -- basic maps -----------------------------------------------------
    def fstar(self, lam):
        return tuple(_clean(x) for x in matvec(self.L, lam))

    def fpush(self, xi):
        return tuple(_clean(x) for x in matvec(self.LT, xi))

    @property
    def fstar_matrix(self):
        return [list(r) for r in self.L]

    @property
    def fpush_matrix(self):
        return [list(r) for r in self.LT]

    def fundamental_matrix(self):
        """Columns: fundamental coordinates of f*(pi_i) and f*(zeta_k)."""
        t = self.target
        cols = [self.source.fundamental_coords(self.fstar(b))
                for b in list(t.fundamental_weights) + list(t.central_weights)]
        return [list(r) for r in zip(*cols)]

    def restriction_images(self):
        """Images of the target polynomial variables as source linear polynomials."""
        from .schubert import _linear
        if "restr" not in self._cache:
            t, s = self.target, self.source
            basis = list(t.simple_roots) + list(t.central_weights)
            self._cache["restr"] = [_linear(s.dim, s.root_coords(self.fstar(b))) for b in basis]
        return self._cache["restr"]

    def _cached(self, key, fn):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    # -- projected roots and R-bar --------------------------------------
    def projected_roots(self):
        """Multiset {f*(beta) : beta in R_+} as a sorted list of (weight, multiplicity)."""
        def build():
            counts = {}
            for b in self.target.positive_roots:
                p = self.fstar(b)
                counts[p] = counts.get(p, 0) + 1
            return sorted(counts.items())
        return self._cached("proj", build)

    def bar_roots(self):
        return [b for b in self.target.positive_roots if all(x == 0 for x in self.fstar(b))]

    def bar_simple(self):
        """1-based indices of target simple roots with f* alpha = 0."""
        return [i + 1 for i, a in enumerate(self.target.simple_roots) if all(x == 0 for x in self.fstar(a))]

    def bar_weyl(self):
        return self._cached("wbar", lambda: self.target.subgroup(self.bar_simple()))

    def hyperplanes(self):
        """Distinct primitive nonzero projected roots up to sign, canonically sorted."""
        def build():
            out = set()
            for p, _ in self.projected_roots():
                if any(p):
                    q = primitive(p)
                    nz = next(x for x in q if x != 0)
                    out.add(q if nz > 0 else tuple(-x for x in q))
            return sorted(out)
        return self._cached("hyp", build)

    def is_generic(self, xi):
        return self.vanishing_root(xi) is None

    def vanishing_root(self, xi):
        for p, _ in self.projected_roots():
            if any(p) and dot(p, xi) == 0:
                return p
        return None

    def source_chamber_rows(self):
        return [tuple(a) for a in self.source.simple_roots]

    def generic_point(self, skip=0):
        """Deterministic generic point interior to the source chamber."""
        s = self.source
        basis = list(s.fundamental_coweights) + list(s.central_coweights)
        for k, coeffs in enumerate(generic_sequence(len(basis))):
            if k < skip:
                continue
            xi = [Fraction(0)] * s.dim
            for c, b in zip(coeffs, basis):
                for t in range(s.dim):
                    xi[t] += c * b[t]
            xi = tuple(_clean(x) for x in xi)
            if self.is_generic(xi):
                return xi
        raise ResourceError("no generic point found in the deterministic sequence")

    # -- chambers -----------------------------------------------------------
    def is_compatible(self):
        rows = self.source_chamber_rows()
        for a in self.target.simple_roots:
            p = self.fstar(a)
            if any(p):
                rows.append(p)
        return feasible_point(rows, [1] * len(rows)) is not None

    def with_target_conjugated(self, u):
        """The embedding u^{-1} f_*, i.e. f*' = f* o u."""
        L = [tuple(dot(row, col) for col in zip(*u.mat)) for row in self.L]
        return EmbeddingData(self.source, self.target, L, chamber_adjusted=True, adjusting_element=u,
                             description=self.description)

    def cubicles(self, dim_bound=8):
        """Cubicles of the subdivision of the source chamber, sorted by (l(v), v word)."""
        return self._cached("cubicles", lambda: _compute_cubicles(self, dim_bound))

    def relative_weyl_set(self):
        return [c.v for c in self.cubicles()]

    def cubicle_of(self, xi):
        """The cubicles (closed) containing a source coweight."""
        return [c for c in self.cubicles() if c.contains(xi)]

    def v_of_point(self, xi):
        _, u = self.target.to_dominant(self.fpush(xi), kind="coweight")
        return self.target.min_coset_rep(u, self.bar_simple(), side="left")

    def lift_j(self):
        return self._cached("j", lambda: _compute_j(self))

    def dual_element(self, w, kind="target"):
        if kind == "source":
            w0 = self.source.longest()
            return w0 * w * w0
        j = self.lift_j()
        return j.w0_image * w * self.target.longest()

    def report(self):
        """Diagnostic JSON describing the cubicle subdivision and the lift j."""
        from .serialize import rational_vector
        out = {
            "source": self.source.label,
            "target": self.target.label,
            "fstar_fundamental": [[_json_rat(x) for x in row] for row in self.fundamental_matrix()],
            "projected_roots": [{"weight": rational_vector(self.source.fundamental_coords(p)), "multiplicity": m}
                                for p, m in self.projected_roots()],
            "bar_simple": self.bar_simple(),
            "adjusting_element": list(self.adjusting_element.word) if self.adjusting_element is not None else [],
            "cubicles": [],
        }
        for c in self.cubicles():
            entry = {"v": list(c.v.word), "v_length": c.v.length,
                     "interior_point_coroot": rational_vector(self.source_coroot_coords(c.interior_point)),
                     "rays_coroot": [rational_vector(self.source_coroot_coords(r)) for r in c.rays]}
            if _is_type_a(self.target):
                entry["v_cycles"] = c.v.cycles()
            out["cubicles"].append(entry)
        out["relative_weyl_set"] = [list(c.v.word) for c in self.cubicles()]
        try:
            j = self.lift_j()
            out["j"] = {"generators": [list(g.word) for g in j.generators], "w0": list(j.w0_image.word)}
            if _is_type_a(self.target):
                out["j"]["generator_cycles"] = [g.cycles() for g in j.generators]
                out["j"]["w0_cycles"] = j.w0_image.cycles()
        except ResourceError as exc:
            out["j"] = {"error": str(exc)}
        return out

    def source_coroot_coords(self, xi):
        """Coordinates of a source coweight in the basis (alpha~_i^vee, central)."""
        s = self.source
        return tuple(_clean(dot(b, xi)) for b in list(s.fundamental_weights) + list(s.central_weights))

    def __deepcopy__(self, memo):
        # immutable apart from its memo caches, so copies can share the instance
        return self

    def __repr__(self):
        return "EmbeddingData(%s -> %s%s)" % (self.source.label, self.target.label,
                                              ", adjusted" if self.chamber_adjusted else "")


def _is_type_a(d):
    return len(d.components) == 1 and d.components[0][0] is not None and d.components[0][0][0] == "A"


def _json_rat(x):
    x = frac(x)
    return [x.numerator, x.denominator]


def _clean(x):
    x = frac(x)
    return int(x) if x.denominator == 1 else x


def _compute_cubicles(E, dim_bound):
    if not E.chamber_adjusted:
        raise ValueError("cubicles need a chamber-adjusted embedding; call make_compatible first")
    s = E.source
    if s.dim > dim_bound:
        raise ResourceError("source dimension %d exceeds the arrangement bound %d; use the scalar-ray workflow"
                            % (s.dim, dim_bound))
    base = E.source_chamber_rows()
    regions = [list(base)]
    for h in E.hyperplanes():
        new = []
        for reg in regions:
            for sign in (1, -1):
                row = tuple(sign * x for x in h)
                rows = reg + [row]
                if feasible_point(rows, [1] * len(rows)) is not None:
                    new.append(rows)
        regions = new
    out = []
    for reg in regions:
        lin, rays = h_to_v(reg, (), s.dim)
        # irredundant description of the region
        if rays:
            point = [Fraction(0)] * s.dim
            for r in rays:
                for t in range(s.dim):
                    point[t] += r[t]
        else:
            point = feasible_point(reg, [1] * len(reg))
        point = tuple(_clean(x) for x in point)
        if not E.is_generic(point) or not all(dot(r, point) > 0 for r in reg):
            point = tuple(_clean(x) for x in feasible_point(reg, [1] * len(reg)))
        v = E.v_of_point(point)
        facets = tuple(sorted(set(primitive(r) for r in reg)))
        out.append(Cubicle(v, point, tuple(rays), tuple(lin), facets))
    out.sort(key=lambda c: (c.v.length, c.v.word))
    vs = [c.v for c in out]
    if len(set(vs)) != len(vs):
        raise AssertionError("distinct cubicles received the same relative Weyl element")
    return out


def _compute_j(E):
    t, s = E.target, E.source
    if not E.chamber_adjusted:
        raise ValueError("j needs a chamber-adjusted embedding")
    sbar = E.bar_simple()
    sbar_roots = set(t.simple_roots[i - 1] for i in sbar)
    wbar = E.bar_weyl()
    for attempt in range(8):
        xi = E.generic_point(skip=attempt)
        fx = E.fpush(xi)
        _, u1 = t.to_dominant(fx, kind="coweight")
        u1inv = u1.inverse()
        gens = []
        ok = True
        for i in range(s.rank):
            sxi = s.s(i + 1).act_coweight(xi)
            _, u2 = t.to_dominant(E.fpush(sxi), kind="coweight")
            base = u2 * u1inv
            cands = []
            for wb in wbar:
                w = base * wb
                if set(w.act(a) for a in sbar_roots) == sbar_roots:
                    cands.append(w)
            if len(cands) != 1:
                ok = False
                break
            gens.append(cands[0])
        if ok:
            w0 = s.longest()
            img = t.identity()
            for letter in w0.word:
                img = img * gens[letter - 1]
            return LiftJ(tuple(gens), img)
    raise AssertionError("lifting homomorphism: no unique normalizer candidate at any test point")


# -- constructors ---------------------------------------------------------
def _lattice_from_fundamental(source, target, m):
    """Lattice matrix of f* from its matrix on fundamental bases."""
    m = [[frac(x) for x in row] for row in m]
    rows, cols = len(m), len(m[0]) if m else 0
    if rows not in (source.rank, source.dim):
        raise ConfigError("f* matrix must have %d rows (source rank) or %d rows" % (source.rank, source.dim))
    if cols not in (target.rank, target.dim):
        raise ConfigError("f* matrix must have %d columns (target rank) or %d columns" % (target.rank, target.dim))
    full = [[m[i][j] if i < rows and j < cols else Fraction(0) for j in range(target.dim)]
            for i in range(source.dim)]
    # column j: fundamental coordinates of f*(basis_j); basis_j -> lattice via target fundamental coords
    images = [source.from_fundamental([full[i][j] for i in range(source.dim)]) for j in range(target.dim)]
    # f*(lam) = sum_j fundcoord_j(lam) images[j]
    tf = target._fund_matrix
    L = [[sum(frac(images[j][a]) * tf[j][b] for j in range(target.dim)) for b in range(target.dim)]
         for a in range(source.dim)]
    return L


def embedding_from_matrix(source, target, matrix, description="matrix"):
    """Embedding from the matrix of f* relative to fundamental weight bases."""
    source = build_root_datum(source)
    target = build_root_datum(target)
    return EmbeddingData(source, target, _lattice_from_fundamental(source, target, matrix), description=description)


def embedding_from_lattice_matrix(source, target, L, description="lattice"):
    return EmbeddingData(build_root_datum(source), build_root_datum(target), L, description=description)


def weight_order_key(source, mu):
    """Order on weights: decreasing height, then decreasing simple-root coefficients."""
    c = source.root_coords(mu)[:source.rank]
    return (-sum(frac(x) for x in c),) + tuple(-frac(x) for x in c) + tuple(frac(x) for x in mu)


def embedding_from_weights(source, weights=None, highest_weight=None):
    """Plethysm embedding K~ -> U(N) given by a weight multiset.

    weights: list of source weights (repeated by multiplicity) or of
    (weight, multiplicity) pairs; alternatively highest_weight in
    fundamental coordinates, whose irreducible character is used.
    """
    source = build_root_datum(source)
    if highest_weight is not None:
        from .oracle import weight_multiplicities
        lam = source.from_fundamental(highest_weight)
        ch = weight_multiplicities(source, lam)
        weights = [(mu, m) for mu, m in ch.multiplicities.items()]
    if not weights:
        raise ConfigError("the weight multiset is empty")
    flat = []
    for item in weights:
        if isinstance(item, (list, tuple)) and len(item) == 2 and isinstance(item[0], (list, tuple)):
            mu, m = item
            flat.extend([tuple(_clean(x) for x in mu)] * int(m))
        else:
            flat.append(tuple(_clean(x) for x in item))
    flat.sort(key=lambda mu: weight_order_key(source, mu))
    n = len(flat)
    if rank([list(mu) for mu in flat]) < source.dim:
        raise ConfigError("the weights span a proper subspace; f would have a positive-dimensional kernel")
    target = unitary_datum(n)
    L = [[flat[j][a] for j in range(n)] for a in range(source.dim)]
    E = EmbeddingData(source, target, L, description="weights")
    E.weights = flat
    return E


def diagonal_embedding(K, m):
    K = build_root_datum(K)
    if m < 1:
        raise ConfigError("number of copies must be positive")
    target = K if m == 1 else product_datum([K] * m, label="x".join([K.label] * m))
    L = [[int(i == (j % K.dim)) for j in range(K.dim * m)] for i in range(K.dim)]
    E = EmbeddingData(K, target, L, description="diagonal %d" % m)
    if K.rank == 1 and K.dim == 1:
        # the diagonal SU(2) is principal in each factor: an sl2-triple with labels 2
        E.h = E.fpush(K.simple_coroots[0])
        E.labels = [2] * m
    return E


def identity_embedding(K):
    return diagonal_embedding(K, 1)


def torus_embedding(K):
    """The maximal torus T of K, embedded with t~ = t."""
    K = build_root_datum(K)
    T = build_root_datum("T%d" % K.dim)
    L = [[int(i == j) for j in range(K.dim)] for i in range(K.dim)]
    return EmbeddingData(T, K, L, description="maximal torus")


def sl2_embedding(K, labels):
    """SU(2) -> K with h~ = sum_i d_i alpha_i^* given by Dynkin labels d_i in {0,1,2}."""
    K = build_root_datum(K)
    labels = [int(x) for x in labels]
    if len(labels) != K.rank:
        raise ConfigError("expected %d Dynkin labels" % K.rank)
    for x in labels:
        if x not in (0, 1, 2):
            raise ConfigError("Dynkin labels of an sl2-triple must be 0, 1 or 2")
    h = [Fraction(0)] * K.dim
    for d, c in zip(labels, K.fundamental_coweights):
        for t in range(K.dim):
            h[t] += d * c[t]
    if all(x == 0 for x in h):
        raise ConfigError("h~ must be nonzero")
    E = EmbeddingData(build_root_datum("A1"), K, [h], description="sl2 %s" % labels)
    E.h = tuple(_clean(x) for x in h)
    E.labels = labels
    return E


def principal_sl2(K):
    K = build_root_datum(K)
    return sl2_embedding(K, [2] * K.rank)


def make_compatible(E, xi0=None):
    """Re-base the target so that the chambers are compatible.

    If the chambers already meet in a full-dimensional cone nothing changes.
    Otherwise the target is conjugated by the Weyl element u that carries a
    generic source point into the target chamber; u is recorded.
    """
    if xi0 is not None:
        xi0 = tuple(_clean(x) for x in xi0)
        if not all(dot(a, xi0) > 0 for a in E.source.simple_roots):
            raise ConfigError("the supplied point is not interior to the source chamber")
        bad = E.vanishing_root(xi0)
        if bad is not None:
            raise ConfigError("the supplied point is not generic: projected root %s vanishes" % (list(bad),))
    if E.chamber_adjusted:
        return E
    if xi0 is None and E.is_compatible():
        out = EmbeddingData(E.source, E.target, E.L, chamber_adjusted=True,
                            adjusting_element=E.target.identity(), description=E.description)
    else:
        if xi0 is None:
            xi0 = E.generic_point()
        _, u = E.target.to_dominant(E.fpush(xi0), kind="coweight")
        out = E.with_target_conjugated(u)
    if hasattr(E, "weights"):
        out.weights = E.weights
    if hasattr(E, "h"):
        out.h = out.fpush(E.source.simple_coroots[0])
        out.labels = [int(dot(a, out.h)) for a in E.target.simple_roots]
    return out
