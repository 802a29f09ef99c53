"""Representation-theoretic oracle: characters restricted along f and
decomposed into source irreducibles.

Weights are handled internally in fundamental coordinates, where the
simple roots are the rows of the Cartan matrix.
"""
from fractions import Fraction

from .errors import ResourceError
from .linalg import frac

DEFAULT_BUDGET = 10 ** 6


class Character:
    """A weight -> multiplicity map (weights in lattice coordinates)."""

    def __init__(self, datum, multiplicities):
        self.datum = datum
        self.multiplicities = {tuple(k): int(v) for k, v in multiplicities.items() if v}

    def dimension(self):
        return sum(self.multiplicities.values())

    def multiplicity(self, mu):
        return self.multiplicities.get(tuple(mu), 0)

    def weights(self):
        return sorted(self.multiplicities)

    def is_weyl_invariant(self):
        d = self.datum
        for i in range(d.rank):
            s = d.s(i + 1)
            for mu, m in self.multiplicities.items():
                if self.multiplicities.get(s.act(mu), 0) != m:
                    return False
        return True

    def to_json(self):
        from .serialize import rational_vector
        return [{"weight": rational_vector(self.datum.fundamental_coords(mu)), "multiplicity": m}
                for mu, m in sorted(self.multiplicities.items())]

    def __eq__(self, other):
        return isinstance(other, Character) and self.multiplicities == other.multiplicities

    def __repr__(self):
        return "Character(dim=%d, %d weights)" % (self.dimension(), len(self.multiplicities))


class _FundModel:
    """Per-datum helpers in fundamental coordinates."""

    def __init__(self, d):
        self.d = d
        self.r = d.rank
        self.n = d.dim
        a = d.cartan
        self.roots = [tuple(a[i][j] for j in range(self.r)) + (0,) * (self.n - self.r) for i in range(self.r)]
        self.pos = [d.fundamental_coords(b) for b in d.positive_roots]
        self.pos_coroot_pairing = []
        for b, c in zip(d.positive_roots, d.positive_coroots):
            # <pi_i, beta^vee> for each fundamental weight
            self.pos_coroot_pairing.append(tuple(sum(frac(x) * y for x, y in zip(p, c)) for p in d.fundamental_weights))
        # Gram matrix of fundamental weights for the invariant form
        r = self.r
        from .linalg import inverse
        ainv = inverse([[Fraction(x) for x in row] for row in a]) if r else []
        g = d.gram
        self.gpi = [[sum(ainv[i][k] * g[k][l] * ainv[j][l] for k in range(r) for l in range(r)) for j in range(r)]
                    for i in range(r)]
        self.rho = (1,) * r + (0,) * (self.n - r)

    def inner(self, x, y):
        r = self.r
        return sum(x[i] * self.gpi[i][j] * y[j] for i in range(r) for j in range(r) if x[i] and y[j])

    def to_dominant(self, x):
        """(dominant, number of simple reflections used)."""
        x = list(x)
        steps = 0
        while True:
            for i in range(self.r):
                if x[i] < 0:
                    c = x[i]
                    a = self.roots[i]
                    for k in range(self.r):
                        x[k] -= c * a[k]
                    steps += 1
                    break
            else:
                return tuple(x), steps

    def orbit(self, x):
        seen = {tuple(x)}
        stack = [tuple(x)]
        while stack:
            y = stack.pop()
            for i in range(self.r):
                if y[i]:
                    a = self.roots[i]
                    z = tuple(y[k] - y[i] * a[k] if k < self.r else y[k] for k in range(self.n))
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        return seen


_MODELS = {}


def _model(d):
    m = _MODELS.get(id(d))
    if m is None or m.d is not d:
        m = _FundModel(d)
        _MODELS[id(d)] = m
    return m


def weyl_dimension(d, lam):
    """Weyl dimension formula for a dominant integral weight."""
    rho = d.rho
    num, den = Fraction(1), Fraction(1)
    for c in d.positive_coroots:
        num *= sum(frac(x) * y for x, y in zip(lam, c)) + sum(frac(x) * y for x, y in zip(rho, c))
        den *= sum(frac(x) * y for x, y in zip(rho, c))
    val = num / den
    assert val.denominator == 1
    return int(val)


def _check_dominant_integral(d, lam):
    fc = d.fundamental_coords(lam)
    for x in fc[:d.rank]:
        if frac(x).denominator != 1 or x < 0:
            raise ValueError("weight %r is not dominant integral" % (fc,))
    return fc


_CHAR_CACHE = {}


def dominant_multiplicities(d, lam, budget=DEFAULT_BUDGET):
    """Freudenthal multiplicities of the dominant weights of V_lam (fundamental coordinates)."""
    fc = tuple(_check_dominant_integral(d, lam))
    key = (id(d), fc)
    hit = _CHAR_CACHE.get(key)
    if hit is not None and hit[0] is d:
        return hit[1]
    M = _model(d)
    r = M.r
    # dominant weights below lam, by depth
    layers = [[fc]]
    seen = {fc}
    while True:
        nxt = []
        for mu in layers[-1]:
            for b in M.pos:
                nu = tuple(x - y for x, y in zip(mu, b))
                if nu not in seen and all(nu[i] >= 0 for i in range(r)):
                    seen.add(nu)
                    nxt.append(nu)
        if not nxt:
            break
        layers.append(nxt)
        if len(seen) > budget:
            raise ResourceError("dominant weight count exceeds the oracle budget %d" % budget)
    lamrho = tuple(x + y for x, y in zip(fc, M.rho))
    top = M.inner(lamrho, lamrho)
    mult = {fc: 1}
    ordered = sorted(seen, key=lambda mu: M.inner(tuple(x - y for x, y in zip(fc, mu)), M.rho))
    # process by increasing height of lam - mu (rho pairs positively with every positive root)
    for mu in ordered:
        if mu == fc:
            continue
        s = Fraction(0)
        for b in M.pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, b))
                dom, _ = M.to_dominant(nu)
                m = mult.get(dom, 0)
                if m == 0 and dom not in seen:
                    break
                if m:
                    s += m * M.inner(nu, b)
                k += 1
        murho = tuple(x + y for x, y in zip(mu, M.rho))
        denom = top - M.inner(murho, murho)
        val = 2 * s / denom
        assert val.denominator == 1
        if val:
            mult[mu] = int(val)
    _CHAR_CACHE[key] = (d, mult)
    return mult


def weight_multiplicities(d, lam, budget=DEFAULT_BUDGET):
    """Full character of V_lam, checked against the Weyl dimension formula."""
    lam = tuple(lam)
    dom = dominant_multiplicities(d, lam, budget)
    M = _model(d)
    fundmult = {}
    for mu, m in dom.items():
        for nu in M.orbit(mu):
            fundmult[nu] = m
    if sum(fundmult.values()) > budget:
        raise ResourceError("character size exceeds the oracle budget")
    ch = Character(d, {d.from_fundamental(nu): m for nu, m in fundmult.items()})
    if ch.dimension() != weyl_dimension(d, lam):
        raise AssertionError("Freudenthal dimension mismatch")
    return ch


def _fund_character(d, fc, budget):
    dom = dominant_multiplicities(d, d.from_fundamental(fc), budget)
    M = _model(d)
    out = {}
    for mu, m in dom.items():
        for nu in M.orbit(mu):
            out[nu] = m
    return out


def restricted_character(E, lam, budget=DEFAULT_BUDGET):
    """Restriction of the target character V_lam along f*, as source weight -> multiplicity."""
    t = E.target
    lam = tuple(lam)
    factors = t.factors or [(t, 0)]
    result = {tuple([0] * E.source.dim): 1}
    for fd, off in factors:
        block = lam[off:off + fd.dim]
        if fd.rank == 0:
            ch = {tuple(block): 1}
        else:
            ch = {fd.from_fundamental(nu): m for nu, m in _fund_character(fd, fd.fundamental_coords(block), budget).items()}
        cols = [[E.L[a][off + b] for b in range(fd.dim)] for a in range(E.source.dim)]
        pushed = {}
        for mu, m in ch.items():
            img = tuple(sum(frac(c) * x for c, x in zip(row, mu)) for row in cols)
            pushed[img] = pushed.get(img, 0) + m
        new = {}
        for a, ma in result.items():
            for b, mb in pushed.items():
                k = tuple(x + y for x, y in zip(a, b))
                new[k] = new.get(k, 0) + ma * mb
        result = new
        if len(result) > budget:
            raise ResourceError("restricted character exceeds the oracle budget")
    return result


def decompose_character(d, char):
    """Multiplicities of irreducibles in a W-invariant character (Racah-Speiser)."""
    M = _model(d)
    out = {}
    for mu, m in char.items():
        fc = d.fundamental_coords(mu)
        x = tuple(a + b for a, b in zip(fc, M.rho))
        dom, steps = M.to_dominant(x)
        if any(dom[i] == 0 for i in range(M.r)):
            continue
        nu = tuple(a - b for a, b in zip(dom, M.rho))
        out[nu] = out.get(nu, 0) + (-1) ** steps * m
    return {d.from_fundamental(nu): c for nu, c in out.items() if c}


def tensor_decomposition(d, lam, mu, budget=DEFAULT_BUDGET):
    """V_lam (x) V_mu via the Brauer-Klimyk rule, keyed by highest weight (lattice)."""
    M = _model(d)
    fl = tuple(d.fundamental_coords(lam))
    chmu = _fund_character(d, d.fundamental_coords(mu), budget)
    out = {}
    for kappa, m in chmu.items():
        x = tuple(a + b + c for a, b, c in zip(fl, kappa, M.rho))
        dom, steps = M.to_dominant(x)
        if any(dom[i] == 0 for i in range(M.r)):
            continue
        nu = tuple(a - b for a, b in zip(dom, M.rho))
        out[nu] = out.get(nu, 0) + (-1) ** steps * m
    return {d.from_fundamental(nu): c for nu, c in out.items() if c}


def _is_binary_diagonal(E):
    t = E.target
    if not t.factors or len(t.factors) != 2:
        return False
    (a, _), (b, _) = t.factors
    if a.dim != E.source.dim or b.dim != E.source.dim or a.fingerprint() != E.source.fingerprint():
        return False
    n = E.source.dim
    return all(E.L[i][j] == int(i == j % n) for i in range(n) for j in range(2 * n))


def decomposition(E, lam, budget=DEFAULT_BUDGET):
    """All source irreducibles in the restriction of V_lam with multiplicities."""
    if _is_binary_diagonal(E):
        n = E.source.dim
        return tensor_decomposition(E.source, tuple(lam[:n]), tuple(lam[n:]), budget)
    return decompose_character(E.source, restricted_character(E, lam, budget))


def branching_multiplicity(E, lam_tilde, lam, budget=DEFAULT_BUDGET):
    """Multiplicity of the source irreducible V~_{lam_tilde} in V_lam restricted along f."""
    s = E.source
    _check_dominant_integral(s, lam_tilde)
    _check_dominant_integral(E.target, lam)
    if any(frac(x).denominator != 1 for x in s.fundamental_coords(lam_tilde)):
        return 0
    return decomposition(E, lam, budget).get(tuple(lam_tilde), 0)


def _is_integral(d, lam):
    return all(frac(x).denominator == 1 for x in d.fundamental_coords(lam)[:d.rank])


def saturation_scan(E, lam_tilde, lam, N, budget=DEFAULT_BUDGET):
    """Smallest n <= N with positive multiplicity of (n lam_tilde, n lam), or None."""
    for n in range(1, N + 1):
        lt = tuple(n * frac(x) for x in lam_tilde)
        l = tuple(n * frac(x) for x in lam)
        if not (_is_integral(E.source, lt) and _is_integral(E.target, l)):
            continue
        if not all(frac(x).denominator == 1 for x in E.source.fundamental_coords(lt)) or \
                not all(frac(x).denominator == 1 for x in E.target.fundamental_coords(l)):
            continue
        lt = tuple(int(x) if frac(x).denominator == 1 else x for x in lt)
        l = tuple(int(x) if frac(x).denominator == 1 else x for x in l)
        if branching_multiplicity(E, lt, l, budget) > 0:
            return n
    return None
