import itertools
from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone

from relschubert import (ConfigError, MomentConeEstimator, MomentProblem, ResourceError, apply_duality,
                         cone_inequalities, diagonal_embedding, embedding_from_matrix, identity_embedding,
                         invariant_inequalities, lattice_necessary, make_compatible, polytope_inequalities,
                         polytope_system, principal_sl2, scalar_inequalities, systems_equivalent, to_polytope_form,
                         torus_embedding, vertex_enumeration)
from relschubert.momentcone import dual_triple, grouped_cones, grouped_system, nonvanishing_data, slice_svg
from relschubert.oracle import decomposition, saturation_scan, tensor_decomposition
from relschubert.polyhedra import InequalitySystem, Row
from relschubert.rootdata import build_root_datum

EXAMPLES = {
    "su2-su3": lambda: embedding_from_matrix("A1", "A2", [[1, 1]]),
    "g2-a2": lambda: embedding_from_matrix("A2", "G2", [[1, 1], [0, 1]]),
    "a1-cubed": lambda: diagonal_embedding("A1", 3),
    "a2-diag": lambda: diagonal_embedding("A2", 2),
    "b2-principal": lambda: principal_sl2("B2"),
    "b2-torus": lambda: torus_embedding("B2"),
}


def example(name):
    return make_compatible(EXAMPLES[name]())


def test_identity_embedding_cone():
    E = make_compatible(identity_embedding("B2"))
    want = InequalitySystem(["a", "b", "c", "d"], [Row((1, 0, -1, 0), 0, "eq"), Row((0, 1, 0, -1), 0, "eq"),
                                                   Row((0, 0, 1, 0), 0), Row((0, 0, 0, 1), 0)])
    # the moment polytope of O_lam under K itself is the point lam
    assert systems_equivalent(polytope_system(E), want)
    assert systems_equivalent(scalar_inequalities(E), cone_inequalities(E))
    inv = invariant_inequalities(E)
    assert inv.contains((0, 0)) and not inv.contains((1, 0)) and not inv.contains((0, 1))


def test_polytope_of_zero_is_point():
    E = example("g2-a2")
    assert vertex_enumeration(polytope_inequalities(E, (0, 0))) == [(0, 0)]


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_scalar_equivalent_to_cone(name):
    E = example(name)
    assert systems_equivalent(scalar_inequalities(E), cone_inequalities(E))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_polytope_form_conversion(name):
    E = example(name)
    assert systems_equivalent(to_polytope_form(E, cone_inequalities(E)), polytope_system(E))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_duality_invariance(name):
    E = example(name)
    C = cone_inequalities(E)
    assert systems_equivalent(C, apply_duality(E, C))


@pytest.mark.parametrize("name", ["g2-a2", "su2-su3", "a1-cubed"])
def test_slice_consistency(name):
    E = example(name)
    full = polytope_system(E)
    n = E.source.dim
    for fc in itertools.product(range(3), repeat=E.target.rank):
        lam = E.target.from_fundamental(fc)
        sl = polytope_inequalities(E, lam)
        direct = full.restrict({n + i: x for i, x in enumerate(E.target.fundamental_coords(lam))})
        assert systems_equivalent(sl, direct)


def test_torus_invariant_cone_is_chamber():
    E = example("b2-torus")
    inv = invariant_inequalities(E)
    for fc in itertools.product(range(4), repeat=2):
        assert inv.contains(fc)


def test_diagonal_invariant_cone():
    E = example("a2-diag")
    s = E.source
    inv = invariant_inequalities(E)
    w0 = s.longest()
    for l1 in itertools.product(range(3), repeat=2):
        for l2 in itertools.product(range(3), repeat=2):
            a, b = s.from_fundamental(l1), s.from_fundamental(l2)
            has_invariant = tensor_decomposition(s, a, b).get((0, 0), 0) > 0
            dual = tuple(-x for x in w0.act(a)) == tuple(b)
            assert has_invariant == dual
            assert inv.contains(l1 + l2) == dual


def test_g2_a2_triangle():
    E = example("g2-a2")
    lam = E.target.from_fundamental((0, 1))
    verts = vertex_enumeration(polytope_inequalities(E, lam))
    assert verts == [(0, 1), (1, 0), (1, 1)]
    # cross-check against oracle occurrence at small multiples
    for n in range(1, 4):
        occurring = {tuple(E.source.fundamental_coords(k)) for k, m in
                     decomposition(E, E.target.from_fundamental((0, n))).items() if m > 0}
        for v in verts:
            assert tuple(n * x for x in v) in occurring


def test_monotonicity_on_samples():
    # dominant points below a member (by source positive roots) are members
    E = example("su2-su3")
    s = E.source
    P = polytope_system(E)
    for lt in range(7):
        for fc in itertools.product(range(4), repeat=2):
            if P.contains((lt,) + fc):
                for k in range(lt % 2, lt + 1, 2):
                    assert P.contains((k,) + fc)


def test_interior_points_saturate():
    E = example("g2-a2")
    P = polytope_system(E)
    misses = 0
    for lt in itertools.product(range(3), repeat=2):
        for fc in itertools.product(range(3), repeat=2):
            pt = lt + fc
            if all(r.value(pt) > 0 for r in P.inequality_rows()):
                n = saturation_scan(E, E.source.from_fundamental(lt), E.target.from_fundamental(fc), 4)
                misses += n is None
    assert misses == 0


def test_lattice_condition():
    E = example("su2-su3")
    lam = E.target.from_fundamental((2, 1))
    assert lattice_necessary(E, E.fstar(lam), lam)[0] == "yes"
    # principal sl2 in A2: roots restrict to even weights, so odd lam~ cannot occur in V_pi1
    P = make_compatible(principal_sl2("A2"))
    lam = P.target.from_fundamental((1, 0))
    assert polytope_inequalities(P, lam).contains((1,))
    assert lattice_necessary(P, (1,), lam)[0] == "no"
    assert decomposition(P, lam).get((1,), 0) == 0
    assert lattice_necessary(P, (2,), lam)[0] == "yes"


def test_dual_triple_is_involution():
    E = example("g2-a2")
    for cub, u, ut, c in nonvanishing_data(E):
        w = u * cub.v.inverse()
        wt = E.source.longest() * ut
        once = dual_triple(E, wt, w, cub.v)
        assert dual_triple(E, *once) == (wt, w, cub.v)


def test_provenance_recorded():
    E = example("g2-a2")
    rows = [r for r in cone_inequalities(E).rows if r.provenance.get("tag") == "cone"]
    assert rows
    assert all({"wtilde", "w", "v", "ray"} <= set(r.provenance) for r in rows)


@pytest.mark.parametrize("name", ["g2-a2", "a1-cubed", "b2-principal", "su2-su3"])
def test_grouped_cones_equivalent(name):
    E = example(name)
    groups = grouped_cones(E)
    assert all(0 < len(g["extreme_rays"]) <= g["rows"] for g in groups.values())
    assert systems_equivalent(grouped_system(E), cone_inequalities(E))


def test_budget_error():
    E = make_compatible(diagonal_embedding(build_root_datum("A2", enumeration_bound=10), 2))
    with pytest.raises(ResourceError, match="scalar"):
        cone_inequalities(E)


def test_moment_problem_validation():
    E = example("g2-a2")
    MomentProblem(E, "polytope", E.target.from_fundamental((1, 0)))
    with pytest.raises(ConfigError):
        MomentProblem(E, "polytope", E.target.from_fundamental((-1, 0)))
    with pytest.raises(ConfigError):
        MomentProblem(E, "bogus")


def test_svg_slice():
    E = example("g2-a2")
    svg = slice_svg(polytope_inequalities(E, E.target.from_fundamental((0, 1))))
    assert svg.startswith("<svg") and "polygon" in svg


def test_estimator_api():
    E = example("g2-a2")
    est = MomentConeEstimator(embedding=E, mode="polytope", prune=True)
    assert est.get_params()["mode"] == "polytope"
    with pytest.raises(RuntimeError):
        est.predict([[0, 0, 0, 0]])
    est.fit()
    X = np.array([[1, 0, 0, 1], [2, 2, 0, 1]])
    assert est.predict(X).tolist() == [True, False]
    slack = est.transform(X)
    assert slack.shape == (2, len(est.system_.rows))
    assert all(isinstance(x, Fraction) for x in slack.ravel())
    assert est.decision_function(X)[1] < 0
    with pytest.raises(TypeError):
        est.predict(np.array([[0.5, 0, 0, 1]]))
    with pytest.raises(ValueError):
        est.predict([[1, 2]])
    other = clone(est).set_params(mode="cone")
    assert other.fit().predict([[1, 0, 0, 1]]).tolist() == [True]


def test_estimator_rejects_bad_config():
    with pytest.raises(ConfigError):
        MomentConeEstimator(embedding="G2").fit()
    with pytest.raises(ConfigError):
        MomentConeEstimator(embedding=example("g2-a2"), mode="nope").fit()
