import itertools
import json

import pytest

from relschubert import (ConfigError, cone_inequalities, diagonal_embedding, embedding_from_matrix,
                         embedding_from_weights, identity_embedding, make_compatible, principal_sl2, sl2_embedding,
                         systems_equivalent, torus_embedding)
from relschubert.rootdata import element_from_permutation, parse_cycles


def test_identity_has_one_cubicle_and_trivial_j():
    E = make_compatible(identity_embedding("B2"))
    cubs = E.cubicles()
    assert len(cubs) == 1 and cubs[0].v.is_identity()
    j = E.lift_j()
    assert all(g == E.target.s(i + 1) for i, g in enumerate(j.generators))


def test_g2_diagonal_relative_weyl_set():
    E = make_compatible(diagonal_embedding("G2", 2))
    assert [c.v.word for c in E.cubicles()] == [()]


def test_injectivity_checked():
    with pytest.raises(ConfigError, match="kernel"):
        embedding_from_matrix("A2", "A2", [[1, 0], [1, 0]])


def test_sl2_labels_validated():
    with pytest.raises(ConfigError):
        sl2_embedding("A2", [3, 0])
    with pytest.raises(ConfigError):
        sl2_embedding("A2", [0, 0])
    E = principal_sl2("G2")
    assert E.labels == [2, 2]


def test_plethysm_report_json():
    E = make_compatible(embedding_from_weights("A2", highest_weight=(2, 1)))
    rep = E.report()
    text = json.dumps(rep, sort_keys=True)
    assert json.loads(text)["bar_simple"] == [4, 8, 10]
    assert len(rep["cubicles"]) == 4
    assert sum(p["multiplicity"] for p in rep["projected_roots"]) == 105


def test_plethysm_duals():
    E = make_compatible(embedding_from_weights("A2", highest_weight=(2, 1)))
    t = E.target
    perm = lambda text: element_from_permutation(t, parse_cycles(text, 15))
    v1 = perm("(6 7)(12 13)")
    assert E.dual_element(v1) == perm("(2 3 6 4)(7 9 12 10)(13 14)")
    assert E.dual_element(t.identity()) == perm("(2 3)(4 6)(7 9)(10 12)(13 14)")
    # duals land in the relative Weyl set up to the subgroup generated by S-bar
    rel = E.relative_weyl_set()
    bar = t.subgroup(E.bar_simple())
    for v in rel:
        assert any(b * v2 == E.dual_element(v) for b in bar for v2 in rel)


@pytest.mark.parametrize("images", list(itertools.permutations([1, 0, -1])))
def test_conjugate_embeddings_give_same_cone(images):
    # weights of the defining representation of SU(3) restricted to SU(2), in any order
    a, b, _ = images
    E = make_compatible(embedding_from_matrix("A1", "A2", [[a, a + b]]))
    assert E.is_compatible()
    ref = cone_inequalities(make_compatible(embedding_from_matrix("A1", "A2", [[1, 1]])))
    assert systems_equivalent(cone_inequalities(E), ref)


def test_cubicles_cover_source_chamber():
    E = make_compatible(embedding_from_matrix("A2", "G2", [[1, 1], [0, 1]]))
    s = E.source
    for x, y in itertools.product(range(0, 5), repeat=2):
        xi = s.coweight_from_coroot_coords((x, y))
        if s.is_dominant(xi, kind="coweight"):
            assert E.cubicle_of(xi)


def test_torus_embedding_cubicles_are_chambers():
    E = make_compatible(torus_embedding("B2"))
    assert len(E.cubicles()) == 8
    assert sorted(c.v.length for c in E.cubicles()) == [0, 1, 1, 2, 2, 3, 3, 4]


def test_make_compatible_with_bad_point():
    E = embedding_from_matrix("A2", "G2", [[1, 1], [0, 1]])
    with pytest.raises(ConfigError):
        make_compatible(E, E.source.coweight_from_coroot_coords((-1, 1)))


def _bar_condition(E, v):
    t = E.target
    rbar = {tuple(b) for b in E.bar_roots()}
    rbar |= {tuple(-x for x in b) for b in rbar}
    sbar = {tuple(t.simple_roots[i - 1]) for i in E.bar_simple()}
    return {tuple(v.act(a)) for a in t.simple_roots} & rbar == sbar


def test_bar_condition_necessary_not_sufficient():
    E = make_compatible(embedding_from_weights("A2", highest_weight=(2, 1)))
    assert all(_bar_condition(E, v) for v in E.relative_weyl_set())
    E = make_compatible(embedding_from_matrix("A1", "A2", [[1, 1]]))
    passing = [v for v in E.target.elements() if _bar_condition(E, v)]
    assert len(E.relative_weyl_set()) == 1
    assert len(passing) == 6
