from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relschubert.errors import ConfigError, ResourceError
from relschubert.rootdata import (build_root_datum, cartan_matrix, cycle_string, element_from_permutation,
                                  parse_cycles, product_datum, unitary_datum, validate_cartan, weyl_order)


@pytest.mark.parametrize("name,npos,order", [("A1", 1, 2), ("A2", 3, 6), ("B2", 4, 8), ("C3", 9, 48),
                                             ("G2", 6, 12), ("D4", 12, 192), ("A1xA1", 2, 4), ("F4", 24, 1152)])
def test_root_counts(name, npos, order):
    d = build_root_datum(name)
    assert len(d.positive_roots) == npos
    assert d.order() == order


def test_g2_conventions():
    g = build_root_datum("G2")
    assert g.cartan == [[2, -1], [-3, 2]]
    # fundamental weights in root coordinates
    assert [tuple(g.root_coords(p)) for p in g.fundamental_weights] == [(2, 1), (3, 2)]
    assert g.longest().length == 6
    assert len(g.elements()) == 12


def test_cartan_validation_names_condition():
    with pytest.raises(ConfigError, match="diagonal"):
        validate_cartan([[1, 0], [0, 2]])
    with pytest.raises(ConfigError, match="simultaneously zero"):
        validate_cartan([[2, -1], [0, 2]])
    with pytest.raises(ConfigError, match="finite type"):
        validate_cartan([[2, -2], [-2, 2]])
    with pytest.raises(ConfigError):
        build_root_datum("Q7")


def test_torus_and_center():
    t = build_root_datum("T2")
    assert t.rank == 0 and t.dim == 2 and t.order() == 1
    u = build_root_datum("A1+u1")
    assert u.rank == 1 and u.central_rank == 1


def test_unitary_model():
    u3 = unitary_datum(3)
    assert u3.dim == 3 and u3.rank == 2
    w = element_from_permutation(u3, [2, 3, 1])
    assert w.permutation() == (2, 3, 1)
    assert w.length == 2


def test_cycles_round_trip():
    perm = parse_cycles("(2 3)(4 6 5)", 6)
    assert tuple(perm) == (1, 3, 2, 6, 4, 5)
    assert cycle_string(perm) == "(2 3)(4 6 5)"


def test_enumeration_bound():
    d = build_root_datum("A5", enumeration_bound=100)
    with pytest.raises(ResourceError):
        d.elements()


def test_product_factors():
    p = product_datum([build_root_datum("A1"), build_root_datum("G2")])
    assert p.rank == 3
    assert [off for _, off in p.factors] == [0, 1]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_weyl_group_basics(name):
    d = build_root_datum(name)
    w0 = d.longest()
    assert w0.length == len(d.positive_roots)
    assert (w0 * w0).is_identity()
    assert len(d.elements()) == d.order() == weyl_order(name[0], int(name[1:]))
    for w in d.elements():
        assert w.length == w.inversion_count()
        assert d.element(w.word) == w


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_to_dominant(name, coords):
    d = build_root_datum(name)
    lam = d.from_fundamental(coords[:d.rank])
    dom, u = d.to_dominant(lam)
    assert d.is_dominant(dom)
    assert u.act(dom) == tuple(lam)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.data())
def test_coset_representatives(name, data):
    d = build_root_datum(name)
    w = data.draw(st.sampled_from(d.elements()))
    J = data.draw(st.sets(st.integers(1, d.rank)))
    rep = d.min_coset_rep(w, sorted(J), side="right")
    assert rep in d.coset_reps(sorted(J))
    # rep^{-1} w lies in W_J
    rest = rep.inverse() * w
    assert set(rest.word) <= set(J)


def test_fundamental_coordinates_round_trip():
    d = build_root_datum("B3+u1")
    lam = d.from_fundamental([1, 2, 3, 4])
    assert d.fundamental_coords(lam) == (1, 2, 3, 4)


def test_cartan_matrix_labelling():
    assert cartan_matrix("B", 3)[1][2] == -2
    assert cartan_matrix("C", 3)[2][1] == -2
    assert cartan_matrix("F", 4)[1][2] == -2
