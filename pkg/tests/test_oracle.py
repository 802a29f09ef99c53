import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relschubert import (diagonal_embedding, embedding_from_matrix, make_compatible, principal_sl2,
                         weight_multiplicities)
from relschubert.errors import ResourceError
from relschubert.oracle import (branching_multiplicity, decompose_character, decomposition, restricted_character,
                                saturation_scan, tensor_decomposition, weyl_dimension)
from relschubert.rootdata import build_root_datum


def test_trivial_character():
    d = build_root_datum("G2")
    ch = weight_multiplicities(d, (0, 0))
    assert ch.dimension() == 1


def test_a2_fifteen():
    d = build_root_datum("A2")
    ch = weight_multiplicities(d, d.from_fundamental((2, 1)))
    assert ch.dimension() == 15
    assert sorted(ch.multiplicities.values()).count(2) == 3
    assert ch.is_weyl_invariant()


@pytest.mark.parametrize("n", range(6))
def test_a1_strings(n):
    d = build_root_datum("A1")
    ch = weight_multiplicities(d, (n,))
    assert ch.weights() == [(k,) for k in range(-n, n + 1, 2)]
    assert set(ch.multiplicities.values()) == {1}


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_dimension_formula_and_invariance(name):
    d = build_root_datum(name)
    for fc in itertools.product(range(3), repeat=d.rank):
        lam = d.from_fundamental(fc)
        ch = weight_multiplicities(d, lam)
        assert ch.dimension() == weyl_dimension(d, lam)
        assert ch.is_weyl_invariant()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 18))
def test_a1_clebsch_gordan(a, b, c):
    d = build_root_datum("A1")
    dec = tensor_decomposition(d, (a,), (b,))
    expected = 1 if abs(a - b) <= c <= a + b and (a + b - c) % 2 == 0 else 0
    assert dec.get((c,), 0) == expected


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_tensor_dimension_bookkeeping(name):
    d = build_root_datum(name)
    for l1, l2 in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        a, b = d.from_fundamental(l1), d.from_fundamental(l2)
        dec = tensor_decomposition(d, a, b)
        assert sum(m * weyl_dimension(d, nu) for nu, m in dec.items()) == weyl_dimension(d, a) * weyl_dimension(d, b)
        assert all(m > 0 for m in dec.values())


def test_klimyk_matches_character_product():
    d = build_root_datum("B2")
    a, b = d.from_fundamental((1, 2)), d.from_fundamental((2, 1))
    ca, cb = weight_multiplicities(d, a).multiplicities, weight_multiplicities(d, b).multiplicities
    prod = {}
    for x, m in ca.items():
        for y, n in cb.items():
            k = tuple(p + q for p, q in zip(x, y))
            prod[k] = prod.get(k, 0) + m * n
    assert decompose_character(d, prod) == tensor_decomposition(d, a, b)


def restricted_is_invariant(E, lam):
    s = E.source
    ch = restricted_character(E, lam)
    for i in range(1, s.rank + 1):
        r = s.s(i)
        for mu, m in ch.items():
            if ch.get(r.act(mu), 0) != m:
                return False
    return True


@pytest.mark.parametrize("make", [lambda: embedding_from_matrix("A2", "G2", [[1, 1], [0, 1]]),
                                  lambda: principal_sl2("B2"), lambda: diagonal_embedding("A1", 3)])
def test_restricted_character_invariant(make):
    E = make_compatible(make())
    for fc in itertools.product(range(3), repeat=E.target.rank):
        assert restricted_is_invariant(E, E.target.from_fundamental(fc))


def test_weight_containment():
    E = make_compatible(embedding_from_matrix("A2", "G2", [[1, 1], [0, 1]]))
    s, t = E.source, E.target
    lam = t.from_fundamental((1, 1))
    projected = set(restricted_character(E, lam))
    for lt, m in decomposition(E, lam).items():
        assert m > 0
        assert set(weight_multiplicities(s, lt).multiplicities) <= projected


def test_g2_saturation_pair():
    E = make_compatible(diagonal_embedding("G2", 2))
    s, t = E.source, E.target
    lt, lam = s.from_fundamental((0, 1)), t.from_fundamental((1, 0, 0, 1))
    assert branching_multiplicity(E, lt, lam) == 0
    assert branching_multiplicity(E, s.from_fundamental((0, 3)), t.from_fundamental((3, 0, 0, 3))) >= 1
    n = saturation_scan(E, lt, lam, 3)
    assert n is not None and n > 1


def test_highest_weight_line_occurs():
    E = make_compatible(embedding_from_matrix("A1", "A2", [[1, 1]]))
    t = E.target
    lam = t.from_fundamental((2, 1))
    assert branching_multiplicity(E, E.fstar(lam), lam) >= 1


def test_budget():
    d = build_root_datum("A3")
    with pytest.raises(ResourceError):
        weight_multiplicities(d, d.from_fundamental((6, 6, 6)), budget=50)


def test_character_json():
    d = build_root_datum("A1")
    assert weight_multiplicities(d, (1,)).to_json() == [{"weight": [[-1, 1]], "multiplicity": 1},
                                                        {"weight": [[1, 1]], "multiplicity": 1}]
