import json
from fractions import Fraction

import pytest

from relschubert import diagonal_embedding, identity_embedding, make_compatible
from relschubert.rootdata import build_root_datum
from relschubert.schubert import (CohomologyClass, SchubertCalculus, bgg_representative, check_integrality,
                                  class_product, divided_difference, extract_class, phi_star, schubert_class,
                                  weight_polynomial)


def test_top_class_normalization():
    # P_{w0} = prod(beta)/|W| in degree |R+|
    g = build_root_datum("A2")
    p = bgg_representative(g, g.longest())
    assert p.degrees() == [3]
    assert extract_class(g, p) == schubert_class(g, g.longest())


def test_divided_difference_lowers_length():
    d = build_root_datum("B2")
    for w in d.elements():
        p = bgg_representative(d, w)
        for i in (1, 2):
            ws = w * d.s(i)
            got = extract_class(d, divided_difference(d, i, p))
            if ws.length < w.length:
                assert got == schubert_class(d, ws)
            else:
                assert not got


def test_weight_polynomial_is_divisor_class():
    d = build_root_datum("A2")
    lam = d.fundamental_weights[0]
    cls = extract_class(d, weight_polynomial(d, lam))
    assert cls == schubert_class(d, d.s(1))


def test_a2_product():
    d = build_root_datum("A2")
    s1, s2 = schubert_class(d, d.s(1)), schubert_class(d, d.s(2))
    prod = class_product(d, s1, s2)
    assert prod == schubert_class(d, d.element([1, 2])) + schubert_class(d, d.element([2, 1]))


def test_identity_pullback():
    E = make_compatible(identity_embedding("G2"))
    for w in E.target.elements():
        assert phi_star(E, schubert_class(E.target, w)) == schubert_class(E.source, w)


def test_diagonal_pullback_is_product():
    E = make_compatible(diagonal_embedding("A2", 2))
    d = E.source
    t = E.target
    a, b = d.element([1]), d.element([2, 1])
    u = t.element([1, 2 + 2, 2 + 1])
    got = phi_star(E, schubert_class(t, u))
    assert got == class_product(d, schubert_class(d, a), schubert_class(d, b))


def test_integrality_check_warns():
    d = build_root_datum("A1")
    x = CohomologyClass(d, {d.s(1): Fraction(1, 2)})
    with pytest.warns(UserWarning):
        assert not check_integrality(x)


def test_json_round_shape():
    d = build_root_datum("G2")
    x = schubert_class(d, d.element([1, 2]), 3)
    assert x.to_json() == [[[1, 2], [3, 1]]]


def test_cache_round_trip(tmp_path):
    d = build_root_datum("B2")
    sc = SchubertCalculus(d)
    reps = {w: sc.rep(w) for w in d.elements()}
    path = sc.save_cache(str(tmp_path))
    fresh = SchubertCalculus(d)
    assert fresh.load_cache(str(tmp_path))
    assert {w: fresh.rep(w) for w in d.elements()} == reps
    # a cache written for a different datum is not reused
    other = SchubertCalculus(build_root_datum("C2"))
    assert not other.load_cache(str(tmp_path))
    payload = json.load(open(path))
    payload["fingerprint"] = "0" * 16
    json.dump(payload, open(path, "w"))
    assert not SchubertCalculus(d).load_cache(str(tmp_path))
