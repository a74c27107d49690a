import json

import pytest

import kzero


def test_fixtures_and_isomorphism():
    assert "SL3" in kzero.fixture_names()
    sl2, pgl2 = kzero.RootDatum.fixture("SL2"), kzero.RootDatum.fixture("PGL2")
    assert sl2.rank == 1 and sl2.weyl_order == 2
    assert kzero.isomorphic(sl2, sl2)
    assert not kzero.isomorphic(sl2, pgl2)
    assert kzero.isomorphic(kzero.RootDatum.from_json(sl2.to_json()), sl2)


def test_invalid_datum():
    with pytest.raises(ValueError):
        kzero.RootDatum(1, [[2]], [[2]])


def test_tensor_bookkeeping():
    sl3 = kzero.RootDatum.fixture("SL3")
    product = kzero.tensor_decompose(sl3, [1, 0], [0, 1])
    assert product == {(1, 1): 1, (0, 0): 1}
    assert sum(m * kzero.dimension(sl3, list(w)) for w, m in product.items()) == 9
    for w in kzero.prv_components(sl3, [2, 1], [1, 2]):
        assert product_contains(sl3, [2, 1], [1, 2], w)


def product_contains(d, a, b, w):
    return kzero.tensor_decompose(d, a, b).get(tuple(w), 0) >= 1


def test_big_integers_survive():
    sl2 = kzero.RootDatum.fixture("SL2")
    big = 10**30
    assert kzero.dimension(sl2, [big]) == big + 1


def test_order_and_covering():
    sl2 = kzero.RootDatum.fixture("SL2")
    assert kzero.order_criteria(sl2, [1], [3]) == (True, True, True)
    assert kzero.dominance_leq(sl2, [1], [3]) and not kzero.hull_contains_orbit(sl2, [3], [1])
    verdict = kzero.quantized_cover_check([[-1], [1]], 5)
    assert verdict["status"] == "pass" and verdict["radius_squared"] == "16"
    assert verdict["lattice_points"] == 11


def test_oracle_round_trip():
    sl3 = kzero.RootDatum.fixture("SL3")
    text, provenance = kzero.materialize_oracle(sl3, bound=3, seed=5)
    assert text == kzero.materialize_oracle(sl3, bound=3, seed=5)[0]
    assert [0, 0] in provenance.values()
    assert kzero.validate_oracle(text)["ok"]
    report = kzero.recover_datum(text)
    assert report["verdict"] == "certified"
    recovered = kzero.datum_from_report(json.dumps(report))
    assert kzero.isomorphic(recovered, sl3)
    assert not kzero.isomorphic(recovered, kzero.RootDatum.fixture("PGL3"))


def test_failures_are_reported():
    text, _ = kzero.materialize_oracle(kzero.RootDatum.fixture("PGL3"), bound=3)
    report = kzero.recover_datum(text)
    assert report["verdict"] == "failed" and report["stage"] == "roots"
    assert kzero.datum_from_report(json.dumps(report)) is None
    with pytest.raises(ValueError):
        kzero.validate_oracle("labels: a b\nunit: c\n")
