"""JSON round trips and schema errors."""

import json

import pytest

from mvgamma.equivalence import free_quotient_experiment
from mvgamma.lgroup import ChangChainGroup, ChangPair, make_product_group
from mvgamma.mv_core import (
    FiniteMVAlgebra,
    MVMorphism,
    check_mv_axioms,
    make_chain,
    make_product,
)
from mvgamma.serialize import (
    SchemaError,
    algebra_from_json,
    dumps,
    element_from_json,
    export_json,
    group_from_json,
    ideal_from_json,
    import_json,
    loads,
    morphism_from_json,
    to_jsonable,
)
from mvgamma.spectrum import Ideal, spectrum


def test_algebra_round_trip_chain(tmp_path):
    a = make_chain(3)
    p = tmp_path / "chain3.json"
    export_json(a, str(p))
    b = import_json(str(p))
    assert isinstance(b, FiniteMVAlgebra)
    assert b == a


def test_algebra_round_trip_product():
    a = make_product(make_chain(2), make_chain(3))
    assert loads(dumps(a)) == a


def test_boolean_two_from_raw_json():
    raw = '{"size":2,"oplus":[[0,1],[1,1]],"neg":[1,0]}'
    a = loads(raw)
    assert check_mv_axioms(a).ok
    assert a == make_chain(1)


def test_import_checks_shape_not_laws():
    # exclusive-or in place of join: structurally a fine table, but not an
    # algebra of this kind (1 (+) 1 should stay 1); import succeeds, the
    # axiom checker is the place that says no
    xor = loads('{"size":2,"oplus":[[0,1],[1,0]],"neg":[1,0]}')
    report = check_mv_axioms(xor)
    assert not report.ok
    assert any(name == "absorb" for name, _ in report.violations)


def test_morphism_round_trip():
    h = MVMorphism(make_chain(1), make_chain(2), (0, 2))
    back = loads(dumps(h))
    assert back.dom == h.dom and back.cod == h.cod and back.map == h.map


def test_morphism_with_named_endpoints():
    names = {"A": make_chain(1), "B": make_chain(2)}
    obj = {"dom": "A", "cod": "B", "map": [0, 2]}
    h = morphism_from_json(obj, names)
    assert h.dom == names["A"] and h.map == (0, 2)
    with pytest.raises(SchemaError, match="unknown algebra name"):
        morphism_from_json({"dom": "X", "cod": "B", "map": []}, names)


def test_element_round_trip():
    x = (ChangPair(-1, 2), ChangPair(3, 0))
    assert loads(dumps(x)) == x


def test_group_round_trip():
    g = make_product_group(
        [ChangChainGroup(make_chain(1)), ChangChainGroup(make_chain(2))],
        [(2, 0), (1, 1)],
    )
    back = loads(dumps(g))
    assert [f.chain.size for f in back.fibers] == [2, 3]
    assert back.u == g.u


def test_ideal_and_spectrum_round_trip():
    a = make_product(make_chain(1), make_chain(2))
    spec = spectrum(a)
    members = loads(dumps(spec.primes[0]))
    assert members == spec.primes[0].members
    ideal = ideal_from_json(json.loads(dumps(spec.primes[0])), a)
    assert ideal == spec.primes[0]
    prime_sets = loads(dumps(spec))
    assert prime_sets == tuple(p.members for p in spec.primes)


def test_snf_report_serializes():
    report = free_quotient_experiment(make_chain(2))
    obj = json.loads(dumps(report))
    assert obj["free_factors"] == [0]
    assert obj["star_factors"] == [0]
    assert obj["isomorphic"] is True
    back = loads(dumps(report))
    assert back["isomorphic"] is True


def test_dumps_is_deterministic():
    a = make_product(make_chain(2), make_chain(2))
    assert dumps(a) == dumps(make_product(make_chain(2), make_chain(2)))
    assert dumps(a).endswith("\n")
    assert json.dumps(json.loads(dumps(a)), sort_keys=True, indent=2) + "\n" == dumps(a)


def test_schema_error_locations():
    with pytest.raises(SchemaError) as err:
        algebra_from_json({"size": 2, "oplus": [[0, 1], [1]], "neg": [1, 0]})
    assert err.value.location == "/oplus/1"
    with pytest.raises(SchemaError) as err:
        element_from_json({"coords": [{"m": 0, "a": "x"}]})
    assert err.value.location == "/coords/0/a"
    with pytest.raises(SchemaError) as err:
        group_from_json({"fibers": [2], "u": {"coords": [{"m": 0, "a": 0}]}})
    assert err.value.location == "/u"  # zero unit is rejected
    with pytest.raises(SchemaError, match="unrecognized key set"):
        loads('{"what": 1}')
    with pytest.raises(SchemaError, match="not JSON"):
        loads("{")
    with pytest.raises(SchemaError, match="top level"):
        loads("[1, 2]")


def test_algebra_schema_rejections():
    good = {"size": 2, "oplus": [[0, 1], [1, 1]], "neg": [1, 0]}
    algebra_from_json(good)
    for mutate in (
        lambda o: o.pop("neg"),
        lambda o: o.update(size=1),
        lambda o: o["oplus"].append([0, 0]),
        lambda o: o["oplus"][0].__setitem__(0, 9),
        lambda o: o.update(neg=[1, 0, 0]),
    ):
        broken = {"size": good["size"], "oplus": [list(r) for r in good["oplus"]], "neg": list(good["neg"])}
        mutate(broken)
        with pytest.raises(SchemaError):
            algebra_from_json(broken)


def test_group_schema_rejections():
    with pytest.raises(SchemaError):
        group_from_json({"fibers": [], "u": {"coords": [{"m": 1, "a": 0}]}})
    with pytest.raises(SchemaError):
        group_from_json({"fibers": [1], "u": {"coords": [{"m": 1, "a": 0}]}})
    with pytest.raises(SchemaError):
        group_from_json({"fibers": [2, 2], "u": {"coords": [{"m": 1, "a": 0}]}})
    # offsets out of chain range are schema errors too
    with pytest.raises(SchemaError):
        group_from_json({"fibers": [2], "u": {"coords": [{"m": 0, "a": 5}]}})


def test_unit_normalizes_on_import():
    # fiber size 4 is the chain of height 3: offset 2 sits below the top
    g = group_from_json({"fibers": [4], "u": {"coords": [{"m": 0, "a": 2}]}})
    assert g.u == (ChangPair(0, 2),)
    # fiber size 3: offset 2 is the top and rolls into a whole copy
    g2 = group_from_json({"fibers": [3], "u": {"coords": [{"m": 0, "a": 2}]}})
    assert g2.u == (ChangPair(1, 0),)


def test_to_jsonable_rejects_strangers():
    with pytest.raises(TypeError):
        to_jsonable(object())
