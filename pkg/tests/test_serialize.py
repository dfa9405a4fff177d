import json
import random
from fractions import Fraction

import pytest

from rncurves.bundles import ProjectionCenter, splitting_type, twist_ladder
from rncurves.fields import GF, QQ
from rncurves.forms import BinaryForm, DualForm, random_form
from rncurves.serialize import (
    SchemaError,
    center_from_json,
    center_to_json,
    dual_system_to_json,
    dumps,
    form_from_json,
    form_to_json,
    splitting_to_json,
    summands_key,
    survey_to_json,
    verify_report_to_json,
)
from rncurves.strata import (
    DualSystem,
    StratumSpec,
    survey_generic,
    verify_equivalence,
)


def test_form_roundtrip_catalecticant():
    f = BinaryForm(QQ, [Fraction(1, 3), Fraction(-2), Fraction(0), Fraction(5, 7)])
    doc = form_to_json(f)
    assert doc == {"n": 3, "basis": "catalecticant", "coeffs": ["1/3", "-2", "0", "5/7"]}
    assert form_from_json(doc, QQ).coeffs == f.coeffs


def test_form_roundtrip_monomial_basis():
    f = BinaryForm.from_monomial_coeffs(QQ, [Fraction(c) for c in (0, 0, 1, 0, 0)])
    doc = form_to_json(f, basis="monomial")
    assert doc["coeffs"] == ["0", "0", "1", "0", "0"]
    assert form_from_json(doc, QQ).coeffs == f.coeffs
    rng = random.Random(31)
    for field in (QQ, GF(101)):
        g = random_form(field, 6, rng)
        for basis in ("catalecticant", "monomial"):
            assert form_from_json(form_to_json(g, basis), field).coeffs == g.coeffs


def test_form_schema_errors():
    with pytest.raises(SchemaError):
        form_from_json({"basis": "catalecticant", "coeffs": ["1"]}, QQ)  # no n
    with pytest.raises(SchemaError):
        form_from_json({"n": 2, "basis": "catalecticant", "coeffs": ["1", "2"]}, QQ)
    with pytest.raises(SchemaError):
        form_from_json({"n": 1, "basis": "chebyshev", "coeffs": ["1", "2"]}, QQ)
    with pytest.raises(SchemaError):
        form_from_json({"n": 1, "basis": "monomial", "coeffs": ["1", "x"]}, QQ)
    with pytest.raises(SchemaError):
        form_from_json(["not", "an", "object"], QQ)


def test_center_roundtrip():
    rng = random.Random(5)
    for field in (QQ, GF(32003)):
        points = [random_form(field, 7, rng) for _ in range(3)]
        try:
            center = ProjectionCenter(points)
        except ValueError:
            continue
        doc = center_to_json(center)
        back = center_from_json(doc)
        assert back.n == center.n and back.k == center.k
        assert [p.coeffs for p in back.points] == [p.coeffs for p in center.points]
        # serialized form is bit-stable
        assert dumps(doc) == dumps(center_to_json(back))


def test_center_schema_errors():
    base = {
        "n": 5,
        "k": 1,
        "field": "Q",
        "points": [{"n": 5, "basis": "catalecticant", "coeffs": ["1", "2", "3", "4", "5", "6"]}],
    }
    center_from_json(base)
    bad = dict(base, k=2)
    with pytest.raises(SchemaError):
        center_from_json(bad)  # k disagrees with the point count
    bad = dict(base, field="Zp")
    with pytest.raises(SchemaError):
        center_from_json(bad)
    bad = dict(base, points=[dict(base["points"][0], n=4)])
    with pytest.raises(SchemaError):
        center_from_json(bad)
    # dependent points surface as schema errors too
    two = dict(
        base,
        k=2,
        points=[base["points"][0], base["points"][0]],
    )
    with pytest.raises(SchemaError):
        center_from_json(two)


def test_small_characteristic_is_rejected():
    doc = {
        "n": 5,
        "k": 1,
        "field": "Fp:7",
        "points": [{"n": 5, "basis": "catalecticant", "coeffs": ["1", "0", "0", "1", "0", "2"]}],
    }
    # p <= 2n: exact rank thresholds are not trustworthy, refuse early
    with pytest.raises(SchemaError, match="characteristic"):
        center_from_json(doc)


def test_splitting_report_shape():
    c = center_from_json(
        {
            "n": 5,
            "k": 2,
            "field": "Q",
            "points": [
                {"n": 5, "basis": "catalecticant", "coeffs": ["2", "1", "1", "1", "1", "2"]},
                {"n": 5, "basis": "catalecticant", "coeffs": ["3", "2", "2", "2", "2", "1"]},
            ],
        }
    )
    st = splitting_type(c, "normal")
    doc = splitting_to_json(st, twist_ladder(c, "normal"), ordinary=True)
    assert doc == {
        "kind": "normal",
        "summands": [7, 11],
        "rank": 2,
        "h_ladder": [1, 2, 3, 4, 6],
        "ordinary": True,
    }
    assert json.loads(dumps(doc)) == doc


def test_summands_key_format():
    assert summands_key((7, 11)) == "(7,11)"
    assert summands_key([6]) == "(6)"


def test_dual_system_json():
    system = DualSystem([DualForm(QQ, [Fraction(0), Fraction(1), Fraction(-1), Fraction(0)])])
    doc = dual_system_to_json(system)
    assert doc == {"degree": 3, "field": "Q", "generators": [["0", "1", "-1", "0"]]}


def test_verify_report_json():
    reports = verify_equivalence(StratumSpec("normal", 5, 2, 1), trials=3, seed=8)
    doc = verify_report_to_json(reports)
    assert doc["spec"] == {"kind": "normal", "n": 5, "k": 2, "rho": 1}
    assert doc["trials"] == 3
    assert doc["agreements"] == 3
    assert doc["histogram"] == {"(7,11)": 3}
    assert doc["quarantined_seeds"] == []
    with pytest.raises(SchemaError):
        verify_report_to_json([])


def test_survey_json_roundtrip_and_determinism():
    result = survey_generic(5, 2, trials=25, seed=13)
    doc = survey_to_json(result)
    assert doc["spec"] == {"n": 5, "k": 2, "field": result.field_tag}
    assert doc["trials"] == 25
    assert doc["immersive"] + doc["non_immersive"] + doc["degenerate"] == 25
    assert sum(doc["histograms"]["normal"].values()) == doc["immersive"]
    assert all(key.startswith("(") for key in doc["histograms"]["normal"])
    # bit-identical dumps across runs
    again = survey_to_json(survey_generic(5, 2, trials=25, seed=13))
    assert dumps(doc) == dumps(again)


def test_dumps_is_compact_and_sorted():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
