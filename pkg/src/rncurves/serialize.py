"""Exact JSON encodings for forms, centers, splitting and batch reports.

Scalars are serialized as strings ("p/q" over the rationals, decimal
residues over a prime field) so round trips are exact.  Dumps are
deterministic: sorted keys, compact separators, no locale dependence.
Identical inputs therefore produce bit-identical output.
"""

from __future__ import annotations

import json
from typing import Sequence

from .bundles import Kind, ProjectionCenter, SplittingType, TwistLadder
from .fields import Field, field_from_tag
from .forms import BinaryForm
from .strata import DualSystem, StratumReport, SurveyResult


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _require(obj: dict, key: str, kinds, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kinds):
        raise SchemaError(f"{where}: key {key!r} has the wrong type")
    return value


def form_to_json(f: BinaryForm, basis: str = "catalecticant") -> dict:
    """Encode a form; ``basis`` picks which coefficient list is written."""
    F = f.field
    if basis == "catalecticant":
        coeffs = f.coeffs
    elif basis == "monomial":
        coeffs = f.monomial_coeffs()
    else:
        raise SchemaError(f"unknown basis {basis!r}")
    return {"n": f.degree, "basis": basis, "coeffs": [F.to_str(c) for c in coeffs]}


def form_from_json(obj: dict, field: Field) -> BinaryForm:
    """Decode a form; both bases convert to catalecticant coordinates."""
    if not isinstance(obj, dict):
        raise SchemaError("form: expected an object")
    n = _require(obj, "n", int, "form")
    basis = _require(obj, "basis", str, "form")
    raw = _require(obj, "coeffs", list, "form")
    if len(raw) != n + 1:
        raise SchemaError(f"form: degree {n} needs {n + 1} coefficients, got {len(raw)}")
    try:
        coeffs = [field.parse(str(c)) for c in raw]
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"form: bad coefficient ({exc})") from exc
    if basis == "catalecticant":
        return BinaryForm(field, coeffs)
    if basis == "monomial":
        return BinaryForm.from_monomial_coeffs(field, coeffs)
    raise SchemaError(f"form: unknown basis {basis!r}")


def center_to_json(center: ProjectionCenter) -> dict:
    return {
        "n": center.n,
        "k": center.k,
        "field": center.field.tag,
        "points": [form_to_json(p) for p in center.points],
    }


def center_from_json(obj: dict) -> ProjectionCenter:
    if not isinstance(obj, dict):
        raise SchemaError("center: expected an object")
    n = _require(obj, "n", int, "center")
    k = _require(obj, "k", int, "center")
    tag = _require(obj, "field", str, "center")
    points = _require(obj, "points", list, "center")
    try:
        field = field_from_tag(tag)
    except ValueError as exc:
        raise SchemaError(f"center: {exc}") from exc
    if len(points) != k:
        raise SchemaError(f"center: k={k} but {len(points)} points given")
    forms = [form_from_json(p, field) for p in points]
    if any(f.degree != n for f in forms):
        raise SchemaError("center: point degree differs from n")
    try:
        return ProjectionCenter(forms)
    except ValueError as exc:
        raise SchemaError(f"center: {exc}") from exc


def dual_system_to_json(system: DualSystem) -> dict:
    F = system.field
    return {
        "degree": system.degree,
        "field": F.tag,
        "generators": [[F.to_str(c) for c in g.coeffs] for g in system.generators],
    }


def splitting_to_json(st: SplittingType, ladder: TwistLadder, ordinary: bool) -> dict:
    return {
        "kind": st.kind,
        "summands": list(st.summands),
        "rank": st.rank,
        "h_ladder": list(ladder.h),
        "ordinary": ordinary,
    }


def summands_key(summands: Sequence[int]) -> str:
    return "(" + ",".join(str(s) for s in summands) + ")"


def verify_report_to_json(reports: list[StratumReport]) -> dict:
    """Batch report: agreement count, histogram, quarantined seeds."""
    if not reports:
        raise SchemaError("empty report list")
    spec = reports[0].spec
    histogram: dict[str, int] = {}
    quarantined = []
    agreements = 0
    for r in reports:
        if r.computed is not None:
            key = summands_key(r.computed.summands)
            histogram[key] = histogram.get(key, 0) + 1
        if r.agrees:
            agreements += 1
        else:
            quarantined.append(r.seed)
    return {
        "spec": spec.as_dict(),
        "trials": len(reports),
        "agreements": agreements,
        "histogram": histogram,
        "quarantined_seeds": quarantined,
    }


def survey_to_json(result: SurveyResult) -> dict:
    return {
        "spec": {"n": result.n, "k": result.k, "field": result.field_tag},
        "trials": result.trials,
        "immersive": result.immersive,
        "non_immersive": result.non_immersive,
        "degenerate": result.degenerate,
        "histograms": {
            "normal": {summands_key(s): c for s, c in sorted(result.normal_hist.items())},
            "tangent": {summands_key(s): c for s, c in sorted(result.tangent_hist.items())},
        },
    }
