"""Command-line interface: analyze, construct, waring, formulas, survey.

Every command reads/writes the exact JSON formats of :mod:`.serialize`,
honors ``--json`` (machine output to stdout) and ``--out`` (write the
JSON payload to a file), and exits 0 on success, 2 on usage errors,
3 on validation errors and 4 on computation failures.  Errors are
emitted to stderr as one-line JSON objects.  Identical invocations
produce bit-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bundles import (
    NotImmersiveError,
    ProjectionCenter,
    ordinary_singularities,
    smooth_image,
    splitting_from_ladder,
    splitting_type,
    twist_ladder,
)
from .fields import Field, QQ, SURVEY_PRIME, field_from_tag
from .forms import (
    BinaryForm,
    decompose,
    simultaneous_apolar,
    squarefree_member,
    waring_rank,
    waring_witness,
)
from .serialize import (
    SchemaError,
    center_from_json,
    center_to_json,
    dual_system_to_json,
    dumps,
    form_from_json,
    splitting_to_json,
    summands_key,
    survey_to_json,
)
from .strata import (
    ConstructionError,
    InfeasibleStratumError,
    StratumSpec,
    construct_special_center,
    generic_min_mult,
    generic_splitting,
    stratum_codim,
    survey_generic,
)

USAGE_EXIT = 2
VALIDATION_EXIT = 3
COMPUTATION_EXIT = 4


def _emit_error(code: int, kind: str, message: str, **extra) -> None:
    obj = {"error": {"code": code, "kind": kind, "message": message, **extra}}
    print(dumps(obj), file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error(USAGE_EXIT, "usage", message)
        raise SystemExit(USAGE_EXIT)


def _parse_field(text: str) -> Field:
    if text.isdigit():
        text = f"Fp:{text}"
    return field_from_tag(text)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"malformed JSON in {path}: {exc}") from exc


class _UsageError(Exception):
    pass


def _deliver(payload: dict, args, human_lines: list[str]) -> None:
    text = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for line in human_lines:
            print(line)
        if args.out:
            print(f"wrote {args.out}")


def _splitting_block(center: ProjectionCenter, kind: str) -> dict:
    ladder = twist_ladder(center, kind)
    st = splitting_from_ladder(ladder)
    return splitting_to_json(st, ladder, True)


def cmd_analyze(args) -> int:
    center = center_from_json(_load_json(args.center))
    if not ordinary_singularities(center):
        try:
            splitting_type(center, "normal")
        except NotImmersiveError as exc:
            F = center.field
            cusps = [[F.to_str(u), F.to_str(v)] for u, v in exc.cusps]
            _emit_error(COMPUTATION_EXIT, "computation", str(exc), cusps=cusps)
            return COMPUTATION_EXIT
    normal = _splitting_block(center, "normal")
    tangent = _splitting_block(center, "tangent")
    smooth = smooth_image(center)
    payload = {
        "center": {"n": center.n, "k": center.k, "field": center.field.tag},
        "normal": normal,
        "tangent": tangent,
        "smooth": smooth,
    }
    lines = [
        f"center: n={center.n} k={center.k} field={center.field.tag}",
        "ordinary singularities: yes",
        f"normal splitting:  {summands_key(normal['summands'])}  h_ladder={normal['h_ladder']}",
        f"tangent splitting: {summands_key(tangent['summands'])}  h_ladder={tangent['h_ladder']}",
        f"smooth image: {'undecided' if smooth is None else ('yes' if smooth else 'no')}",
    ]
    _deliver(payload, args, lines)
    return 0


def cmd_construct(args) -> int:
    if (args.rho is None) == (args.delta is None):
        raise _UsageError("give exactly one of --rho or --delta")
    if args.rho is not None:
        kind, min_mult = "normal", args.rho
    else:
        kind, min_mult = "tangent", args.delta
    if args.kind and args.kind != kind:
        raise _UsageError(f"--kind {args.kind} contradicts the {'--rho' if kind == 'normal' else '--delta'} flag")
    spec = StratumSpec(kind, args.n, args.k, min_mult)
    field = _parse_field(args.field)
    center, system = construct_special_center(spec, args.seed, field)
    computed_ladder = twist_ladder(center, kind)
    computed = splitting_from_ladder(computed_ladder)
    predicted = generic_splitting(spec)
    payload = {
        "center": center_to_json(center),
        "generators": dual_system_to_json(system),
        "spec": spec.as_dict(),
        "predicted": list(predicted.summands),
        "computed": splitting_to_json(computed, computed_ladder, True),
        "codim": stratum_codim(spec),
        "agrees": computed == predicted,
        "seed": args.seed,
    }
    lines = [
        f"stratum: kind={kind} n={args.n} k={args.k} min_mult={min_mult} "
        f"(codim {payload['codim']})",
        f"predicted splitting: {predicted}",
        f"computed splitting:  {computed}",
        f"agreement: {'yes' if payload['agrees'] else 'NO'}",
    ]
    _deliver(payload, args, lines)
    return 0


def _forms_from_file(obj, field: Field) -> list[BinaryForm]:
    if isinstance(obj, dict) and "forms" in obj:
        obj = obj["forms"]
    if isinstance(obj, dict):
        return [form_from_json(obj, field)]
    if isinstance(obj, list):
        return [form_from_json(item, field) for item in obj]
    raise SchemaError("form file: expected a form object or a list of them")


def cmd_waring(args) -> int:
    field = _parse_field(args.field)
    forms = _forms_from_file(_load_json(args.form), field)
    F = field
    if len(forms) == 1:
        f = forms[0]
        rank, witness = waring_witness(f)
        payload = {
            "field": field.tag,
            "n": f.degree,
            "rank": rank,
            "witness": None if witness is None else [F.to_str(c) for c in witness.coeffs],
        }
        lines = [f"degree {f.degree} form over {field.tag}: rank {rank}"]
        if witness is not None:
            shown = ", ".join(F.to_str(c) for c in witness.coeffs)
            lines.append(f"squarefree annihilator of degree {rank}: [{shown}]")
        if args.decompose:
            if witness is None:
                payload["decomposition"] = None
                lines.append("no squarefree annihilator found at the rank degree")
            else:
                try:
                    terms = decompose(f, witness)
                    payload["decomposition"] = [
                        {
                            "coefficient": F.to_str(c),
                            "linear_form": [F.to_str(L.u), F.to_str(L.v)],
                            "power": L.n,
                        }
                        for c, L in terms
                    ]
                    lines.extend(
                        f"  + {F.to_str(c)} * ({F.to_str(L.u)}*x0 + {F.to_str(L.v)}*x1)^{L.n}"
                        for c, L in terms
                    )
                except ValueError as exc:
                    payload["decomposition"] = None
                    lines.append(f"no explicit decomposition over {field.tag}: {exc}")
        _deliver(payload, args, lines)
        return 0
    # Several forms: smallest degree with a common annihilator.
    min_degree = min(f.degree for f in forms)
    common_e = None
    basis = []
    for e in range(1, min_degree + 1):
        basis = simultaneous_apolar(forms, e)
        if basis:
            common_e = e
            break
    payload = {
        "field": field.tag,
        "degrees": [f.degree for f in forms],
        "ranks": [waring_rank(f) for f in forms],
        "common_degree": common_e,
        "common_basis": [[F.to_str(c) for c in g.coeffs] for g in basis],
    }
    lines = [
        f"{len(forms)} forms of degrees {payload['degrees']} over {field.tag}; "
        f"ranks {payload['ranks']}"
    ]
    if common_e is None:
        lines.append("no common annihilator up to the smallest degree")
    else:
        lines.append(f"smallest common annihilator degree: {common_e} (dimension {len(basis)})")
        member = squarefree_member(basis)
        if member is not None and args.decompose:
            payload["simultaneous"] = []
            for f in forms:
                try:
                    terms = decompose(f, member)
                except ValueError as exc:
                    payload["simultaneous"].append(None)
                    lines.append(f"  degree-{f.degree} form: no split decomposition ({exc})")
                    continue
                payload["simultaneous"].append(
                    [
                        {
                            "coefficient": F.to_str(c),
                            "linear_form": [F.to_str(L.u), F.to_str(L.v)],
                            "power": L.n,
                        }
                        for c, L in terms
                    ]
                )
                lines.append(f"  degree-{f.degree} form: {len(terms)} common-point terms")
    _deliver(payload, args, lines)
    return 0


def cmd_formulas(args) -> int:
    n, k = args.n, args.k
    rows = []
    if args.rho is not None:
        wanted = [("normal", args.rho)]
    elif args.delta is not None:
        wanted = [("tangent", args.delta)]
    else:
        wanted = [
            ("normal", m) for m in range(generic_min_mult("normal", n, k), n - k - 1)
        ] + [
            ("tangent", m) for m in range(generic_min_mult("tangent", n, k), n - k)
        ]
    for kind, m in wanted:
        spec = StratumSpec(kind, n, k, m)
        st = generic_splitting(spec)
        feasible, _ = spec.construction_feasible()
        rows.append(
            {
                "kind": kind,
                "min_mult": m,
                "summands": list(st.summands),
                "rank": st.rank,
                "codim": stratum_codim(spec),
                "constructible": feasible,
            }
        )
    payload = {"n": n, "k": k, "rows": rows}
    lines = [f"strata for n={n}, k={k}:"]
    lines.append(f"{'kind':<8} {'mult':>4} {'codim':>5} {'rank':>4}  splitting")
    for r in rows:
        mark = "" if r["constructible"] else "  [not constructible]"
        lines.append(
            f"{r['kind']:<8} {r['min_mult']:>4} {r['codim']:>5} {r['rank']:>4}  "
            f"{summands_key(r['summands'])}{mark}"
        )
    _deliver(payload, args, lines)
    return 0


def cmd_survey(args) -> int:
    field = _parse_field(args.field)
    result = survey_generic(args.n, args.k, args.trials, args.seed, field)
    payload = survey_to_json(result)
    payload["seed"] = args.seed
    lines = [
        f"survey n={args.n} k={args.k} over {field.tag}: {args.trials} trials, "
        f"{result.immersive} immersive, {result.non_immersive} non-immersive, "
        f"{result.degenerate} degenerate"
    ]
    for kind in ("normal", "tangent"):
        hist = result.histogram(kind)
        total = sum(hist.values()) or 1
        lines.append(f"{kind}:")
        for summands, count in sorted(hist.items(), key=lambda kv: (-kv[1], kv[0])):
            lines.append(f"  {summands_key(summands):<16} {count:>6}  ({100.0 * count / total:.2f}%)")
    _deliver(payload, args, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rncurves", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_seed=False, with_trials=False, field_default="Q"):
        p.add_argument("--field", default=field_default, help="Q or Fp:<prime> (or a bare prime)")
        p.add_argument("--json", action="store_true", help="machine JSON on stdout")
        p.add_argument("--out", default=None, help="write the JSON payload to this file")
        if with_seed:
            p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
        if with_trials:
            p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("analyze", help="splitting report for a center file")
    p.add_argument("center", help="path to a center JSON file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a center realizing a stratum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rho", type=int, default=None, help="minimal-summand count, normal bundle")
    p.add_argument("--delta", type=int, default=None, help="minimal-summand count, tangent bundle")
    p.add_argument("--kind", choices=("normal", "tangent"), default=None)
    common(p, with_seed=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("waring", help="rank / decomposition of form file entries")
    p.add_argument("form", help="path to a form JSON file (object or list)")
    p.add_argument("--rank", action="store_true", help="rank only (default)")
    p.add_argument("--decompose", action="store_true", help="also emit explicit terms")
    common(p)
    p.set_defaults(func=cmd_waring)

    p = sub.add_parser("formulas", help="stratum table: splittings and codimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rho", type=int, default=None)
    p.add_argument("--delta", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("survey", help="histogram splitting types of random centers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    # Surveys default to a large prime field; rank statistics there match
    # the rationals off a low-probability locus and run much faster.
    common(p, with_seed=True, with_trials=True, field_default=f"Fp:{SURVEY_PRIME}")
    p.set_defaults(func=cmd_survey)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        _emit_error(USAGE_EXIT, "usage", str(exc))
        return USAGE_EXIT
    except NotImmersiveError as exc:
        _emit_error(COMPUTATION_EXIT, "computation", str(exc))
        return COMPUTATION_EXIT
    except ConstructionError as exc:
        _emit_error(COMPUTATION_EXIT, "computation", str(exc))
        return COMPUTATION_EXIT
    except (SchemaError, InfeasibleStratumError, ValueError) as exc:
        _emit_error(VALIDATION_EXIT, "validation", str(exc))
        return VALIDATION_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
