"""
Jumping strata: formulas, constructions, and random surveys
===========================================================

Centers whose normal bundle jumps away from the balanced splitting form
strata in the Grassmannian of centers.  The closed formulas predict the
splitting and the codimension of each stratum; the constructions build
exact witnesses; the survey confirms that random centers land on the
generic type.
"""

from rncurves.bundles import splitting_type
from rncurves.fields import QQ
from rncurves.strata import (
    StratumSpec,
    construct_special_center,
    generic_min_mult,
    generic_splitting,
    stratum_codim,
    survey_generic,
    verify_equivalence,
)

# -- the table of strata for septic space curves ---------------------------

n, k = 7, 2
print(f"strata for n={n}, k={k} (image lives in P^{n - k}):")
for kind in ("normal", "tangent"):
    lo = generic_min_mult(kind, n, k)
    hi = n - k - 2 if kind == "normal" else n - k - 1
    for mult in range(lo, hi + 1):
        spec = StratumSpec(kind, n, k, mult)
        splitting = generic_splitting(spec)
        feasible, reason = spec.construction_feasible()
        tag = "" if feasible else f"  [{reason}]"
        print(
            f"  {kind:<8} mult={mult}  codim={stratum_codim(spec)}  "
            f"{splitting.summands}{tag}"
        )

# -- constructing a witness on a positive-codimension stratum ---------------

spec = StratumSpec("normal", 7, 2, 1)
center, system = construct_special_center(spec, seed=1, field=QQ)
print()
print("constructed center for", spec.as_dict())
for p in center.points:
    print("  generator:", [QQ.to_str(c) for c in p.coeffs])
print(
    "annihilating dual forms of degree",
    system.generators[0].degree,
    "->",
    [[QQ.to_str(c) for c in g.coeffs] for g in system.generators],
)
computed = splitting_type(center, "normal")
print("computed:", computed.summands, "predicted:", generic_splitting(spec).summands)

# -- predicted versus computed over many seeds ------------------------------

reports = verify_equivalence(spec, trials=20, seed=7, field=QQ)
agreeing = sum(1 for r in reports if r.agrees)
print(f"agreement: {agreeing}/{len(reports)}")

# -- how rare are the jumps? -------------------------------------------------

survey = survey_generic(5, 2, trials=300, seed=99)
print()
print(f"survey over {survey.field_tag}: {survey.immersive} immersive centers")
for kind in ("normal", "tangent"):
    for summands, count in sorted(survey.histogram(kind).items()):
        print(f"  {kind:<8} {summands}: {count}")
