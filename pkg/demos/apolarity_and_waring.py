"""
Apolarity and Waring decomposition of binary forms
==================================================

A binary form of degree n is stored by its catalecticant coordinates:
f = sum_d binom(n, d) * a_d * x0^(n-d) x1^d.  In these coordinates the
action of a constant-coefficient differential operator is a Hankel
convolution, and everything below runs in exact arithmetic.
"""

from rncurves.fields import GF, QQ
from rncurves.forms import (
    BinaryForm,
    DualForm,
    catalecticant,
    contract,
    decompose,
    waring_rank,
    waring_witness,
)


def rational(values):
    return BinaryForm(QQ, [QQ.parse(str(v)) for v in values])


# -- contraction and catalecticants ---------------------------------------

# x0^2 x1^2 in monomial coordinates is (0, 0, 1, 0, 0) scaled by 1/6 in
# catalecticant coordinates
f = BinaryForm.from_monomial_coeffs(QQ, [QQ.parse(c) for c in "0 0 1 0 0".split()])
print("x0^2 x1^2 catalecticant coords:", [QQ.to_str(a) for a in f.coeffs])

d1 = DualForm(QQ, [QQ.zero, QQ.one])  # the operator d/dx1
print("d/dx1 . f =", [QQ.to_str(a) for a in contract(d1, f).coeffs])

# the degree-2 catalecticant of x0^2 x1^2 is an anti-diagonal Hankel slice
cat = catalecticant(f, 2)
print("Cat(2,2) rank:", cat.rank())

# -- Waring rank via the apolar ideal --------------------------------------

# the quintic with a 3-secant certificate: 2x0^5 + 5x0^4x1 + ... + 2x1^5
quintic = rational([2, 1, 1, 1, 1, 2])
rank, witness = waring_witness(quintic)
print("rank:", rank)
print("witness operator:", [QQ.to_str(c) for c in witness.coeffs])

# the witness has simple roots, so the form is a sum of rank pure powers
for coeff, power in decompose(quintic, witness):
    print(
        f"  {QQ.to_str(coeff)} * "
        f"({QQ.to_str(power.u)}*x0 + {QQ.to_str(power.v)}*x1)^{power.n}"
    )

# monomials x0^a x1^b with a, b >= 1 have rank max(a, b) + 1, which can
# exceed the generic rank: the annihilator roots are forced to collide
mono = BinaryForm.from_monomial_coeffs(QQ, [QQ.parse(c) for c in "0 1 0 0 0".split()])
print("rank of x0^3 x1:", waring_rank(mono))

# -- certificates without rational roots ------------------------------------

# this quartic has an irrational pair of apolar roots; the witness still
# certifies the rank even though no decomposition exists over Q
quartic = rational([1, 0, -1, 0, 1])
q_rank, q_witness = waring_witness(quartic)
print("rank over Q:", q_rank)
try:
    decompose(quartic, q_witness)
except ValueError as exc:
    print("decomposition refused:", exc)

# -- the same computations over a large prime field ------------------------

F = GF(32003)
quintic_p = BinaryForm(F, [F.from_int(c) for c in (2, 1, 1, 1, 1, 2)])
print("rank mod 32003:", waring_rank(quintic_p))
