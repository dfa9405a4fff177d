"""
Projecting the degree-5 rational normal curve from a special line
=================================================================

A center of projection inside P^5 is spanned by binary quintics; the
script compares a line chosen inside a 3-secant plane against a random
line, reading off the splitting types of the normal bundle and the
restricted tangent bundle of the image curve in P^3.
"""

import random

from rncurves.bundles import (
    ProjectionCenter,
    normal_matrix,
    smooth_image,
    splitting_type,
    twist_ladder,
)
from rncurves.fields import QQ
from rncurves.forms import BinaryForm, random_form


def quintic(values):
    return BinaryForm(QQ, [QQ.from_int(v) for v in values])


# -- a line inside the 3-secant plane --------------------------------------

# both spanning quintics are sums of powers of the same three linear
# forms x0, x1, x0 + x1, so the center meets the span of three points
# of the curve
special = ProjectionCenter(
    [
        quintic([2, 1, 1, 1, 1, 2]),
        quintic([3, 2, 2, 2, 2, 1]),
    ]
)

# the presentation matrix of the normal bundle has full column rank for
# a generic center; here the 3-secant drops it
M = normal_matrix(special)
print("normal presentation matrix:", M.nrows, "x", M.ncols, "rank", M.rank())

# twisting and re-measuring kernel dimensions gives a ladder whose
# second differences are the summand multiplicities
ladder = twist_ladder(special, "normal")
print("h ladder:", list(ladder.h))

normal = splitting_type(special, "normal")
tangent = splitting_type(special, "tangent")
print("normal bundle:  O(-%d) + O(-%d)" % normal.summands)
print("tangent bundle: O(%s)" % ") + O(".join(str(-s) for s in tangent.summands))

# the image quintic in P^3 acquires a triple point, so it is singular
print("image curve smooth:", smooth_image(special))

# -- a random line for comparison -------------------------------------------

rng = random.Random(2026)
while True:
    try:
        generic = ProjectionCenter([random_form(QQ, 5, rng) for _ in range(2)])
        break
    except ValueError:
        continue

print()
print("random center:")
print("  normal: ", splitting_type(generic, "normal").summands)
print("  tangent:", splitting_type(generic, "tangent").summands)
print("  smooth: ", smooth_image(generic))
