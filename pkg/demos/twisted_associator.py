"""A strict 2-group whose skeleton cannot be made strict.

Z4 maps to Z4 by doubling and the odd elements act by negation.  Both
pi0 and pi1 are Z/2, yet the associator of the skeleton is the xyz cocycle up
to a coboundary, so the skeleton carries a nonzero class.
"""

import numpy as np

from grcat import crossedmod as xm
from grcat import grcore
from grcat.cohomology import Cochain, class_equal, cohomology_group
from grcat.fingroup import cyclic_group, trivial_action

Z4 = cyclic_group(4)
neg = [[0, 1, 2, 3], [0, 3, 2, 1]] * 2
X = xm.validate(Z4, Z4, [0, 2, 0, 2], neg)

sk = xm.skeletalize(X)
cat = sk.category
print("pi0 order", cat.G.order, " pi1 moduli", cat.A.moduli)
print("associator table (g h k -> a):")
for args, v in cat.assoc.items():
    if v:
        print("  ", *args, "->", v)

H3 = cohomology_group(cat.action, 3)
print("H^3 =", H3.describe(), " coordinates of the class:", H3.coordinates(cat.assoc))

# a second round of arbitrary choices lands in the same class
rng = np.random.default_rng(1)
other = xm.skeletalize(X, rng).category
print("re-chosen skeleton same class:", bool(class_equal(cat.assoc, other.assoc)))

# compare with the hand-written cocycle xyz on the same data
act = trivial_action(cyclic_group(2), cyclic_group(2))
xyz = Cochain.from_function(act, 3, lambda x, y, z: x * y * z)
ref = grcore.build(act.group, act.module, act, xyz)
res = grcore.equivalent(cat, ref)
print("equivalent to (Z2, Z2, trivial, xyz):", bool(res))
print("  witness f with df = a' - a:", dict(res.f.items()))

strict = xm.strict_skeletal_model(cat)
print("equivalent to a strict skeletal model:", bool(grcore.equivalent(cat, strict)))
