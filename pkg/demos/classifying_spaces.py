"""Low-dimensional homology of nerves.

H_1 of K(G, 1) is the abelianization; for the nerve of a 2-group it is the
abelianization of pi0, and pi1 starts to show in H_2.
"""

from grcat import crossedmod as xm
from grcat import nerve
from grcat.fingroup import cyclic_group, dihedral_group, make_hom, symmetric_group

for name, G in [("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)), ("S3", symmetric_group(3)), ("D4", dihedral_group(4))]:
    S = nerve.nerve_group(G, 3)
    counts = [S.count(n) for n in range(4)]
    print(f"K({name},1): simplices {counts}", nerve.check_simplicial(S).line(), *nerve.homology(S).lines()[1:])

Z4, Z2 = cyclic_group(4), cyclic_group(2)
two_groups = {
    "Z4 <- Z2 (normal)": xm.from_normal_subgroup(Z4, [0, 2]),
    "Z2 <- Z4 (central)": xm.from_central_extension(make_hom(Z4, Z2, [0, 1, 0, 1])),
    "Z4 <- Z4 (twisted)": xm.validate(Z4, Z4, [0, 2, 0, 2], [[0, 1, 2, 3], [0, 3, 2, 1]] * 2),
}
for name, X in two_groups.items():
    S = nerve.nerve_two_group(xm.to_strict_two_group(X), 3)
    counts = [S.count(n) for n in range(4)]
    print(f"B[{name}]: simplices {counts}", nerve.check_simplicial(S).line(), *nerve.homology(S).lines()[1:])
