"""Two ways around the pentagon, and what a bad associator does to them."""

from grcat import coherence as co
from grcat.cohomology import Cochain
from grcat.fingroup import cyclic_group, trivial_action
from grcat.grcore import SkeletalGrCategory, build

act = trivial_action(cyclic_group(2), cyclic_group(2))
xyz = Cochain.from_function(act, 3, lambda x, y, z: x * y * z)
good = build(act.group, act.module, act, xyz)

t = co.parse("((w*x)*y)*z")
short = co.path_to_right_comb(t)  # rotate at the root twice
long = co.path_to_right_comb(t, "deep")  # three moves through the inner nodes


def show(path):
    cur = path.start
    print("  ", co.to_text(cur))
    for pos, d in path.moves:
        cur = co.rotate(cur, pos, d)
        print("   ->", co.to_text(cur), " at", "".join("LR"[s] for s in pos) or "root")


print("short side:")
show(short)
print("long side:")
show(long)

leaves = [1, 1, 1, 1]
print("values on", leaves, ":", co.evaluate_path(short, good, leaves), co.evaluate_path(long, good, leaves))
print(*co.coherence_check(good, 5).lines())

# a single nonzero entry at (1, 1, 0) is not a cocycle
bad_table = Cochain.from_function(act, 3, lambda *t: int(t == (1, 1, 0)))
bad = SkeletalGrCategory(act.group, act.module, act, bad_table)
print("values on", leaves, ":", co.evaluate_path(short, bad, leaves), co.evaluate_path(long, bad, leaves))
for line in co.coherence_check(bad, 4).lines():
    print(line)
