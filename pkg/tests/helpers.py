"""Fixtures and independent oracles shared by the test modules.

The oracles use plain Python loops or sympy and share no code with the
package beyond the group tables they are handed.
"""

import itertools
from functools import lru_cache
from pathlib import Path

import numpy as np

from grcat import crossedmod as xm
from grcat import grcore, piccat
from grcat.cohomology import Cochain, cohomology_group
from grcat.fingroup import (
    abelian_group,
    cyclic_decomposition,
    cyclic_group,
    dihedral_group,
    make_action,
    make_hom,
    product_of_cyclic,
    symmetric_group,
    trivial_action,
    trivial_group,
)

FIXTURES = Path(__file__).parent / "fixtures"

Z1 = trivial_group()
Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
Z4 = cyclic_group(4)
Z6 = cyclic_group(6)
K4 = product_of_cyclic([2, 2])
S3 = symmetric_group(3)
D4 = dihedral_group(4)
A3 = [g for g in S3 if S3.element_order(g) in (1, 3)]

NEG4 = [[0, 1, 2, 3], [0, 3, 2, 1]]


def negation_action(G, n):
    """Odd elements of a cyclic ``G`` act on ``Z/n`` by negation."""
    A = cyclic_group(n)
    perms = [[x if g % 2 == 0 else (-x) % n for x in range(n)] for g in G]
    return make_action(G, A, perms)


def xyz(action):
    return Cochain.from_function(action, 3, lambda x, y, z: x * y * z)


def indicator(action, args, value=1):
    return Cochain.from_function(action, 3, lambda *t: value if t == tuple(args) else 0)


def category(action, assoc=None):
    assoc = Cochain.zero(action, 3) if assoc is None else assoc
    return grcore.build(action.group, action.module, action, assoc)


TRIV22 = trivial_action(Z2, Z2)
TRIV23 = trivial_action(Z2, Z3)
TRIV33 = trivial_action(Z3, Z3)


@lru_cache(maxsize=None)
def gr_fixtures():
    """Named skeletal Gr-categories with small data."""
    out = {
        "zero22": category(TRIV22),
        "xyz22": category(TRIV22, xyz(TRIV22)),
        "zero23": category(TRIV23),
    }
    h33 = cohomology_group(TRIV33, 3)
    out["gen33"] = category(TRIV33, h33.representatives[0])
    neg = negation_action(Z2, 4)
    out["neg24"] = category(neg, cohomology_group(neg, 3).representatives[0])
    kk = trivial_action(K4, Z2)
    out["k4z2"] = category(kk, cohomology_group(kk, 3).representatives[-1])
    out["twisted"] = xm.skeletalize(twisted()).category
    return out


def twisted():
    """``Z4 -> Z4`` doubling with odd elements acting by negation."""
    return xm.validate(Z4, Z4, [0, 2, 0, 2], NEG4 * 2)


@lru_cache(maxsize=None)
def crossed_fixtures():
    return {
        "normal_z4": xm.from_normal_subgroup(Z4, [0, 2]),
        "normal_s3": xm.from_normal_subgroup(S3, A3),
        "normal_s3_trivial": xm.from_normal_subgroup(S3, [0]),
        "module_z2": xm.from_module_action(TRIV22),
        "module_z2_z4_neg": xm.from_module_action(negation_action(Z2, 4)),
        "module_1_z3": xm.from_module_action(trivial_action(Z1, Z3)),
        "central_z4_z2": xm.from_central_extension(make_hom(Z4, Z2, [0, 1, 0, 1])),
        "central_k4_z2": xm.from_central_extension(make_hom(K4, Z2, [0, 0, 1, 1])),
        "twisted": twisted(),
        "aut_d4": xm.aut_crossed_module(D4),
    }


def chain(c0, c1, d):
    return piccat.chain_from_moduli(c0, c1, d)


@lru_cache(maxsize=None)
def chain_fixtures():
    return {
        "zero": chain([], [], [0]),
        "z2_0_z2": chain([2], [2], [0, 0]),
        "z4_x2_z4": chain([4], [4], [0, 2, 0, 2]),
        "z6_x2_z6": chain([6], [6], [(2 * x) % 6 for x in range(6)]),
        "z3_0_z3": chain([3], [3], [0, 0, 0]),
        "z6_to_z3": chain([3], [6], [x % 3 for x in range(6)]),
        "z2_into_z4": chain([4], [2], [0, 2]),
    }


# ---------------------------------------------------------------------------
# oracles


def naive_coboundary(action, n, f):
    """Bar coboundary with plain loops; ``f`` maps n-tuples to module elements."""
    G, A = action.group, action.module
    q = G.order
    out = {}
    for t in itertools.product(range(q), repeat=n + 1):
        v = action(t[0], f[t[1:]])
        for i in range(1, n + 1):
            merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
            term = f[merged]
            v = A.add(v, term if i % 2 == 0 else A.neg(term))
        last = f[t[:n]]
        v = A.add(v, last if (n + 1) % 2 == 0 else A.neg(last))
        out[t] = v
    return out


def brute_cohomology_order(action, n):
    """``|Z^n| / |B^n|`` by enumerating every unnormalized cochain."""
    q, m = action.group.order, action.module.order
    cells = list(itertools.product(range(q), repeat=n))
    prev = list(itertools.product(range(q), repeat=n - 1))
    zero_next = None
    cocycles = 0
    for vals in itertools.product(range(m), repeat=len(cells)):
        f = dict(zip(cells, vals))
        d = naive_coboundary(action, n, f)
        if zero_next is None:
            zero_next = {k: 0 for k in d}
        if d == zero_next:
            cocycles += 1
    boundaries = set()
    for vals in itertools.product(range(m), repeat=len(prev)):
        f = dict(zip(prev, vals))
        d = naive_coboundary(action, n - 1, f)
        boundaries.add(tuple(d[c] for c in cells))
    return cocycles // len(boundaries)


def sympy_invariants(M):
    """Nonzero invariant factors through sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    M = Matrix(np.asarray(M, dtype=object).tolist())
    if M.rows == 0 or M.cols == 0:
        return []
    return [abs(int(x)) for x in invariant_factors(M, domain=ZZ) if x != 0]


def order_census(G):
    out = {}
    for g in G:
        o = G.element_order(g)
        out[o] = out.get(o, 0) + 1
    return out


def random_abelian(rng, max_order=24):
    while True:
        k = int(rng.integers(1, 3))
        moduli = [int(x) for x in rng.integers(1, 7, size=k)]
        if int(np.prod(moduli)) <= max_order:
            return abelian_group(moduli) if any(m > 1 for m in moduli) else cyclic_decomposition(Z1)


def read(name):
    return (FIXTURES / name).read_text()
