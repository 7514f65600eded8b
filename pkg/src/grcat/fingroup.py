"""Finite groups as multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Everything here is immutable after validation.
"""

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import (
    MissingInverse,
    NoIdentityAtZero,
    NotAbelian,
    NotAssociative,
    NotAutomorphism,
    NotClosed,
    NotFunctorial,
    NotHomomorphic,
    NotNormal,
    NotSubgroup,
    OrderBound,
    ValidationError,
)
from .linalg import smith_normal_form

DEFAULT_MAX_ORDER = 24


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class FiniteGroup:
    """A validated finite group; build one with :func:`validate_group`."""

    def __init__(self, table, inverse):
        self.table = _frozen(table)
        self.inverse = _frozen(inverse)

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, *elems):
        r = 0
        for x in elems:
            r = int(self.table[r, x])
        return r

    def inv(self, x):
        return int(self.inverse[x])

    def conj(self, g, h):
        """``g h g^-1``"""
        return self.mul(g, h, self.inv(g))

    def power(self, x, k):
        if k < 0:
            x, k = self.inv(x), -k
        r = 0
        for _ in range(k):
            r = int(self.table[r, x])
        return r

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def element_orders(self):
        return [self.element_order(x) for x in self]

    @property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def center(self):
        return [z for z in self if np.array_equal(self.table[z, :], self.table[:, z])]

    def generated(self, gens):
        """Sorted elements of the subgroup generated by ``gens``."""
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def generators(self):
        """Greedy generating set, preferring elements of large order."""
        orders = self.element_orders()
        gens, span = [], {0}
        while len(span) < self.order:
            x = max((y for y in self if y not in span), key=lambda y: (orders[y], -y))
            gens.append(x)
            span = set(self.generated(gens))
        return gens


def validate_group(table):
    """Validate a multiplication table and return a :class:`FiniteGroup`.

    Checks closure, identity at index 0, inverses and associativity, in that
    order; the raised error names the first violating tuple.
    """
    T = np.array(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise ValidationError(f"table must be a non-empty square matrix, got shape {T.shape}")
    if not np.issubdtype(T.dtype, np.integer):
        raise ValidationError("table entries must be integers")
    n = T.shape[0]
    T = T.astype(np.int64)
    bad = np.argwhere((T < 0) | (T >= n))
    if len(bad):
        i, j = map(int, bad[0])
        raise NotClosed(f"entry [{i}][{j}] = {T[i, j]} is outside [0, {n})", witness=(i, j))
    ar = np.arange(n)
    for i in range(n):
        if T[0, i] != i or T[i, 0] != i:
            raise NoIdentityAtZero(f"0 is not a two-sided identity for element {i}", witness=(i,))
    inverse = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        cands = np.flatnonzero((T[i, :] == 0) & (T[:, i] == 0))
        if len(cands) == 0:
            raise MissingInverse(f"element {i} has no two-sided inverse", witness=(i,))
        inverse[i] = cands[0]
    lhs = T[T, :]  # (i*j)*k
    rhs = T[ar[:, None, None], T[None, :, :]]  # i*(j*k)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = map(int, bad[0])
        raise NotAssociative(f"({i}*{j})*{k} != {i}*({j}*{k})", witness=(i, j, k))
    return FiniteGroup(T, inverse)


# ---------------------------------------------------------------------------
# standard groups


def trivial_group():
    return validate_group([[0]])


def cyclic_group(n):
    ar = np.arange(n)
    return validate_group((ar[:, None] + ar[None, :]) % n)


def _radix_index(coords, moduli):
    idx = 0
    for c, m in zip(coords, moduli):
        idx = idx * m + c
    return idx


def direct_product(G, H):
    """``G x H`` with element ``(g, h)`` at index ``g * |H| + h``."""
    n, m = G.order, H.order
    T = np.empty((n * m, n * m), dtype=np.int64)
    for a, b in itertools.product(range(n * m), repeat=2):
        g1, h1 = divmod(a, m)
        g2, h2 = divmod(b, m)
        T[a, b] = G.table[g1, g2] * m + H.table[h1, h2]
    return validate_group(T)


def product_of_cyclic(moduli):
    """``Z/m1 x ... x Z/mk`` with mixed-radix indexing, last factor fastest."""
    moduli = tuple(int(m) for m in moduli)
    n = prod(moduli)
    tuples = list(itertools.product(*[range(m) for m in moduli]))
    T = np.empty((n, n), dtype=np.int64)
    for a, x in enumerate(tuples):
        for b, y in enumerate(tuples):
            T[a, b] = _radix_index([(u + v) % m for u, v, m in zip(x, y, moduli)], moduli)
    return validate_group(T)


def permutation_group(perms):
    """Group of the given permutations (tuples) under composition.

    ``perms[0]`` must be the identity.  Product ``p*q`` is "apply q, then p".
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    T = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            r = tuple(p[q[x]] for x in range(len(q)))
            if r not in index:
                raise NotClosed("permutations are not closed under composition", witness=(i, j))
            T[i, j] = index[r]
    return validate_group(T)


def symmetric_group(n):
    """``S_n`` with permutations in lexicographic order (identity first)."""
    return permutation_group(itertools.permutations(range(n)))


def dihedral_group(n):
    """Symmetries of the n-gon: rotations ``0..n-1`` then reflections."""
    rots = [tuple((x + k) % n for x in range(n)) for k in range(n)]
    refl = [tuple((k - x) % n for x in range(n)) for k in range(n)]
    return permutation_group(rots + refl)


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """A validated homomorphism; build one with :func:`make_hom`."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = _frozen(images)

    def __call__(self, x):
        return int(self.images[x])

    def __repr__(self):
        return f"GroupHom({self.source.order} -> {self.target.order}, {self.images.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and np.array_equal(self.images, other.images)
        )

    def __hash__(self):
        return hash(self.images.tobytes())

    def compose(self, other):
        """``self after other``"""
        return GroupHom(other.source, self.target, self.images[other.images])

    def kernel(self):
        return [int(x) for x in np.flatnonzero(self.images == 0)]

    def image(self):
        return sorted(set(int(x) for x in self.images))

    @property
    def is_injective(self):
        return len(set(self.images.tolist())) == self.source.order

    @property
    def is_surjective(self):
        return len(set(self.images.tolist())) == self.target.order

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def inverse(self):
        if not self.is_bijective:
            raise ValidationError("homomorphism is not bijective")
        inv = np.empty(self.source.order, dtype=np.int64)
        inv[self.images] = np.arange(self.source.order)
        return GroupHom(self.target, self.source, inv)


def identity_hom(G):
    return GroupHom(G, G, np.arange(G.order))


def _hom_violation(src, tgt, images):
    lhs = images[src.table]
    rhs = tgt.table[images[:, None], images[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(map(int, bad[0]))
    return None


def make_hom(src, tgt, images):
    """Validate ``images`` as a homomorphism ``src -> tgt``."""
    images = np.asarray(images, dtype=np.int64)
    if images.shape != (src.order,):
        raise ValidationError(f"expected {src.order} images, got shape {images.shape}")
    if np.any((images < 0) | (images >= tgt.order)):
        raise ValidationError("image index out of range")
    bad = _hom_violation(src, tgt, images)
    if bad is not None:
        i, j = bad
        raise NotHomomorphic(f"images[{i}*{j}] != images[{i}]*images[{j}]", witness=(i, j))
    return GroupHom(src, tgt, images)


def _check_bound(max_order, *groups):
    for G in groups:
        if G.order > max_order:
            raise OrderBound(f"group order {G.order} exceeds bound {max_order}")


def _extend(G, G2, gens, imgs):
    """Extend generator images along the Cayley graph; None if inconsistent."""
    images = np.full(G.order, -1, dtype=np.int64)
    images[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, imgs):
                y = int(G.table[x, s])
                v = int(G2.table[images[x], t])
                if images[y] == -1:
                    images[y] = v
                    nxt.append(y)
                elif images[y] != v:
                    return None
        frontier = nxt
    return images


def isomorphisms(G, G2, max_order=DEFAULT_MAX_ORDER):
    """All isomorphisms ``G -> G2``, sorted by image tuple."""
    _check_bound(max_order, G, G2)
    if G.order != G2.order:
        return []
    ord1, ord2 = G.element_orders(), G2.element_orders()
    if sorted(ord1) != sorted(ord2):
        return []
    found = []
    if G.order < 9:
        rest = list(range(1, G.order))
        for perm in itertools.permutations(rest):
            images = np.array((0,) + perm, dtype=np.int64)
            if any(ord1[x] != ord2[images[x]] for x in rest):
                continue
            if _hom_violation(G, G2, images) is None:
                found.append(images)
    else:
        gens = G.generators()
        cands = [[y for y in G2 if ord2[y] == ord1[s]] for s in gens]
        for imgs in itertools.product(*cands):
            images = _extend(G, G2, gens, imgs)
            if images is None or len(set(images.tolist())) != G.order:
                continue
            if _hom_violation(G, G2, images) is None:
                found.append(images)
    found.sort(key=lambda a: tuple(a.tolist()))
    return [GroupHom(G, G2, im) for im in found]


def automorphisms(G, max_order=DEFAULT_MAX_ORDER):
    return isomorphisms(G, G, max_order)


def are_isomorphic(G, G2, max_order=DEFAULT_MAX_ORDER):
    return bool(isomorphisms(G, G2, max_order))


# ---------------------------------------------------------------------------
# subgroups and quotients


def subgroup(G, elems):
    """The subgroup on ``elems`` as its own group, plus the inclusion.

    Subgroup element ``i`` is the ``i``-th smallest of ``elems``.
    """
    elems = sorted(set(int(x) for x in elems))
    if not elems or elems[0] != 0:
        raise NotSubgroup("subset does not contain the identity", witness=(0,))
    pos = {x: i for i, x in enumerate(elems)}
    m = len(elems)
    T = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            z = int(G.table[x, y])
            if z not in pos:
                raise NotSubgroup(f"{x}*{y} = {z} leaves the subset", witness=(x, y))
            T[i, j] = pos[z]
    H = validate_group(T)
    return H, GroupHom(H, G, elems)


@dataclass(frozen=True)
class SubgroupQuotient:
    subgroup: FiniteGroup
    inclusion: GroupHom
    quotient: FiniteGroup
    projection: GroupHom


def quotient_by(G, elems):
    """Quotient of ``G`` by a normal subset; cosets ordered by least element."""
    N = sorted(set(int(x) for x in elems))
    Nset = set(N)
    for g in G:
        for n in N:
            if G.conj(g, n) not in Nset:
                raise NotNormal(f"{g}*{n}*{g}^-1 not in subgroup", witness=(g, n))
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in G:
        if label[g] == -1:
            for n in N:
                label[G.mul(g, n)] = len(reps)
            reps.append(g)
    k = len(reps)
    T = np.empty((k, k), dtype=np.int64)
    for a, x in enumerate(reps):
        for b, y in enumerate(reps):
            T[a, b] = label[G.table[x, y]]
    Q = validate_group(T)
    return Q, GroupHom(G, Q, label)


def normal_subgroup(G, elems):
    """Subgroup, inclusion, quotient group and projection for a normal subset."""
    H, incl = subgroup(G, elems)
    Q, proj = quotient_by(G, incl.images)
    return SubgroupQuotient(H, incl, Q, proj)


def commutator_subgroup(G):
    comms = {G.mul(x, y, G.inv(x), G.inv(y)) for x in G for y in G}
    return G.generated(sorted(comms))


def abelianization(G):
    """``(G_ab, projection)``"""
    return quotient_by(G, commutator_subgroup(G))


# ---------------------------------------------------------------------------
# abelian groups


class AbelianGroup:
    """An abelian group together with a cyclic decomposition.

    ``coords[x]`` is the tuple of ``x`` in ``Z/m1 x ... x Z/mk`` and
    ``moduli`` is a divisor chain.  The decomposition is a group isomorphism.
    """

    def __init__(self, group, moduli, coords):
        self.group = group
        self.moduli = tuple(int(m) for m in moduli)
        self.coords = _frozen(np.asarray(coords, dtype=np.int64).reshape(group.order, len(self.moduli)))
        lookup = np.empty(group.order, dtype=np.int64)
        for x in range(group.order):
            lookup[_radix_index(self.coords[x], self.moduli)] = x
        self._lookup = _frozen(lookup)

    def __repr__(self):
        return f"AbelianGroup(moduli={self.moduli})"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.group == other.group

    def __hash__(self):
        return hash(self.group)

    @property
    def order(self):
        return self.group.order

    @property
    def table(self):
        return self.group.table

    @property
    def rank(self):
        return len(self.moduli)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.group)

    def add(self, *elems):
        return self.group.mul(*elems)

    def neg(self, x):
        return self.group.inv(x)

    def sub(self, x, y):
        return self.group.mul(x, self.group.inv(y))

    def scale(self, k, x):
        return self.group.power(x, k)

    def to_coords(self, x):
        return tuple(int(c) for c in self.coords[x])

    def from_coords(self, c):
        c = [int(v) % m for v, m in zip(c, self.moduli)]
        return int(self._lookup[_radix_index(c, self.moduli)])

    def generator(self, j):
        e = [0] * self.rank
        e[j] = 1
        return self.from_coords(e)


def _is_divisor_chain(moduli):
    return all(b % a == 0 for a, b in zip(moduli, moduli[1:]))


def cyclic_decomposition(A):
    """Invariant-factor decomposition of a finite abelian group.

    Accepts a :class:`FiniteGroup` (or an :class:`AbelianGroup`, returned
    unchanged).  Relations among a generating set are read off a spanning tree
    of the Cayley graph and reduced by Smith normal form.
    """
    if isinstance(A, AbelianGroup):
        return A
    if not A.is_abelian:
        bad = np.argwhere(A.table != A.table.T)[0]
        raise NotAbelian(f"{bad[0]}*{bad[1]} != {bad[1]}*{bad[0]}", witness=tuple(map(int, bad)))
    if A.order == 1:
        return AbelianGroup(A, (), np.zeros((1, 0)))
    gens = A.generators()
    r = len(gens)
    coord = {0: [0] * r}
    frontier = [0]
    relations = []
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = int(A.table[x, s])
                c = list(coord[x])
                c[i] += 1
                if y in coord:
                    rel = [a - b for a, b in zip(c, coord[y])]
                    if any(rel):
                        relations.append(rel)
                else:
                    coord[y] = c
                    nxt.append(y)
        frontier = nxt
    snf = smith_normal_form(relations, rows=0, cols=r, transforms="V")
    d = [int(snf.D[i, i]) if i < min(snf.D.shape) else 0 for i in range(r)]
    # Z^r / L  ->  (+) Z/d_i  via  v -> v V
    keep = [i for i in range(r) if d[i] != 1]
    moduli = [d[i] for i in keep]
    coords = np.empty((A.order, len(keep)), dtype=np.int64)
    for x in A:
        w = np.array(coord[x], dtype=object).dot(snf.V)
        coords[x] = [int(w[i]) % d[i] for i in keep]
    return AbelianGroup(A, moduli, coords)


def abelian_group(moduli):
    """``Z/m1 x ... x Z/mk`` as an :class:`AbelianGroup`."""
    moduli = [int(m) for m in moduli if int(m) != 1]
    G = product_of_cyclic(moduli)
    if _is_divisor_chain(moduli):
        coords = list(itertools.product(*[range(m) for m in moduli]))
        return AbelianGroup(G, moduli, np.array(coords, dtype=np.int64).reshape(G.order, len(moduli)))
    return cyclic_decomposition(G)


def invariant_factors_of_order(order_counts):
    """Invariant factors of a finite abelian group from an order census.

    ``order_counts`` maps each element order to the number of elements of that
    order.  This avoids linear algebra entirely and serves as an oracle.
    """
    n = sum(order_counts.values())
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    factors = []
    for p in primes:
        # c_j = log_p |{x : p^j x = 0}| restricted to the p-part
        def killed(e):
            return sum(c for o, c in order_counts.items() if e % o == 0 and _p_part(o, p) == o)

        logs = [0]
        j = 1
        while True:
            size = killed(p ** j)
            k = round(np.log(size) / np.log(p))
            logs.append(k)
            if k == logs[-2]:
                break
            j += 1
        # number of cyclic factors of order >= p^j is logs[j] - logs[j-1]
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        parts = []
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            parts += [p ** j] * (cnt - nxt)
        factors.append(sorted(parts, reverse=True))
    # combine p-parts into a divisor chain
    width = max((len(f) for f in factors), default=0)
    chain = []
    for i in range(width):
        chain.append(prod(f[i] for f in factors if i < len(f)))
    return sorted(chain)


def _p_part(o, p):
    r = 1
    while o % p == 0:
        o //= p
        r *= p
    return r


# ---------------------------------------------------------------------------
# actions on abelian groups


class GAction:
    """A validated action of ``group`` on ``module`` by automorphisms."""

    def __init__(self, group, module, perms):
        self.group = group
        self.module = module
        self.perms = _frozen(perms)
        k = module.rank
        mats = np.zeros((group.order, k, k), dtype=np.int64)
        for g in group:
            for j in range(k):
                mats[g, :, j] = module.coords[self.perms[g, module.generator(j)]]
        self.matrices = _frozen(mats)

    def __call__(self, g, x):
        return int(self.perms[g, x])

    def __repr__(self):
        return f"GAction({self.group.order} on {self.module.moduli})"

    def __eq__(self, other):
        return (
            isinstance(other, GAction)
            and self.group == other.group
            and self.module == other.module
            and np.array_equal(self.perms, other.perms)
        )

    def __hash__(self):
        return hash(self.perms.tobytes())

    @property
    def is_trivial(self):
        return bool(np.all(self.perms == np.arange(self.module.order)[None, :]))


def make_action(G, A, perms):
    """Validate ``perms[g][x] = rho(g)(x)`` as an action by automorphisms."""
    A = cyclic_decomposition(A)
    P = np.asarray(perms, dtype=np.int64)
    if P.shape != (G.order, A.order):
        raise ValidationError(f"expected perms of shape {(G.order, A.order)}, got {P.shape}")
    for g in G:
        row = P[g]
        if np.any((row < 0) | (row >= A.order)) or len(set(row.tolist())) != A.order:
            raise NotAutomorphism(f"rho({g}) is not a bijection", witness=(g,))
        if _hom_violation(A.group, A.group, row) is not None:
            raise NotAutomorphism(f"rho({g}) is not a homomorphism", witness=(g,))
    if not np.array_equal(P[0], np.arange(A.order)):
        raise NotFunctorial("rho(identity) is not the identity", witness=(0, 0))
    for g in G:
        for h in G:
            if not np.array_equal(P[G.table[g, h]], P[g][P[h]]):
                raise NotFunctorial(f"rho({g}*{h}) != rho({g}) rho({h})", witness=(g, h))
    return GAction(G, A, P)


def trivial_action(G, A):
    A = cyclic_decomposition(A)
    return GAction(G, A, np.tile(np.arange(A.order), (G.order, 1)))

