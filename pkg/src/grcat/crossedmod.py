"""Crossed modules, strict 2-groups and skeletalization."""

from dataclasses import dataclass

import numpy as np

from .cohomology import Cochain
from .errors import (
    GrcatError,
    KernelNotCentral,
    NotAutomorphism,
    NotEquivariant,
    NotFunctorial,
    NotSurjective,
    PeifferFails,
    ValidationError,
)
from .fingroup import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    GroupHom,
    _hom_violation,
    automorphisms,
    cyclic_decomposition,
    isomorphisms,
    make_action,
    make_hom,
    normal_subgroup,
    permutation_group,
    quotient_by,
    subgroup,
    trivial_group,
    validate_group,
)
from . import grcore


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """``t: H -> G`` with ``G`` acting on ``H``; ``act[g, h] = rho(g) h``."""

    G: FiniteGroup
    H: FiniteGroup
    t: GroupHom
    act: np.ndarray

    def rho(self, g, h):
        return int(self.act[g, h])

    def __repr__(self):
        return f"CrossedModule(|G|={self.G.order}, |H|={self.H.order}, t={self.t.images.tolist()})"


def validate(G, H, t, act):
    """Check the crossed-module axioms and return a :class:`CrossedModule`.

    ``t`` may be a :class:`GroupHom` or a list of images.  Failures report the
    first violating pair in row-major order.
    """
    if not isinstance(t, GroupHom):
        t = make_hom(H, G, t)
    elif t.source != H or t.target != G:
        raise ValidationError("t must map H to G")
    P = np.asarray(act, dtype=np.int64)
    if P.shape != (G.order, H.order):
        raise ValidationError(f"action table must have shape {(G.order, H.order)}")
    for g in G:
        row = P[g]
        if len(set(row.tolist())) != H.order or _hom_violation(H, H, row) is not None:
            raise NotAutomorphism(f"rho({g}) is not an automorphism of H", witness=(g,))
    if not np.array_equal(P[0], np.arange(H.order)):
        raise NotFunctorial("rho(identity) is not the identity", witness=(0, 0))
    for g in G:
        for g2 in G:
            if not np.array_equal(P[G.table[g, g2]], P[g][P[g2]]):
                raise NotFunctorial(f"rho({g}*{g2}) != rho({g}) rho({g2})", witness=(g, g2))
    T = t.images
    ginv = G.inverse
    for g in G:
        # t(rho(g) h) == g t(h) g^-1
        lhs = T[P[g]]
        rhs = G.table[G.table[g, T], ginv[g]]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            raise NotEquivariant(f"t(rho({g}) {bad[0]}) != {g} t({bad[0]}) {g}^-1", witness=(g, int(bad[0])))
    hinv = H.inverse
    for h in H:
        lhs = P[T[h]]
        rhs = H.table[H.table[h, :], hinv[h]]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            raise PeifferFails(f"rho(t({h})) {bad[0]} != {h} {bad[0]} {h}^-1", witness=(h, int(bad[0])))
    return CrossedModule(G, H, t, P)


def from_normal_subgroup(G, N):
    """Inclusion of a normal subgroup with the conjugation action."""
    sq = normal_subgroup(G, N)
    H, incl = sq.subgroup, sq.inclusion
    pos = {int(x): i for i, x in enumerate(incl.images)}
    act = np.array([[pos[G.conj(g, int(n))] for n in incl.images] for g in G], dtype=np.int64)
    return validate(G, H, incl, act)


def from_module_action(action):
    """A module ``A`` over ``G`` with ``t`` constant at the identity."""
    G, A = action.group, action.module.group
    return validate(G, A, np.zeros(A.order, dtype=np.int64), action.perms)


def _conjugation_by_section(t, pick):
    H, G = t.source, t.target
    fibres = [[] for _ in G]
    for h in H:
        fibres[t(h)].append(h)
    j = [pick(f) for f in fibres]
    return np.array([[H.conj(j[g], h) for h in H] for g in G], dtype=np.int64)


def from_central_extension(t):
    """Crossed module of a surjection ``t: H -> G`` with central kernel.

    ``rho(g)`` is conjugation by any preimage of ``g``; the result is
    recomputed with a second section and the two must agree.
    """
    H = t.source
    if not t.is_surjective:
        missing = sorted(set(range(t.target.order)) - set(t.images.tolist()))
        raise NotSurjective(f"{missing[0]} has no preimage", witness=(missing[0],))
    for k in t.kernel():
        for h in H:
            if H.mul(k, h) != H.mul(h, k):
                raise KernelNotCentral(f"kernel element {k} does not commute with {h}", witness=(k, h))
    act = _conjugation_by_section(t, min)
    if not np.array_equal(act, _conjugation_by_section(t, max)):
        raise GrcatError("action depends on the choice of section")
    return validate(t.target, H, t, act)


def aut_crossed_module(H, max_order=DEFAULT_MAX_ORDER):
    """``H -> Aut(H)`` sending ``h`` to conjugation by ``h``."""
    perms = [tuple(int(x) for x in phi.images) for phi in automorphisms(H, max_order)]
    ident = tuple(range(H.order))
    perms.remove(ident)
    perms.insert(0, ident)
    Aut = permutation_group(perms)
    index = {p: i for i, p in enumerate(perms)}
    t = [index[tuple(H.conj(h, x) for x in H)] for h in H]
    return validate(Aut, H, t, np.array(perms, dtype=np.int64))


# ---------------------------------------------------------------------------
# strict 2-groups


@dataclass(frozen=True, eq=False)
class StrictTwoGroup:
    """Strict 2-group with a group of morphisms under tensor.

    ``comp[m1, m2]`` is the composite "m1 then m2" or -1 when
    ``tgt(m1) != src(m2)``.
    """

    objects: FiniteGroup
    morphisms: FiniteGroup
    src: GroupHom
    tgt: GroupHom
    ident: GroupHom
    comp: np.ndarray

    def compose(self, m1, m2):
        """``m2 after m1``; None when not composable."""
        r = int(self.comp[m1, m2])
        return None if r < 0 else r

    def tensor(self, m1, m2):
        return self.morphisms.mul(m1, m2)

    def endomorphisms_of_unit(self):
        unit = self.ident(0)
        return [m for m in self.morphisms if self.src(m) == 0 and self.tgt(m) == 0 and m is not None] or [unit]

    def hom(self, x, y):
        return [m for m in self.morphisms if self.src(m) == x and self.tgt(m) == y]


def to_strict_two_group(X):
    """Semidirect product ``H x| G`` with ``(h,g)(h',g') = (h rho(g)h', gg')``.

    The pair ``(h, g)`` has index ``h*|G| + g`` and runs from ``g`` to
    ``t(h) g``.  Following ``(h, g)`` by ``(h', t(h) g)`` gives ``(h'h, g)``.
    """
    G, H = X.G, X.H
    nG, nH = G.order, H.order
    n = nG * nH
    h_of = np.repeat(np.arange(nH), nG)
    g_of = np.tile(np.arange(nG), nH)
    # (h rho(g) h') * |G| + g g'
    rh = X.act[g_of[:, None], h_of[None, :]]
    T = H.table[h_of[:, None], rh] * nG + G.table[g_of[:, None], g_of[None, :]]
    M = validate_group(T)
    src = GroupHom(M, G, g_of)
    tgt = GroupHom(M, G, G.table[X.t.images[h_of], g_of])
    ident = GroupHom(G, M, np.arange(nG))
    comp = np.full((n, n), -1, dtype=np.int64)
    for m1 in range(n):
        for m2 in np.flatnonzero(src.images == tgt.images[m1]):
            comp[m1, m2] = H.mul(int(h_of[m2]), int(h_of[m1])) * nG + g_of[m1]
    return StrictTwoGroup(G, M, src, tgt, ident, comp)


def to_crossed_module(T):
    """Morphisms out of the unit, with ``t = tgt`` and conjugation by identities."""
    M = T.morphisms
    H, incl = subgroup(M, [m for m in M if T.src(m) == 0])
    pos = {int(x): i for i, x in enumerate(incl.images)}
    t = [T.tgt(int(m)) for m in incl.images]
    act = np.array(
        [[pos[M.mul(T.ident(g), int(m), T.ident(T.objects.inv(g)))] for m in incl.images] for g in T.objects],
        dtype=np.int64,
    )
    return validate(T.objects, H, t, act)


def check_interchange(T):
    """First ``(m1, m2, n1, n2)`` breaking interchange, or None."""
    M = T.morphisms
    pairs = np.argwhere(T.comp >= 0)
    for m1, n1 in pairs:
        for m2, n2 in pairs:
            lhs = T.compose(M.mul(m1, m2), M.mul(n1, n2))
            rhs = M.mul(T.compose(m1, n1), T.compose(m2, n2))
            if lhs != rhs:
                return tuple(int(x) for x in (m1, m2, n1, n2))
    return None


@dataclass(frozen=True)
class CrossedModuleIso:
    alpha: GroupHom  # H -> H'
    beta: GroupHom  # G -> G'


def crossed_module_isomorphism(X, Y, max_order=DEFAULT_MAX_ORDER):
    """An isomorphism of crossed modules ``X -> Y`` or None."""
    for beta in isomorphisms(X.G, Y.G, max_order):
        for alpha in isomorphisms(X.H, Y.H, max_order):
            if not np.array_equal(Y.t.images[alpha.images], beta.images[X.t.images]):
                continue
            # alpha(rho(g) h) == rho'(beta g)(alpha h)
            lhs = alpha.images[X.act]
            rhs = Y.act[beta.images[:, None], alpha.images[None, :]]
            if np.array_equal(lhs, rhs):
                return CrossedModuleIso(alpha, beta)
    return None


# ---------------------------------------------------------------------------
# skeletalization


@dataclass(frozen=True)
class Skeleton:
    category: object  # SkeletalGrCategory
    projection: GroupHom  # G -> pi0
    inclusion: GroupHom  # pi1 -> H
    section: tuple
    lifts: dict


def skeletalize(X, rng=None):
    """Skeletal data ``(pi0, pi1, rho, a)`` of the strict 2-group of ``X``.

    A section ``s`` of ``G -> G/im t`` and lifts ``eta(p, q)`` of
    ``s(p)s(q)s(pq)^-1`` through ``t`` give the associator

        a(p,q,r) = eta(p,q) eta(pq,r) eta(p,qr)^-1 (rho(s(p)) eta(q,r))^-1

    in ``ker t``.  By default ``s`` and ``eta`` take least elements; an ``rng``
    (``numpy.random.Generator``) picks them at random, keeping both
    normalized.  The category is returned as ``Skeleton.category``.
    """
    G, H, t = X.G, X.H, X.t
    Q, proj = quotient_by(G, t.image())
    K, incl = subgroup(H, t.kernel())
    A = cyclic_decomposition(K)
    kpos = {int(x): i for i, x in enumerate(incl.images)}

    def pick(xs):
        xs = sorted(xs)
        return xs[0] if rng is None else xs[int(rng.integers(len(xs)))]

    cosets = [[] for _ in Q]
    for g in G:
        cosets[proj(g)].append(g)
    s = [0] + [pick(c) for c in cosets[1:]]
    fibres = {}
    for h in H:
        fibres.setdefault(t(h), []).append(h)
    eta = {}
    for p in Q:
        for q in Q:
            if p == 0 or q == 0:
                eta[p, q] = 0
            else:
                x = G.mul(s[p], s[q], G.inv(s[Q.mul(p, q)]))
                eta[p, q] = pick(fibres[x])

    perms = np.array([[kpos[X.rho(s[p], int(k))] for k in incl.images] for p in Q], dtype=np.int64)
    action = make_action(Q, A, perms)

    def assoc(p, q, r):
        x = H.mul(
            eta[p, q],
            eta[Q.mul(p, q), r],
            H.inv(eta[p, Q.mul(q, r)]),
            H.inv(X.rho(s[p], eta[q, r])),
        )
        return kpos[x]

    a = Cochain.from_function(action, 3, assoc)
    cat = grcore.build(Q, A, action, a)
    return Skeleton(cat, proj, incl, tuple(s), eta)


def strict_skeletal_model(cat):
    """``(G, A, rho, 0)`` on the same data."""
    return grcore.SkeletalGrCategory(cat.G, cat.A, cat.action, Cochain.zero(cat.action, 3))


def trivial_crossed_module():
    E = trivial_group()
    return validate(E, E, [0], [[0]])
