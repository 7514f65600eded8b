"""Skeletal Gr-categories given by classifying data (G, A, rho, a).

Objects are the elements of ``G``.  Every morphism is an automorphism and is
stored as ``(g, alpha)`` with ``alpha`` in ``A``; tensoring twists the right
factor by ``rho`` of the left object:

    (g1, a1) (x) (g2, a2) = (g1 g2, a1 + rho(g1) a2)

Composition adds components.  The associator is the normalized 3-cocycle
``a`` and the unitors are identities.
"""

from dataclasses import dataclass

from .cohomology import (
    Cochain,
    CohomologyClass,
    class_equal,
    is_cocycle,
    normalize_cocycle,
    transport_class,
)
from .errors import MismatchedAmbient, NotCocycle, NotNormalized, ObjectMismatch, ValidationError
from .fingroup import DEFAULT_MAX_ORDER, identity_hom, isomorphisms


@dataclass(frozen=True)
class SkeletalMorphism:
    obj: int
    comp: int


@dataclass(frozen=True, eq=False)
class SkeletalGrCategory:
    """Classifying data of a skeletal Gr-category.

    Constructing this directly skips validation; use :func:`build`.
    """

    G: object
    A: object
    action: object
    assoc: Cochain

    def __eq__(self, other):
        return (
            isinstance(other, SkeletalGrCategory)
            and self.action == other.action
            and self.assoc == other.assoc
        )

    def __hash__(self):
        return hash(self.assoc)

    def morphism(self, g, alpha=0):
        if not (0 <= g < self.G.order and 0 <= alpha < self.A.order):
            raise ValidationError(f"({g}, {alpha}) is not a morphism")
        return SkeletalMorphism(g, alpha)

    def identity(self, g):
        return SkeletalMorphism(g, 0)

    def compose(self, m1, m2):
        """Composite of two automorphisms of the same object."""
        if m1.obj != m2.obj:
            raise ObjectMismatch(f"cannot compose morphisms of {m1.obj} and {m2.obj}", witness=(m1.obj, m2.obj))
        return SkeletalMorphism(m1.obj, self.A.add(m1.comp, m2.comp))

    def tensor(self, m1, m2):
        return SkeletalMorphism(
            self.G.mul(m1.obj, m2.obj),
            self.A.add(m1.comp, self.action(m1.obj, m2.comp)),
        )

    def inverse(self, m):
        return SkeletalMorphism(m.obj, self.A.neg(m.comp))

    def associator(self, x, y, z):
        """``a_{x,y,z}`` as an automorphism of ``xyz``."""
        return SkeletalMorphism(self.G.mul(x, y, z), self.assoc(x, y, z))

    def morphisms(self):
        for g in self.G:
            for alpha in self.A:
                yield SkeletalMorphism(g, alpha)

    def unit_endomorphisms(self):
        return [SkeletalMorphism(0, alpha) for alpha in self.A]


def build(G, A, action, a, normalize=True):
    """Validate classifying data and return a :class:`SkeletalGrCategory`.

    The pentagon holds iff ``a`` is a 3-cocycle; a failure names the first
    violating quadruple.  Unitors are strict, which needs ``a`` normalized.  A
    cocycle that is not normalized is replaced by a normalized cohomologous
    one when ``normalize`` is set and rejected otherwise.
    """
    if action.group != G or action.module.group != getattr(A, "group", A):
        raise MismatchedAmbient("action does not act on the given groups")
    if a.action != action or a.degree != 3:
        raise MismatchedAmbient("associator must be a 3-cochain over the given action")
    check = is_cocycle(a)
    if not check:
        raise NotCocycle(f"pentagon fails at {check.witness}", witness=check.witness)
    if not a.is_normalized:
        if not normalize:
            raise NotNormalized("associator is not normalized")
        a, _ = normalize_cocycle(a)
    return SkeletalGrCategory(G, action.module, action, a)


def sinh_invariant(cat):
    """The cohomology class of the associator."""
    zero = Cochain.zero(cat.action, 3)
    return CohomologyClass(cat.assoc, bool(class_equal(zero, cat.assoc)))


@dataclass(frozen=True)
class Equivalence:
    """Outcome of :func:`equivalent`; truthy iff the categories are equivalent."""

    equivalent: bool
    phi: object = None
    psi: object = None
    f: Cochain = None
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def actions_compatible(action, action2, phi, psi):
    """``rho'(phi g)(psi x) == psi(rho(g) x)`` for all ``g``, ``x``."""
    P, P2 = action.perms, action2.perms
    return bool((P2[phi.images[:, None], psi.images[None, :]] == psi.images[P]).all())


def equivalent(cat, cat2, max_order=DEFAULT_MAX_ORDER):
    """Decide equivalence of skeletal Gr-categories by the classifying data.

    Searches isomorphisms ``phi: G -> G'`` and ``psi: A -> A'`` in
    lexicographic order for a pair compatible with the actions whose
    transported associator is cohomologous to ``a'``.  The witness ``f``
    satisfies ``df = a' - phi,psi_* a``.
    """
    phis = isomorphisms(cat.G, cat2.G, max_order)
    if not phis:
        return Equivalence(False, reason="groups of objects are not isomorphic")
    psis = isomorphisms(cat.A.group, cat2.A.group, max_order)
    if not psis:
        return Equivalence(False, reason="automorphism groups of the unit are not isomorphic")
    compatible = False
    for phi in phis:
        for psi in psis:
            if not actions_compatible(cat.action, cat2.action, phi, psi):
                continue
            compatible = True
            moved = transport_class(cat.assoc, phi, psi, cat2.action)
            eq = class_equal(moved, cat2.assoc)
            if eq:
                return Equivalence(True, phi, psi, eq.witness)
    if not compatible:
        return Equivalence(False, reason="no isomorphisms intertwine the actions")
    return Equivalence(False, reason="associator classes differ for every compatible pair")


def identity_witness(cat):
    return Equivalence(True, identity_hom(cat.G), identity_hom(cat.A.group), Cochain.zero(cat.action, 2))
