"""Pic-categories: strict models from 2-term chain complexes and their classification.

A complex ``C0 <-d- C1`` gives a category with objects ``C0`` and morphisms
``(h, g): g -> g + dh``.  Composition and tensor are addition and the
symmetry is the identity, so the model is restrained.  Two restrained models
are equivalent exactly when ``coker d`` and ``ker d`` agree up to isomorphism.
"""

from dataclasses import dataclass, field

import numpy as np

from .cohomology import Cochain, class_equal
from .errors import ObjectMismatch, ValidationError
from .fingroup import (
    DEFAULT_MAX_ORDER,
    AbelianGroup,
    GroupHom,
    abelian_group,
    are_isomorphic,
    cyclic_decomposition,
    make_hom,
    quotient_by,
    subgroup,
)
from . import crossedmod


@dataclass(frozen=True, eq=False)
class ChainComplex2:
    C0: AbelianGroup
    C1: AbelianGroup
    d: GroupHom

    def __repr__(self):
        return f"ChainComplex2({self.C0.moduli} <- {self.C1.moduli}, d={self.d.images.tolist()})"


def chain_complex(C0, C1, d):
    """Validate ``d: C1 -> C0``; groups are decomposed if given as tables."""
    C0 = cyclic_decomposition(C0)
    C1 = cyclic_decomposition(C1)
    if not isinstance(d, GroupHom):
        d = make_hom(C1.group, C0.group, d)
    return ChainComplex2(C0, C1, d)


@dataclass(frozen=True)
class PicMorphism:
    h: int
    g: int


@dataclass(frozen=True, eq=False)
class PicCategoryModel:
    """The strict symmetric category of a :class:`ChainComplex2`."""

    chain: ChainComplex2

    @property
    def objects(self):
        return list(self.chain.C0)

    def source(self, m):
        return m.g

    def target(self, m):
        return self.chain.C0.add(m.g, self.chain.d(m.h))

    def morphisms(self):
        for h in self.chain.C1:
            for g in self.chain.C0:
                yield PicMorphism(h, g)

    def hom(self, x, y):
        return [PicMorphism(h, x) for h in self.chain.C1 if self.target(PicMorphism(h, x)) == y]

    def identity(self, g):
        return PicMorphism(0, g)

    def compose(self, m1, m2):
        """``m2 after m1``"""
        if self.target(m1) != m2.g:
            raise ObjectMismatch(f"target {self.target(m1)} != source {m2.g}", witness=(m1, m2))
        return PicMorphism(self.chain.C1.add(m1.h, m2.h), m1.g)

    def tensor(self, m1, m2):
        return PicMorphism(self.chain.C1.add(m1.h, m2.h), self.chain.C0.add(m1.g, m2.g))

    def symmetry(self, x, y):
        return self.identity(self.chain.C0.add(x, y))

    def isomorphism_classes(self):
        seen, classes = set(), []
        for g in self.chain.C0:
            if g not in seen:
                cls = sorted({self.target(PicMorphism(h, g)) for h in self.chain.C1})
                seen.update(cls)
                classes.append(cls)
        return classes


def pic_from_chain(C):
    return PicCategoryModel(C)


@dataclass(frozen=True)
class PicInvariants:
    pi0: AbelianGroup
    pi1: AbelianGroup
    projection: GroupHom  # C0 -> pi0
    inclusion: GroupHom  # pi1 -> C1


def pic_invariants(M):
    """``(coker d, ker d)`` with cyclic decompositions."""
    C = M.chain
    Q, proj = quotient_by(C.C0.group, C.d.image())
    K, incl = subgroup(C.C1.group, C.d.kernel())
    return PicInvariants(cyclic_decomposition(Q), cyclic_decomposition(K), proj, incl)


def restrained_equivalent(M1, M2, max_order=DEFAULT_MAX_ORDER):
    """Equivalence of restrained models by their two invariants."""
    a, b = pic_invariants(M1), pic_invariants(M2)
    return are_isomorphic(a.pi0.group, b.pi0.group, max_order) and are_isomorphic(
        a.pi1.group, b.pi1.group, max_order
    )


def realize_chain(G, A):
    """``G <-0- A``, whose model has invariants ``(G, A)``."""
    G = cyclic_decomposition(G)
    A = cyclic_decomposition(A)
    return ChainComplex2(G, A, GroupHom(A.group, G.group, np.zeros(A.order, dtype=np.int64)))


def chain_from_moduli(c0, c1, d):
    return chain_complex(abelian_group(c0), abelian_group(c1), d)


def crossed_module_of_chain(C):
    """``d: C1 -> C0`` as a crossed module with trivial action."""
    act = np.tile(np.arange(C.C1.order), (C.C0.order, 1))
    return crossedmod.validate(C.C0.group, C.C1.group, C.d, act)


# ---------------------------------------------------------------------------
# skeletal symmetric data


@dataclass(frozen=True, eq=False)
class PicSkeletalData:
    """A skeletal Gr-category plus a symmetry table ``c[g, h]`` in ``A``."""

    category: object
    c: np.ndarray


def pic_data(category, c):
    c = np.asarray(c, dtype=np.int64)
    q = category.G.order
    if c.shape != (q, q):
        raise ValidationError(f"symmetry table must be {q}x{q}")
    if np.any((c < 0) | (c >= category.A.order)):
        raise ValidationError("symmetry value outside A")
    return PicSkeletalData(category, c)


@dataclass
class AxiomResult:
    name: str
    ok: bool
    witness: object = None

    def line(self):
        return f"{self.name}: PASS" if self.ok else f"{self.name}: FAIL {self.witness}"


@dataclass
class PicReport:
    results: list = field(default_factory=list)

    def __bool__(self):
        return all(r.ok for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self):
        return [r.line() for r in self.results]


def validate_pic_data(P):
    """Check each axiom of restrained Pic data and report witnesses.

    The hexagon is checked in its additive form ``c(g, h+k) = c(g,h) + c(g,k)``,
    which is what it says once the associator is trivial.
    """
    cat, c = P.category, P.c
    G, A = cat.G, cat.A
    out = []

    def first(it):
        return next(it, None)

    w = first(
        (g, h) for g in G for h in G if G.mul(g, h) != G.mul(h, g)
    )
    out.append(AxiomResult("abelian", w is None, w))
    w = first((g, x) for g in G for x in A if cat.action(g, x) != x)
    out.append(AxiomResult("trivial action", w is None, w))
    zero = Cochain.zero(cat.action, 3)
    out.append(AxiomResult("zero class", bool(class_equal(zero, cat.assoc))))
    w = first(
        (g, h, k)
        for g in G
        for h in G
        for k in G
        if c[g, G.mul(h, k)] != A.add(int(c[g, h]), int(c[g, k]))
    )
    out.append(AxiomResult("hexagon", w is None, w))
    w = first((g, h) for g in G for h in G if A.add(int(c[g, h]), int(c[h, g])) != 0)
    out.append(AxiomResult("involution", w is None, w))
    w = first(g for g in G if c[g, g] != 0)
    out.append(AxiomResult("restrained", w is None, w))
    return PicReport(out)
