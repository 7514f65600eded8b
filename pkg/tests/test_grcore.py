import itertools

import numpy as np
import pytest

from grcat import grcore
from grcat.cohomology import Cochain, class_equal, coboundary, is_cocycle, transport_class
from grcat.errors import NotCocycle, NotNormalized, ObjectMismatch, OrderBound
from grcat.fingroup import make_hom

from helpers import (
    TRIV22,
    TRIV33,
    Z3,
    category,
    gr_fixtures,
    indicator,
    xyz,
)


def test_build_examples():
    assert grcore.build(TRIV22.group, TRIV22.module, TRIV22, Cochain.zero(TRIV22, 3))
    assert grcore.build(TRIV22.group, TRIV22.module, TRIV22, xyz(TRIV22))
    with pytest.raises(NotCocycle) as e:
        grcore.build(TRIV22.group, TRIV22.module, TRIV22, indicator(TRIV22, (1, 1, 0)))
    assert len(e.value.witness) == 4


def test_build_normalizes_or_refuses():
    f = Cochain(TRIV22, 2, [1, 0, 1, 1])
    a = xyz(TRIV22) + coboundary(f)
    assert not a.is_normalized
    with pytest.raises(NotNormalized):
        grcore.build(TRIV22.group, TRIV22.module, TRIV22, a, normalize=False)
    cat = grcore.build(TRIV22.group, TRIV22.module, TRIV22, a)
    assert cat.assoc.is_normalized and class_equal(cat.assoc, xyz(TRIV22))


class TestMorphisms:
    cat = category(TRIV22, xyz(TRIV22))

    def test_compose(self):
        c = self.cat
        m = c.morphism(1, 1)
        assert c.compose(c.identity(1), m) == m
        assert c.compose(c.morphism(0, 1), c.morphism(0, 1)) == c.identity(0)
        assert c.compose(m, c.inverse(m)) == c.identity(1)

    def test_compose_mismatch(self):
        with pytest.raises(ObjectMismatch):
            self.cat.compose(self.cat.identity(0), self.cat.identity(1))

    def test_tensor(self):
        c = self.cat
        assert c.tensor(c.morphism(0, 1), c.morphism(0, 1)) == c.identity(0)
        assert c.tensor(c.identity(1), c.identity(1)) == c.identity(0)

    def test_tensor_twists_right_factor(self):
        cat = gr_fixtures()["neg24"]
        m = cat.tensor(cat.morphism(1, 1), cat.morphism(1, 1))
        assert m == cat.morphism(0, 0)  # 1 + rho(1) 1 = 1 - 1
        m = cat.tensor(cat.morphism(0, 1), cat.morphism(1, 1))
        assert m == cat.morphism(1, 2)

    def test_range_check(self):
        with pytest.raises(ValueError):
            self.cat.morphism(2, 0)


@pytest.mark.parametrize("name", ["zero22", "xyz22", "gen33", "neg24", "k4z2", "twisted"])
def test_interchange_exhaustive(name):
    cat = gr_fixtures()[name]
    ms = list(cat.morphisms())
    for m1, m2 in itertools.product(ms, ms):
        for n1 in (m for m in ms if m.obj == m1.obj):
            for n2 in (m for m in ms if m.obj == m2.obj):
                lhs = cat.compose(cat.tensor(m1, m2), cat.tensor(n1, n2))
                rhs = cat.tensor(cat.compose(m1, n1), cat.compose(m2, n2))
                assert lhs == rhs


@pytest.mark.parametrize("name", ["zero22", "xyz22", "gen33", "neg24", "k4z2", "twisted"])
def test_eckmann_hilton(name):
    cat = gr_fixtures()[name]
    E = cat.unit_endomorphisms()
    for a, b in itertools.product(E, E):
        assert cat.tensor(a, b) == cat.compose(a, b) == cat.compose(b, a)


class TestInvariant:
    def test_values(self):
        assert grcore.sinh_invariant(category(TRIV22)).is_zero
        assert not grcore.sinh_invariant(category(TRIV22, xyz(TRIV22))).is_zero

    def test_shifted_class(self):
        f = Cochain.from_function(TRIV22, 2, lambda x, y: x * y)
        shifted = category(TRIV22, xyz(TRIV22) + coboundary(f))
        assert grcore.sinh_invariant(shifted) == grcore.sinh_invariant(category(TRIV22, xyz(TRIV22)))


class TestEquivalence:
    def test_self(self):
        cat = category(TRIV22, xyz(TRIV22))
        res = grcore.equivalent(cat, cat)
        assert res and res.f.is_zero
        assert res.phi.images.tolist() == [0, 1]

    def test_zero_vs_xyz(self):
        res = grcore.equivalent(category(TRIV22), category(TRIV22, xyz(TRIV22)))
        assert not res and "associator" in res.reason

    def test_different_groups(self):
        res = grcore.equivalent(category(TRIV22), gr_fixtures()["zero23"])
        assert not res and "unit" in res.reason

    def test_transport_along_negation(self):
        neg = make_hom(Z3, Z3, [0, 2, 1])
        for a in [gr_fixtures()["gen33"].assoc]:
            moved = transport_class(a, neg, neg, TRIV33)
            assert grcore.equivalent(category(TRIV33, a), category(TRIV33, moved))

    def test_witness_checks_out(self):
        a, b = gr_fixtures()["gen33"], None
        neg = make_hom(Z3, Z3, [0, 2, 1])
        b = category(TRIV33, transport_class(a.assoc, neg, neg, TRIV33))
        res = grcore.equivalent(a, b)
        moved = transport_class(a.assoc, res.phi, res.psi, TRIV33)
        assert coboundary(res.f) == b.assoc - moved

    def test_coboundary_shifts(self):
        rng = np.random.default_rng(11)
        base = gr_fixtures()["gen33"]
        for _ in range(20):
            vals = rng.integers(3, size=9)
            f = Cochain.from_function(TRIV33, 2, lambda x, y: 0 if 0 in (x, y) else int(vals[3 * x + y]))
            assert grcore.equivalent(base, category(TRIV33, base.assoc + coboundary(f)))

    def test_equivalence_relation(self):
        fx = gr_fixtures()
        cats = [fx[k] for k in ("zero22", "xyz22", "zero23", "gen33", "neg24", "twisted")]
        cats.append(category(TRIV33, fx["gen33"].assoc.scale(2)))
        R = np.array([[bool(grcore.equivalent(a, b)) for b in cats] for a in cats])
        assert R.diagonal().all()
        assert (R == R.T).all()
        assert ((R.astype(int) @ R.astype(int) > 0) <= R).all()
        # the twisted skeleton is the xyz class in disguise
        assert R[1, 5] and not R[0, 5]

    def test_order_bound(self):
        cat = category(TRIV22)
        with pytest.raises(OrderBound):
            grcore.equivalent(cat, cat, max_order=1)


def test_identity_witness_is_valid():
    cat = gr_fixtures()["k4z2"]
    w = grcore.identity_witness(cat)
    assert w and is_cocycle(cat.assoc) and coboundary(w.f).is_zero
