import numpy as np
import pytest

from grcat import crossedmod as xm
from grcat import grcore
from grcat.cohomology import Cochain, class_equal
from grcat.errors import KernelNotCentral, NotEquivariant, NotNormal, NotSurjective, PeifferFails
from grcat.fingroup import make_hom, trivial_action

from helpers import (
    A3,
    NEG4,
    S3,
    TRIV22,
    Z1,
    Z2,
    Z4,
    crossed_fixtures,
    negation_action,
    twisted,
)


class TestValidate:
    def test_examples(self):
        assert xm.validate(Z4, Z2, [0, 2], [[0, 1]] * 4)
        assert xm.validate(Z4, Z4, [0, 2, 0, 2], [[0, 1, 2, 3]] * 4)
        assert twisted()

    def test_not_equivariant(self):
        # t = identity on Z4 but G acts by negation: t(-h) != h
        with pytest.raises(NotEquivariant) as e:
            xm.validate(Z4, Z4, [0, 1, 2, 3], NEG4 * 2)
        assert e.value.witness == (1, 1)

    def test_peiffer_fails(self):
        # t trivial and trivial action: Peiffer asks H to be abelian
        with pytest.raises(PeifferFails):
            xm.validate(Z1, S3, [0] * 6, [list(range(6))])

    def test_ker_t_central(self):
        for X in crossed_fixtures().values():
            K = X.t.kernel()
            for k in K:
                for h in X.H:
                    assert X.H.mul(k, h) == X.H.mul(h, k)


class TestConstructions:
    def test_normal_subgroups(self):
        X = xm.from_normal_subgroup(Z4, [0, 2])
        assert X.t.is_injective
        Y = xm.from_normal_subgroup(S3, A3)
        assert any(Y.act[g].tolist() != list(range(3)) for g in S3)
        Zt = xm.from_normal_subgroup(S3, [0])
        assert Zt.H.order == 1
        with pytest.raises(NotNormal):
            xm.from_normal_subgroup(S3, [0, 1])

    def test_module_actions(self):
        assert xm.from_module_action(TRIV22)
        X = xm.from_module_action(negation_action(Z2, 4))
        assert X.t.image() == [0]
        assert xm.from_module_action(trivial_action(Z1, Z2))

    def test_central_extensions(self):
        X = xm.from_central_extension(make_hom(Z4, Z2, [0, 1, 0, 1]))
        T = xm.to_strict_two_group(X)
        # every object is isomorphic to every other
        assert set(T.tgt.images[T.src.images == 0].tolist()) == {0, 1}
        with pytest.raises(KernelNotCentral):
            sign = [0 if S3.element_order(g) != 2 else 1 for g in S3]
            xm.from_central_extension(make_hom(S3, Z2, sign))
        with pytest.raises(NotSurjective):
            xm.from_central_extension(make_hom(Z2, Z4, [0, 2]))


class TestStrict:
    def test_trivial(self):
        T = xm.to_strict_two_group(xm.trivial_crossed_module())
        assert T.objects.order == 1 and T.morphisms.order == 1

    def test_module_action_is_skeletal(self):
        T = xm.to_strict_two_group(xm.from_module_action(TRIV22))
        assert T.morphisms.order == 4
        assert (T.src.images == T.tgt.images).all()

    def test_normal_z4(self):
        T = xm.to_strict_two_group(xm.from_normal_subgroup(Z4, [0, 2]))
        assert T.morphisms.order == 8 and T.objects.order == 4
        classes = {frozenset(T.tgt(m) for m in T.morphisms if T.src(m) == g) for g in T.objects}
        assert len(classes) == 2

    @pytest.mark.parametrize("name", sorted(crossed_fixtures()))
    def test_structure(self, name):
        T = xm.to_strict_two_group(crossed_fixtures()[name])
        ident = T.ident.images
        assert (T.src.images[ident] == np.arange(T.objects.order)).all()
        assert (T.tgt.images[ident] == np.arange(T.objects.order)).all()
        for m in T.morphisms:
            assert T.compose(T.ident(T.src(m)), m) == m
            assert T.compose(m, T.ident(T.tgt(m))) == m
            for n in T.morphisms:
                c = T.compose(m, n)
                assert (c is not None) == (T.tgt(m) == T.src(n))
                if c is not None:
                    assert T.src(c) == T.src(m) and T.tgt(c) == T.tgt(n)

    @pytest.mark.parametrize("name", sorted(crossed_fixtures()))
    def test_interchange(self, name):
        X = crossed_fixtures()[name]
        if X.G.order * X.H.order <= 64:
            assert xm.check_interchange(xm.to_strict_two_group(X)) is None

    def test_other_composite_order_breaks_targets(self):
        # (h, g) then (h', t(h)g) as (h h', g) would land on t(h)t(h')g
        X = xm.from_normal_subgroup(S3, list(S3))
        T = xm.to_strict_two_group(X)
        G, H, n = X.G, X.H, X.G.order
        bad = [(h, hp) for h in H for hp in H if G.mul(X.t(h), X.t(hp)) != G.mul(X.t(hp), X.t(h))]
        assert bad
        h, hp = bad[0]
        m1 = h * n
        m2 = hp * n + X.t(h)
        c = T.compose(m1, m2)
        assert c == H.mul(hp, h) * n
        assert T.tgt(c) == G.mul(X.t(hp), X.t(h)) != G.mul(X.t(h), X.t(hp))

    @pytest.mark.parametrize("name", sorted(crossed_fixtures()))
    def test_round_trip(self, name):
        X = crossed_fixtures()[name]
        Y = xm.to_crossed_module(xm.to_strict_two_group(X))
        assert xm.crossed_module_isomorphism(X, Y) is not None

    def test_endomorphisms_of_unit_commute(self):
        for X in crossed_fixtures().values():
            T = xm.to_strict_two_group(X)
            E = [m for m in T.morphisms if T.src(m) == 0 and T.tgt(m) == 0]
            for a in E:
                for b in E:
                    assert T.tensor(a, b) == T.compose(a, b) == T.compose(b, a)


class TestSkeletalize:
    def test_normal_z4(self):
        c = xm.skeletalize(crossed_fixtures()["normal_z4"]).category
        assert c.G.order == 2 and c.A.order == 1
        assert grcore.sinh_invariant(c).is_zero

    def test_central(self):
        c = xm.skeletalize(crossed_fixtures()["central_z4_z2"]).category
        assert c.G.order == 1 and c.A.moduli == (2,)
        assert grcore.sinh_invariant(c).is_zero

    def test_twisted_nonzero(self):
        c = xm.skeletalize(twisted()).category
        assert c.G.order == 2 and c.A.moduli == (2,)
        assert c.action.is_trivial
        assert not grcore.sinh_invariant(c).is_zero
        assert not class_equal(Cochain.zero(c.action, 3), c.assoc, method="exhaustive")

    @pytest.mark.parametrize("name", sorted(crossed_fixtures()))
    def test_choice_independence(self, name):
        X = crossed_fixtures()[name]
        base = xm.skeletalize(X).category
        rng = np.random.default_rng(sum(map(ord, name)))
        for _ in range(20):
            other = xm.skeletalize(X, rng).category
            assert other.action == base.action
            assert class_equal(base.assoc, other.assoc)

    @pytest.mark.parametrize("action", [TRIV22, negation_action(Z2, 4), trivial_action(Z1, Z2)])
    def test_module_action_exact(self, action):
        c = xm.skeletalize(xm.from_module_action(action)).category
        assert c.assoc.is_zero
        assert c.G == action.group and c.action.perms.tolist() == action.perms.tolist()

    @pytest.mark.parametrize("name", sorted(crossed_fixtures()))
    def test_zero_class_iff_strict_skeletal(self, name):
        c = xm.skeletalize(crossed_fixtures()[name]).category
        eq = grcore.equivalent(c, xm.strict_skeletal_model(c))
        assert bool(eq) == grcore.sinh_invariant(c).is_zero
