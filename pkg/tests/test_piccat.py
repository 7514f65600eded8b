import numpy as np
import pytest

from grcat import crossedmod as xm
from grcat import grcore, piccat
from grcat.errors import ObjectMismatch, ValidationError
from grcat.fingroup import are_isomorphic, trivial_action

from helpers import TRIV22, Z2, Z4, category, chain, chain_fixtures, random_abelian, xyz


def moduli(M):
    inv = piccat.pic_invariants(M)
    return inv.pi0.moduli, inv.pi1.moduli


@pytest.mark.parametrize(
    "name, expected",
    [
        ("zero", ((), ())),
        ("z2_0_z2", ((2,), (2,))),
        ("z4_x2_z4", ((2,), (2,))),
        ("z6_x2_z6", ((2,), (2,))),
        ("z6_to_z3", ((), (2,))),
        ("z2_into_z4", ((2,), ())),
    ],
)
def test_invariants(name, expected):
    assert moduli(piccat.pic_from_chain(chain_fixtures()[name])) == expected


class TestModel:
    M = piccat.pic_from_chain(chain_fixtures()["z4_x2_z4"])

    def test_morphisms_and_classes(self):
        assert len(list(self.M.morphisms())) == 16
        assert self.M.isomorphism_classes() == [[0, 2], [1, 3]]
        assert len(self.M.hom(0, 2)) == 2 and self.M.hom(0, 1) == []

    def test_compose_and_tensor(self):
        M = self.M
        m = piccat.PicMorphism(1, 0)  # 0 -> 2
        assert M.target(m) == 2
        assert M.compose(m, piccat.PicMorphism(1, 2)) == piccat.PicMorphism(2, 0)
        with pytest.raises(ObjectMismatch):
            M.compose(m, piccat.PicMorphism(0, 1))
        assert M.tensor(m, piccat.PicMorphism(3, 1)) == piccat.PicMorphism(0, 1)
        assert M.symmetry(1, 2) == M.identity(3)

    def test_bad_differential(self):
        with pytest.raises(ValidationError):
            chain([4], [4], [0, 1, 1, 1])


class TestEquivalence:
    def test_examples(self):
        fx = chain_fixtures()
        P = piccat.pic_from_chain
        assert piccat.restrained_equivalent(P(fx["z4_x2_z4"]), P(fx["z2_0_z2"]))
        assert piccat.restrained_equivalent(P(fx["z6_x2_z6"]), P(fx["z4_x2_z4"]))
        assert not piccat.restrained_equivalent(P(fx["z2_0_z2"]), P(fx["z3_0_z3"]))
        assert not piccat.restrained_equivalent(P(fx["z6_to_z3"]), P(fx["z2_into_z4"]))

    def test_realize_round_trip(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            G, A = random_abelian(rng), random_abelian(rng)
            inv = piccat.pic_invariants(piccat.pic_from_chain(piccat.realize_chain(G.group, A.group)))
            assert are_isomorphic(inv.pi0.group, G.group) and are_isomorphic(inv.pi1.group, A.group)

    @pytest.mark.parametrize("name", sorted(chain_fixtures()))
    def test_realization_is_equivalent(self, name):
        M = piccat.pic_from_chain(chain_fixtures()[name])
        inv = piccat.pic_invariants(M)
        R = piccat.pic_from_chain(piccat.realize_chain(inv.pi0.group, inv.pi1.group))
        assert piccat.restrained_equivalent(R, M)

    @pytest.mark.parametrize("name", sorted(chain_fixtures()))
    def test_skeleton_has_zero_class(self, name):
        C = chain_fixtures()[name]
        sk = xm.skeletalize(piccat.crossed_module_of_chain(C)).category
        assert grcore.sinh_invariant(sk).is_zero
        inv = piccat.pic_invariants(piccat.pic_from_chain(C))
        assert sk.G.order == inv.pi0.order and sk.A.order == inv.pi1.order


class TestAxioms:
    def test_strict_symmetry_passes(self):
        for cat in (category(TRIV22), category(trivial_action(Z4, Z2))):
            q = cat.G.order
            rep = piccat.validate_pic_data(piccat.pic_data(cat, np.zeros((q, q), dtype=int)))
            assert rep and all(line.endswith("PASS") for line in rep.lines())

    def test_unrestrained(self):
        rep = piccat.validate_pic_data(piccat.pic_data(category(TRIV22), [[0, 0], [0, 1]]))
        assert rep["involution"].ok and rep["hexagon"].ok
        assert not rep["restrained"].ok and rep["restrained"].witness == 1
        assert not rep

    def test_corrupted_hexagon(self):
        cat = category(trivial_action(Z4, Z2))
        c = np.zeros((4, 4), dtype=int)
        c[1, 2] = 1
        rep = piccat.validate_pic_data(piccat.pic_data(cat, c))
        g, h, k = rep["hexagon"].witness
        G = cat.G
        assert c[g, G.mul(h, k)] != (c[g, h] + c[g, k]) % 2

    def test_nonzero_class_and_nonabelian(self):
        rep = piccat.validate_pic_data(piccat.pic_data(category(TRIV22, xyz(TRIV22)), np.zeros((2, 2), int)))
        assert not rep["zero class"].ok

    def test_table_checked(self):
        with pytest.raises(ValidationError):
            piccat.pic_data(category(TRIV22), [[0, 2], [0, 0]])
        with pytest.raises(ValidationError):
            piccat.pic_data(category(TRIV22), [[0]])
