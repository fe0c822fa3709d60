"""Tests for the nilpotent group, its lattice and isotropy."""

import random
from fractions import Fraction

import pytest

from src.algebra.cdga import Cdga, LieAlgebraData
from src.geometry.nilgroup import (
    LATTICE_SCALING,
    UNSCALED_CENTRE,
    GroupElement,
    LatticeElement,
    NilpotentGroup,
    closed_formula_product,
    cross_check,
    listed_commutator_status,
)
from tests.conftest import NIL_SIGNS


@pytest.fixture(scope="module")
def group(nil_cdga):
    return NilpotentGroup(LieAlgebraData.from_cdga(nil_cdga), LATTICE_SCALING)


def u(*coords):
    return GroupElement(coords)


class TestStructure:
    def test_scaled_brackets(self, group):
        assert group.bracket_in_u(1, 2) == {4: -2}
        assert group.bracket_in_u(1, 6) == {7: 6}
        assert group.bracket_in_u(6, 1) == {7: -6}
        assert group.bracket_in_u(3, 4) == {7: 6}

    def test_step_above_three_is_rejected(self):
        filiform = LieAlgebraData.from_cdga(Cdga.from_salamon("(0,0,12,13,14)"))
        with pytest.raises(ValueError):
            NilpotentGroup(filiform)

    def test_zero_scaling_is_rejected(self, nil_cdga):
        with pytest.raises(ValueError):
            NilpotentGroup(LieAlgebraData.from_cdga(nil_cdga), [1, 1, 1, 1, 1, 1, 0])


class TestProduct:
    def test_inverse(self, group):
        x = u(1, -2, Fraction(1, 3), 0, 5, 0, 7)
        assert group.bch_product(x, group.inverse(x)) == group.identity()

    def test_associativity(self, group):
        a = u(1, 2, -1, 0, 1, 0, 0)
        b = u(0, -1, 3, 1, 0, 2, 1)
        c = u(2, 1, 1, -1, 0, 0, 3)
        assert group.bch_product(group.bch_product(a, b), c) == group.bch_product(a, group.bch_product(b, c))

    def test_central_product(self, group):
        assert group.bch_product(u(0, 0, 0, 0, 0, 1, 0), u(1, 0, 0, 0, 0, 0, 0)) == u(1, 0, 0, 0, 0, 1, -3)

    def test_dimension_mismatch(self, group):
        with pytest.raises(ValueError):
            group.bch_product(u(1, 0), u(0, 1))

    def test_parse(self):
        assert GroupElement.parse("(1/2, 0, 3)") == u(Fraction(1, 2), 0, 3)
        with pytest.raises(ValueError):
            GroupElement.parse("1,x")


class TestCommutators:
    def test_table(self, group):
        table = group.commutator_table()
        assert table[(1, 2)] == u(0, 0, 0, -2, 0, 0, 0)
        assert table[(1, 3)] == u(0, 0, 0, 0, 0, 2, 6)
        assert table[(2, 3)] == u(0, 0, 0, 0, -2, 0, 6)
        assert table[(1, 6)] == u(0, 0, 0, 0, 0, 0, 6)
        assert table[(4, 5)] == group.identity()

    def test_listed_relations(self, group):
        status = listed_commutator_status(group.commutator_table(), centre=7)
        assert status[(1, 2)] == "exact"
        assert status[(1, 3)] == "modulo-centre"
        assert status[(2, 3)] == "modulo-centre"
        assert status[(3, 4)] == "exact"
        assert "mismatch" not in status.values()


class TestLattice:
    def test_closure(self, group):
        report = group.lattice_closure_check(trials=300, seed=11)
        assert report.closed
        assert report.witness is None

    def test_symbolic_integrality(self, group):
        assert group.symbolic_integrality() is None

    def test_unscaled_centre_is_not_closed(self, nil_cdga):
        unscaled = NilpotentGroup(LieAlgebraData.from_cdga(nil_cdga), UNSCALED_CENTRE)
        coordinate, _ = unscaled.symbolic_integrality()
        assert coordinate == 7
        assert not unscaled.lattice_closure_check(trials=300, seed=11).closed

    def test_reduce(self, group):
        gamma, d = group.reduce_to_fundamental_domain(u(Fraction(3, 2), 0, 0, 0, 0, 0, 0))
        assert gamma == u(1, 0, 0, 0, 0, 0, 0)
        assert d == u(Fraction(1, 2), 0, 0, 0, 0, 0, 0)

    def test_reduce_mixed_point(self, group):
        x = u(Fraction(7, 3), Fraction(-5, 2), Fraction(9, 4), 3, Fraction(-1, 5), Fraction(11, 2), Fraction(-13, 6))
        gamma, d = group.reduce_to_fundamental_domain(x)
        assert gamma.is_integral()
        assert all(0 <= c < 1 for c in d.coords)
        assert group.bch_product(gamma, d) == x


class TestClosedFormula:
    def test_central_sign(self, group):
        found = cross_check(group, u(0, 0, 0, 0, 0, 1, 0), u(1, 0, 0, 0, 0, 0, 0))
        assert [(item.coordinate, item.oracle, item.listed) for item in found] == [(7, -3, 3)]

    def test_agreement_off_the_centre(self, group):
        x, y = u(1, 2, -1, 0, 3, 1, 0), u(-2, 1, 0, 1, 0, 2, 5)
        oracle = group.bch_product(x, y)
        listed = closed_formula_product(x, y)
        assert oracle.coords[:6] == listed.coords[:6]


class TestIsotropy:
    def test_identity_is_fixed(self, group):
        assert group.isotropy_test(group.identity(), NIL_SIGNS, box=1) == group.identity()

    def test_generic_point_is_not_fixed(self, group):
        assert group.isotropy_test(u(Fraction(1, 3), 0, 0, 0, 0, 0, 0), NIL_SIGNS, box=8) is None

    def test_sixteen_components(self, group):
        components = group.enumerate_isotropy_components(NIL_SIGNS, box=8)
        assert len(components) == 16
        assert len({c.epsilon for c in components}) == 16

    def test_grid_of_quarters(self, group):
        report = group.isotropy_grid(NIL_SIGNS, box=8, steps=4)
        assert report.points == 256
        assert len(report.isotropic) == 16
        assert report.mismatches == []

    def test_grid_of_thirds(self, group):
        report = group.isotropy_grid(NIL_SIGNS, box=8, steps=3)
        assert report.points == 81
        assert report.isotropic == [group.identity()]
        assert report.mismatches == []

    def test_half_period_witness(self, group):
        witness = group.isotropy_test(u(Fraction(1, 2), 0, 0, 0, 0, 0, 0), NIL_SIGNS, box=8)
        assert isinstance(witness, LatticeElement)
        assert witness == u(-1, 0, 0, 0, 0, 0, 0)

    def test_quarter_period_is_not_fixed(self, group):
        assert group.isotropy_test(u(Fraction(1, 4), 0, 0, 0, 0, 0, 0), NIL_SIGNS, box=8) is None

    def test_fixed_subgroup_sample_keeps_witnesses(self, group):
        plain = group.enumerate_isotropy_components(NIL_SIGNS, box=8)
        sample = u(0, 0, Fraction(1, 3), Fraction(-2, 5), 0, 0, Fraction(1, 5))
        sampled = group.enumerate_isotropy_components(NIL_SIGNS, box=8, sample=sample)
        assert len(sampled) == 16
        assert [c.epsilon for c in sampled] == [c.epsilon for c in plain]
        assert [c.witness for c in sampled] == [c.witness for c in plain]

    def test_sample_off_the_fixed_subgroup(self, group):
        off_axis = u(Fraction(1, 3), 0, 0, 0, 0, 0, 0)
        with pytest.raises(ValueError):
            group.enumerate_isotropy_components(NIL_SIGNS, box=8, sample=off_axis)


def random_point(rng, n=7):
    return GroupElement([Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(n)])


class TestInvolution:
    def test_homomorphism(self, group):
        rng = random.Random(31)
        for _ in range(100):
            x, y = random_point(rng), random_point(rng)
            assert group.apply_involution(group.bch_product(x, y), NIL_SIGNS) == group.bch_product(
                group.apply_involution(x, NIL_SIGNS), group.apply_involution(y, NIL_SIGNS)
            )

    def test_order_two(self, group):
        rng = random.Random(32)
        for _ in range(100):
            x = random_point(rng)
            assert group.apply_involution(group.apply_involution(x, NIL_SIGNS), NIL_SIGNS) == x

    def test_wrong_signs_break_the_homomorphism(self, group):
        signs = [-1, 1, 1, 1, 1, 1, 1]
        x, y = u(1, 0, 0, 0, 0, 0, 0), u(0, 1, 0, 0, 0, 0, 0)
        assert group.apply_involution(group.bch_product(x, y), signs) != group.bch_product(
            group.apply_involution(x, signs), group.apply_involution(y, signs)
        )
