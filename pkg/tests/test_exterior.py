"""Tests for sparse exterior forms."""

import random
from fractions import Fraction

import pytest

from src.core.exterior import (
    AmbientMismatchError,
    DegreeOutOfRangeError,
    Form,
    basis_of_degree,
    contract,
    normalize,
    unit_vector,
    wedge,
)
from src.core.scalars import SQRT3, FieldElement


def e(n, *indices, c=1):
    return Form.monomial(n, indices, c)


class TestWedge:
    def test_antisymmetry(self):
        assert wedge(e(3, 1), e(3, 2)) == e(3, 1, 2)
        assert wedge(e(3, 2), e(3, 1)) == -e(3, 1, 2)

    def test_repeated_index_vanishes(self):
        assert wedge(e(3, 1) + e(3, 2), e(3, 1, 2)).is_zero()

    def test_top_degree_is_positive(self):
        top = Form.scalar(5, 1)
        for i in range(1, 6):
            top = top ^ Form.generator(5, i)
        assert top == e(5, 1, 2, 3, 4, 5)

    def test_graded_commutativity(self):
        a, b = e(4, 1), e(4, 2, 3)
        assert a ^ b == b ^ a
        c = e(4, 4)
        assert a ^ c == -(c ^ a)

    def test_associativity(self):
        x = e(5, 1) + e(5, 2, c=2)
        y = e(5, 3, 4) - e(5, 2, 5)
        z = e(5, 5, c=SQRT3) + e(5, 4)
        assert (x ^ y) ^ z == x ^ (y ^ z)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatchError):
            wedge(e(3, 1), e(4, 1))


class TestContraction:
    def test_basic(self):
        assert contract(unit_vector(2, 1), e(2, 1, 2)) == e(2, 2)
        assert contract(unit_vector(2, 2), e(2, 1, 2)) == -e(2, 1)

    def test_linear_combination(self):
        vector = [1, 0, 1, 0, 0]
        assert contract(vector, e(5, 1, 3, 5)) == e(5, 3, 5) - e(5, 1, 5)

    def test_antiderivation(self):
        v = [1, 2, 0, -1]
        a, b = e(4, 1, 2), e(4, 3) + e(4, 4)
        left = contract(v, a ^ b)
        right = (contract(v, a) ^ b) + (a ^ contract(v, b))
        assert left == right


class TestStructure:
    def test_normalize(self):
        assert normalize((3, 1, 2)) == (1, (1, 2, 3))
        assert normalize((2, 1)) == (-1, (1, 2))
        assert normalize((1, 1)) == (0, None)

    def test_basis_of_degree(self):
        assert basis_of_degree(3, 2) == [(1, 2), (1, 3), (2, 3)]
        assert basis_of_degree(7, 0) == [()]
        assert len(basis_of_degree(7, 3)) == 35

    @pytest.mark.parametrize("k", [-1, 4])
    def test_basis_of_degree_out_of_range(self, k):
        with pytest.raises(DegreeOutOfRangeError):
            basis_of_degree(3, k)

    def test_rejects_unsorted_monomials(self):
        with pytest.raises(ValueError):
            Form(3, {(2, 1): 1})

    def test_degree(self):
        assert e(4, 1, 2).degree() == 2
        assert Form.zero(4).degree() is None
        with pytest.raises(ValueError):
            (e(4, 1) + e(4, 1, 2)).degree()

    def test_text(self):
        form = Form(5, {(1, 3, 4): 2, (2, 5): -SQRT3})
        assert form.to_text() == "-r3*e25 + 2*e134"
        assert Form(3, {(1, 2): 1}).to_text([3, 4, 7]) == "e34"
        assert Form.zero(2).to_text() == "0"


def random_form(rng, n, k, terms=4):
    """Homogeneous k-form with a few coefficients in Q(√2, √3)."""
    monomials = basis_of_degree(n, k)
    chosen = rng.sample(monomials, min(terms, len(monomials)))
    return Form(
        n,
        {
            m: FieldElement(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-2, 2), 0, rng.randint(-1, 1))
            for m in chosen
        },
    )


class TestRandomisedProperties:
    N = 6

    def test_associativity(self):
        rng = random.Random(11)
        for _ in range(25):
            x, y, z = (random_form(rng, self.N, rng.randint(0, 2)) for _ in range(3))
            assert (x ^ y) ^ z == x ^ (y ^ z)

    def test_graded_commutativity(self):
        rng = random.Random(12)
        for _ in range(25):
            p, q = rng.randint(0, 3), rng.randint(0, 3)
            a, b = random_form(rng, self.N, p), random_form(rng, self.N, q)
            expected = b ^ a if (p * q) % 2 == 0 else -(b ^ a)
            assert a ^ b == expected

    def test_contraction_squares_to_zero(self):
        rng = random.Random(13)
        for _ in range(25):
            v = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(self.N)]
            a = random_form(rng, self.N, rng.randint(0, 4), terms=6)
            assert contract(v, contract(v, a)).is_zero()
