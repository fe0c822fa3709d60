"""Tests for the algebraic G2 checks."""

import random
from fractions import Fraction

import pytest

from src.algebra.cdga import involution_from_signs
from src.algebra.notation import parse_field_matrix, parse_form
from src.config import OrbifoldConfig
from src.core.exterior import Form
from src.core.linalg import determinant
from src.core.scalars import SQRT6, FieldElement
from src.geometry.g2check import (
    G2FormError,
    G2InvolutionError,
    change_of_basis,
    check_g2_involution,
    gram_from_threeform,
    is_g2_form,
    pulled_back_gram,
    rational_ninth_root,
    standard_g2_form,
)
from tests.conftest import NIL_SIGNS


@pytest.fixture(scope="module")
def phi():
    config = OrbifoldConfig()
    return change_of_basis(parse_form(config.g2_form, 7), parse_field_matrix(config.v_matrix))


class TestGram:
    def test_standard_form(self):
        report = gram_from_threeform(standard_g2_form())
        assert report.b == [[6 if i == j else 0 for j in range(7)] for i in range(7)]
        assert report.definite
        assert report.sign == 1
        assert report.conformal_factor == 1
        assert report.metric[0][0] == 1

    def test_degenerate_form(self):
        report = gram_from_threeform(Form(7, {(1, 2, 3): 1}))
        assert not report.definite
        assert report.sign == 0

    def test_small_perturbation_stays_definite(self):
        perturbed = standard_g2_form() + Form(7, {(1, 2, 3): Fraction(1, 100)})
        assert is_g2_form(perturbed)

    def test_negative_form(self):
        report = gram_from_threeform(-standard_g2_form())
        assert report.definite
        assert report.sign == -1

    def test_closed_form_of_pullback(self):
        matrix = [[1 if i == j else 0 for j in range(7)] for i in range(7)]
        matrix[0][1] = 1
        matrix[2][2] = 2
        matrix[3][6] = -1
        pulled = change_of_basis(standard_g2_form(), matrix)
        assert gram_from_threeform(pulled).b == pulled_back_gram(matrix)

    def test_random_change_of_basis_keeps_definiteness(self):
        rng = random.Random(77)
        checked = 0
        for _ in range(8):
            matrix = [[rng.randint(-2, 2) for _ in range(7)] for _ in range(7)]
            det = determinant(matrix)
            if not det:
                continue
            report = gram_from_threeform(change_of_basis(standard_g2_form(), matrix))
            assert report.definite
            assert report.sign == (1 if det > 0 else -1)
            assert report.b == pulled_back_gram(matrix)
            checked += 1
        assert checked

    def test_rejects_wrong_degree(self):
        with pytest.raises(G2FormError):
            gram_from_threeform(Form(7, {(1, 2): 1}))
        with pytest.raises(G2FormError):
            gram_from_threeform(Form(6, {(1, 2, 3): 1}))

    def test_singular_change_of_basis(self):
        with pytest.raises(G2FormError):
            change_of_basis(standard_g2_form(), [[0] * 7 for _ in range(7)])

    def test_ninth_root(self):
        assert rational_ninth_root(FieldElement(512)) == 2
        assert rational_ninth_root(FieldElement(Fraction(-1, 512))) == Fraction(-1, 2)
        assert rational_ninth_root(FieldElement(3)) is None
        assert rational_ninth_root(SQRT6) is None


class TestOrbifoldForm:
    def test_definite(self, phi):
        assert is_g2_form(phi)

    def test_closed(self, phi, nil_cdga):
        assert not nil_cdga.d(phi)

    def test_invariant(self, phi, nil_cdga):
        involution = involution_from_signs(nil_cdga, NIL_SIGNS)
        assert involution.apply(phi) == phi

    def test_dropping_a_term_breaks_closedness(self, nil_cdga):
        config = OrbifoldConfig()
        text = config.g2_form.replace(" + e347", "")
        broken = change_of_basis(parse_form(text, 7), parse_field_matrix(config.v_matrix))
        assert nil_cdga.d(broken)

    def test_involution(self, phi):
        report = check_g2_involution(phi, NIL_SIGNS)
        assert report.plus_generators == [3, 4, 7]
        assert (report.plus_dimension, report.minus_dimension) == (3, 4)
        assert report.restricted_coefficient == SQRT6 * -6
        assert report.volume_sign == -1


class TestInvolutionErrors:
    def test_identity(self):
        with pytest.raises(G2InvolutionError):
            check_g2_involution(standard_g2_form(), [1] * 7)

    def test_term_changes_sign(self):
        with pytest.raises(G2InvolutionError) as info:
            check_g2_involution(standard_g2_form(), [1, 1, 1, 1, 1, 1, -1])
        assert info.value.monomial == (1, 2, 7)

    def test_bad_signs(self):
        with pytest.raises(G2InvolutionError):
            check_g2_involution(standard_g2_form(), [1, -1])
