from unittest import TestCase, main

from hypothesis import given, settings, strategies as st

from twistkit.errors import DomainError, StructuralError
from twistkit.models import (ActionAssignment, AffineModel, SectionAction, TorusModel, VectorField,
                             contract, make_model, pointwise_mul, poisson_bracket, tensor_act)
from twistkit.scalars import I, Scalar, TruncatedSeries
from twistkit.uea import UEAElement, coproduct, pbw_normalize, tensor, uea_mul
from twistkit.utils import generate_seed

from tests.helpers import AX_PLUS_B, TRANSLATIONS, affine_action, torus_action


class TestTorusModel(TestCase):
    def setUp(self):
        self.model = TorusModel(2, 2)

    def test_modes_are_eigenfunctions(self):
        U = self.model.mode(3, -1)
        self.assertEqual(self.model.differentiate(U, 0), U * Scalar(0, 3))
        self.assertEqual(self.model.differentiate(U, 1), U * Scalar(0, -1))
        self.assertTrue(self.model.differentiate(self.model.one(), 0).is_zero())

    def test_modes_multiply_by_adding(self):
        product = pointwise_mul(self.model.mode(1, 0), self.model.mode(-1, 2))
        self.assertEqual(product, self.model.mode(0, 2))

    def test_coordinates_are_not_periodic(self):
        with self.assertRaises(DomainError):
            self.model.coordinate(0)

    def test_basis(self):
        self.assertEqual(len(self.model.basis(1)), 9)
        self.assertEqual(self.model.coordinate_names, ("x", "y"))

    def test_poisson_bracket_of_unit_modes(self):
        U, V = self.model.mode(1, 0), self.model.mode(0, 1)
        self.assertEqual(poisson_bracket(U, V), self.model.mode(1, 1) * Scalar(-1))
        self.assertTrue(poisson_bracket(U, U).is_zero())


class TestAffineModel(TestCase):
    def setUp(self):
        self.model = AffineModel(2, 1)

    def test_power_rule(self):
        x = self.model.coordinate(0)
        cube = pointwise_mul(pointwise_mul(x, x), x)
        self.assertEqual(self.model.differentiate(cube, 0), pointwise_mul(x, x) * 3)
        self.assertTrue(self.model.differentiate(cube, 1).is_zero())

    def test_basis_is_graded(self):
        self.assertEqual(self.model.basis(1), [(0, 0), (0, 1), (1, 0)])
        self.assertEqual(self.model.format_key((2, 1)), "x^2*y")

    def test_negative_exponent_rejected(self):
        with self.assertRaises(StructuralError):
            self.model.basis_element((-1, 0))

    def test_models_do_not_mix(self):
        with self.assertRaises(StructuralError):
            self.model.one() + AffineModel(2, 2).one()


class TestFunctionElement(TestCase):
    def test_h_parts(self):
        model = TorusModel(1, 2)
        f = model.mode(1) * TruncatedSeries([Scalar(1), Scalar(2), Scalar(3)], 2)
        self.assertEqual(f.h_coefficient(1), model.mode(1) * 2)
        self.assertFalse(f.is_h_constant())
        shifted = model.mode(1).h_shift(1)
        self.assertEqual(shifted.h_coefficient(1), model.mode(1))
        self.assertTrue(shifted.h_coefficient(0).is_zero())

    def test_random_elements_are_reproducible(self):
        model = TorusModel(2, 1)
        first = model.random_element(generate_seed(7), 1, size=3)
        second = model.random_element(generate_seed(7), 1, size=3)
        self.assertEqual(first, second)
        self.assertEqual(len(first.terms), 3)

    def test_make_model(self):
        self.assertEqual(make_model("torus", 2, 3), TorusModel(2, 3))
        self.assertEqual(make_model("affine", 1, 3), AffineModel(1, 3))
        with self.assertRaises(ValueError):
            make_model("sphere", 2, 3)


class TestActions(TestCase):
    def test_affine_action_is_a_homomorphism(self):
        assign = affine_action(2)
        self.assertTrue(assign.validate().passed)
        x = assign.model.coordinate(0)
        H = UEAElement.generator(AX_PLUS_B, "H")
        E = UEAElement.generator(AX_PLUS_B, "E")
        self.assertEqual(assign.represent(H, pointwise_mul(x, x)), pointwise_mul(x, x) * -2)
        self.assertEqual(assign.represent(E * E, pointwise_mul(x, x)), assign.model.constant(2))

    def test_wrong_sign_breaks_the_bracket(self):
        model = AffineModel(1, 2)
        images = [VectorField(model, [model.coordinate(0)]), VectorField.partial(model, 0)]
        assign = ActionAssignment(AX_PLUS_B, model, images, name="flipped")
        report = assign.validate()
        self.assertTrue(report.failed)
        with self.assertRaises(DomainError):
            assign.require_valid()

    def test_torus_fields_need_constant_coefficients(self):
        model = TorusModel(2, 1)
        with self.assertRaises(DomainError):
            VectorField(model, [model.mode(1, 0), model.zero()])

    def test_potentials_only_on_sections(self):
        model = TorusModel(2, 1)
        shifted = VectorField(model, VectorField.partial(model, 0).coefficients, model.mode(0, 1))
        images = [shifted, VectorField.partial(model, 1)]
        with self.assertRaises(DomainError):
            ActionAssignment(TRANSLATIONS, model, images)
        sections = SectionAction(TRANSLATIONS, model, images)
        self.assertEqual(sections.act_generator(0, model.one()), model.mode(0, 1))
        self.assertEqual(sections.potential(1), model.zero())

    def test_tensor_act_and_contract(self):
        assign = torus_action(1)
        model = assign.model
        X = UEAElement.generator(TRANSLATIONS, "X")
        Y = UEAElement.generator(TRANSLATIONS, "Y")
        acted = tensor_act(assign, tensor(X, Y), (model.mode(1, 0), model.mode(0, 1)))
        result = contract(acted, pointwise_mul, model)
        self.assertEqual(result, model.mode(1, 1) * (I * I))
        with self.assertRaises(StructuralError):
            tensor_act(assign, tensor(X, Y), (model.one(),))



words = st.lists(st.integers(min_value=0, max_value=1), max_size=4)
cubics = st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4)
elements = st.lists(st.tuples(words, st.integers(min_value=-3, max_value=3)), max_size=3)


def cubic(model, coefficients):
    result = model.zero()
    for power, c in enumerate(coefficients):
        result = result + model.basis_element((power,), c)
    return result


def pbw_element(spec, terms):
    result = UEAElement.scalar(spec, 0)
    for word, c in terms:
        result = result + pbw_normalize(spec, word, c)
    return result


class TestRepresentationLaws(TestCase):
    assign = affine_action(2)

    @given(words, cubics)
    @settings(max_examples=60, deadline=None)
    def test_normal_ordering_matches_composition(self, word, coefficients):
        f = cubic(self.assign.model, coefficients)
        composed = f
        for i in reversed(word):
            composed = self.assign.act_generator(i, composed)
        self.assertEqual(self.assign.represent(pbw_normalize(AX_PLUS_B, word), f), composed)

    @given(elements, elements, cubics)
    @settings(max_examples=40, deadline=None)
    def test_products_act_by_composition(self, u_terms, v_terms, coefficients):
        u, v = pbw_element(AX_PLUS_B, u_terms), pbw_element(AX_PLUS_B, v_terms)
        f = cubic(self.assign.model, coefficients)
        self.assertEqual(self.assign.represent(uea_mul(u, v), f),
                         self.assign.represent(u, self.assign.represent(v, f)))

    @given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=2), cubics, cubics)
    @settings(max_examples=40, deadline=None)
    def test_leibniz_through_the_coproduct(self, word, f_coefficients, g_coefficients):
        model = self.assign.model
        x = pbw_normalize(AX_PLUS_B, word)
        f, g = cubic(model, f_coefficients), cubic(model, g_coefficients)
        split = contract(tensor_act(self.assign, coproduct(x), (f, g)), pointwise_mul, model)
        self.assertEqual(self.assign.represent(x, pointwise_mul(f, g)), split)

    def test_leibniz_on_the_torus(self):
        assign = torus_action(1)
        model = assign.model
        f = model.mode(1, -1) + model.mode(0, 2) * Scalar(0, 1)
        g = model.mode(-2, 1) * 3 + model.one()
        for word in ([0], [1], [0, 0], [0, 1], [1, 1]):
            x = pbw_normalize(TRANSLATIONS, word)
            split = contract(tensor_act(assign, coproduct(x), (f, g)), pointwise_mul, model)
            self.assertEqual(assign.represent(x, pointwise_mul(f, g)), split)


if __name__ == "__main__":
    main()
