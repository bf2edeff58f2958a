from unittest import TestCase, main

from hypothesis import given, settings, strategies as st

from twistkit.chern import (ConnectionT2, LineBundleT2, TrigPolynomial, check_dichotomy,
                            chern_number, chern_report, curvature_offset, equivariant_structure,
                            flat_connection_from_action, standard_connection)
from twistkit.errors import DomainError, StructuralError
from twistkit.models import AffineModel, SectionAction, TorusModel, VectorField
from twistkit.scalars import I

from tests.helpers import TRANSLATIONS

modes = st.tuples(st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3))
trig_polynomials = st.dictionaries(modes, st.integers(min_value=-5, max_value=5), max_size=4).map(
    lambda coefficients: TrigPolynomial({m: complex(c) for m, c in coefficients.items()}))


class TestChernNumber(TestCase):
    def test_standard_bundles(self):
        for degree in range(-3, 4):
            self.assertAlmostEqual(chern_number(standard_connection(degree)), degree, places=10)

    def test_trivial_bundle_is_exactly_zero(self):
        self.assertEqual(chern_number(LineBundleT2(0)), 0.0)

    def test_offset(self):
        connection = ConnectionT2(c0=curvature_offset(2))
        self.assertAlmostEqual(chern_number(LineBundleT2(2, connection)), 2.0, places=10)

    @settings(max_examples=25, deadline=None)
    @given(trig_polynomials, trig_polynomials, st.integers(min_value=-3, max_value=3))
    def test_periodic_perturbations_do_not_change_c1(self, A_x, A_y, degree):
        connection = ConnectionT2(A_x, A_y, curvature_offset(degree))
        self.assertAlmostEqual(chern_number(LineBundleT2(degree, connection), grid=16), degree,
                               places=9)

    @settings(max_examples=25, deadline=None)
    @given(trig_polynomials)
    def test_gauge_invariance(self, phi):
        connection = ConnectionT2(c0=curvature_offset(1)).gauge_transform(phi)
        self.assertAlmostEqual(chern_number(LineBundleT2(1, connection), grid=16), 1.0, places=9)

    def test_grid_must_be_positive(self):
        with self.assertRaises(StructuralError):
            chern_number(LineBundleT2(0), grid=0)

    def test_non_integer_modes_are_not_periodic(self):
        with self.assertRaises(DomainError):
            TrigPolynomial({(0.5, 0): 1.0})
        with self.assertRaises(DomainError):
            ConnectionT2(A_x="sin(x)")


class TestChernReport(TestCase):
    def test_matching_degree_passes(self):
        self.assertTrue(chern_report(standard_connection(3)).passed)

    def test_wrong_degree_fails(self):
        mislabelled = LineBundleT2(2, ConnectionT2(c0=curvature_offset(1)), name="mislabelled")
        report = chern_report(mislabelled)
        self.assertTrue(report.failed)
        self.assertTrue(report.witnesses)


class TestEquivariantStructures(TestCase):
    def setUp(self):
        self.model = TorusModel(2, 0)

    def _cos_y(self):
        return (self.model.mode(0, 1) + self.model.mode(0, -1)) * (I / 2)

    def test_flat_trivial_bundle_is_accepted(self):
        A_x = TrigPolynomial.from_fourier(self.model.mode(1, 0) * I)
        flat = equivariant_structure(LineBundleT2(0, ConnectionT2(A_x)))
        self.assertAlmostEqual(chern_number(flat), 0.0, places=12)
        report = check_dichotomy(LineBundleT2(0, ConnectionT2(A_x)))
        self.assertTrue(report.passed)
        self.assertTrue(report.details[0]["accepted"])

    def test_nontrivial_degree_admits_no_structure(self):
        with self.assertRaises(DomainError):
            equivariant_structure(standard_connection(1))
        report = check_dichotomy(standard_connection(1))
        self.assertTrue(report.passed)
        self.assertFalse(report.details[0]["accepted"])

    def test_curved_connection_is_refused(self):
        bundle = LineBundleT2(0, ConnectionT2(TrigPolynomial.from_fourier(self._cos_y())))
        with self.assertRaises(DomainError):
            equivariant_structure(bundle)

    def test_non_periodic_action_is_refused(self):
        model = AffineModel(2, 0)
        images = [VectorField(model, VectorField.partial(model, 0).coefficients,
                              model.coordinate(1)),
                  VectorField.partial(model, 1)]
        with self.assertRaises(DomainError):
            flat_connection_from_action(SectionAction(TRANSLATIONS, model, images))

    def test_connection_read_off_an_action(self):
        potential = self.model.mode(0, 1) * 2
        images = [VectorField(self.model, VectorField.partial(self.model, 0).coefficients),
                  VectorField(self.model, VectorField.partial(self.model, 1).coefficients,
                              potential)]
        bundle = flat_connection_from_action(SectionAction(TRANSLATIONS, self.model, images))
        self.assertEqual(bundle.connection.A_y.coefficients, {(0, 1): 2})
        self.assertEqual(bundle.connection.A_x.coefficients, {})
        self.assertTrue(bundle.connection.is_flat_form())


if __name__ == "__main__":
    main()
