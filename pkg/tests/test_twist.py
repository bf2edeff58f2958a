from fractions import Fraction
from unittest import TestCase, main

from twistkit.errors import DomainError, StructuralError
from twistkit.scalars import Scalar, TruncatedSeries
from twistkit.twist import (Twist, check_cocycle, check_counitality, check_mirrored_cocycle,
                            check_twisted_bialgebra, gauge_normalize, invert_twist,
                            trivial_twist, twisted_coproduct)
from twistkit.uea import TensorElement, UEAElement, coproduct, tensor

from tests.helpers import (AX_PLUS_B, TRANSLATIONS, jordanian_twist, moyal_twist, naive_twist,
                           symmetric_twist)


ORDER = 3


class TestTwistConstruction(TestCase):
    def test_exponential_twists_are_normalized(self):
        for F in (moyal_twist(ORDER), jordanian_twist(ORDER), naive_twist(ORDER)):
            self.assertTrue(F.is_normalized, F.name)
            self.assertEqual(F.order, ORDER)

    def test_inverse(self):
        F = jordanian_twist(ORDER)
        one = TruncatedSeries.constant(TensorElement.one(AX_PLUS_B, 2), ORDER)
        self.assertEqual(F.series * invert_twist(F), one)
        self.assertEqual(invert_twist(F) * F.series, one)

    def test_zero_head_rejected(self):
        zero = TensorElement.zero(AX_PLUS_B, 2)
        with self.assertRaises(DomainError):
            Twist(TruncatedSeries([zero, TensorElement.one(AX_PLUS_B, 2)], 1))

    def test_arity_one_rejected(self):
        with self.assertRaises(StructuralError):
            Twist(TruncatedSeries.constant(UEAElement.one(AX_PLUS_B), 1))


class TestCocycle(TestCase):
    def test_trivial_twist(self):
        F = trivial_twist(AX_PLUS_B, ORDER)
        self.assertTrue(check_cocycle(F).passed)
        self.assertTrue(check_counitality(F).passed)

    def test_moyal(self):
        F = moyal_twist(ORDER)
        for check in (check_counitality, check_cocycle, check_mirrored_cocycle,
                      check_twisted_bialgebra):
            self.assertTrue(check(F).passed, check.__name__)

    def test_jordanian(self):
        F = jordanian_twist(ORDER)
        for check in (check_counitality, check_cocycle, check_mirrored_cocycle,
                      check_twisted_bialgebra):
            self.assertTrue(check(F).passed, check.__name__)

    def test_naive_exponential_fails_at_second_order(self):
        F = naive_twist(ORDER)
        self.assertTrue(check_counitality(F).passed)
        report = check_cocycle(F)
        self.assertTrue(report.failed)
        self.assertEqual(report.lowest_failing_order, 2)
        self.assertTrue(report.witnesses)
        holds = {d["order"]: d["holds"] for d in report.details if "order" in d}
        self.assertTrue(holds[0] and holds[1])
        self.assertFalse(holds[2])
        self.assertTrue(check_mirrored_cocycle(F).failed)

    def test_symmetric_abelian_twist_is_a_cocycle(self):
        self.assertTrue(check_cocycle(symmetric_twist(ORDER)).passed)


class TestTwistedCoproduct(TestCase):
    def test_abelian_twist_leaves_coproduct_unchanged(self):
        F = moyal_twist(ORDER)
        X = UEAElement.generator(TRANSLATIONS, "X")
        self.assertEqual(twisted_coproduct(F, X), TruncatedSeries.constant(coproduct(X), ORDER))

    def test_jordanian_twist_deforms_coproduct(self):
        F = jordanian_twist(ORDER)
        E = UEAElement.generator(AX_PLUS_B, "E")
        delta = twisted_coproduct(F, E)
        self.assertEqual(delta.head, coproduct(E))
        self.assertFalse(delta.is_constant())


class TestGaugeNormalization(TestCase):
    def test_scalar_head_is_divided_out(self):
        F = moyal_twist(ORDER)
        scaled = Twist(F.series * Scalar(2), name="scaled")
        self.assertFalse(scaled.is_normalized)
        with self.assertRaises(DomainError):
            scaled.require_normalized()
        self.assertEqual(gauge_normalize(scaled), F)

    def test_non_scalar_head_is_rejected(self):
        H = UEAElement.generator(AX_PLUS_B, "H")
        E = UEAElement.generator(AX_PLUS_B, "E")
        head = TensorElement.one(AX_PLUS_B, 2) + tensor(H, E)
        with self.assertRaises(DomainError):
            gauge_normalize(Twist(TruncatedSeries.constant(head, ORDER)))

    def test_normalization_keeps_the_twisted_coproduct(self):
        for F in (moyal_twist(ORDER), jordanian_twist(ORDER)):
            for factor in (Scalar(2), Scalar(-1, 1)):
                normalized = gauge_normalize(Twist(F.series * factor, name="scaled"))
                self.assertTrue(normalized.is_normalized)
                for name in F.spec.names:
                    x = UEAElement.generator(F.spec, name)
                    self.assertEqual(twisted_coproduct(normalized, x), twisted_coproduct(F, x),
                                     f"{F.name} {factor} {name}")

    def test_only_unit_multiples_are_invertible(self):
        # units of U (x) U are the nonzero multiples of 1 (x) 1
        X = UEAElement.generator(TRANSLATIONS, "X")
        Y = UEAElement.generator(TRANSLATIONS, "Y")
        head = TensorElement.one(TRANSLATIONS, 2) + tensor(X, Y)
        with self.assertRaises(DomainError):
            head.inverse()
        with self.assertRaises(DomainError):
            gauge_normalize(Twist(TruncatedSeries.constant(head, ORDER)))
        self.assertEqual((TensorElement.one(TRANSLATIONS, 2) * Scalar(4)).inverse(),
                         TensorElement.one(TRANSLATIONS, 2) * Scalar(Fraction(1, 4)))

    def test_normalized_twist_is_returned_unchanged(self):
        F = jordanian_twist(ORDER)
        self.assertIs(gauge_normalize(F), F)


if __name__ == "__main__":
    main()
