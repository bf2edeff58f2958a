from fractions import Fraction
from unittest import TestCase, main

from twistkit.errors import DomainError
from twistkit.models import pointwise_mul
from twistkit.scalars import Scalar
from twistkit.star import (EquivalenceMap, StarAlgebra, apply_equivalence, check_associativity,
                           check_classical_limit, check_first_order_poisson, check_intertwining,
                           check_torus_relation, check_unitality, extract_bk, star_eval)
from twistkit.uea import UEAElement

from tests.helpers import (TRANSLATIONS, affine_action, jordanian_twist, moyal_twist,
                           naive_twist, symmetric_twist, torus_action)

ORDER = 2


class TestMoyalStar(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.S = StarAlgebra(torus_action(ORDER), moyal_twist(ORDER), name="moyal")
        cls.model = cls.S.model

    def test_unit_modes(self):
        U, V = self.model.mode(1, 0), self.model.mode(0, 1)
        self.assertEqual(extract_bk(self.S, U, V, 0), self.model.mode(1, 1))
        self.assertEqual(extract_bk(self.S, U, V, 1),
                         self.model.mode(1, 1) * Scalar(0, Fraction(-1, 2)))
        self.assertEqual(extract_bk(self.S, U, V, 2),
                         self.model.mode(1, 1) * Scalar(Fraction(-1, 8)))

    def test_torus_relation(self):
        report = check_torus_relation(self.S)
        self.assertTrue(report.passed, report.witnesses)

    def test_axioms(self):
        self.assertTrue(check_associativity(self.S, cutoff=1, random_samples=3, seed=1).passed)
        self.assertTrue(check_unitality(self.S, cutoff=1, random_samples=3).passed)
        self.assertTrue(check_classical_limit(self.S, cutoff=1).passed)

    def test_first_order_poisson(self):
        self.assertTrue(check_first_order_poisson(self.S, cutoff=1).passed)

    def test_star_eval_is_the_product(self):
        U, V = self.model.mode(1, 0), self.model.mode(0, 1)
        self.assertEqual(star_eval(self.S, U, V), self.S(U, V))
        self.assertNotEqual(self.S(U, V), self.S(V, U))


class TestJordanianStar(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.S = StarAlgebra(affine_action(ORDER), jordanian_twist(ORDER), name="jordanian")

    def test_associative_and_unital(self):
        self.assertTrue(check_associativity(self.S, cutoff=2, random_samples=3).passed)
        self.assertTrue(check_unitality(self.S, cutoff=2).passed)
        self.assertTrue(check_classical_limit(self.S, cutoff=2).passed)

    def test_first_order_term(self):
        x = self.S.model.coordinate(0)
        # F^{-1} = 1 - h H⊗E + ..., so B1(x, x) = -(-x)(1) = x
        self.assertEqual(extract_bk(self.S, x, x, 1), x)

    def test_no_poisson_structure_on_the_line(self):
        with self.assertRaises(DomainError):
            check_first_order_poisson(self.S)


class TestBrokenTwists(TestCase):
    def test_invalid_twist_is_refused(self):
        with self.assertRaises(DomainError):
            StarAlgebra(affine_action(ORDER), naive_twist(ORDER))

    def test_naive_twist_breaks_associativity_at_second_order(self):
        S = StarAlgebra(affine_action(ORDER), naive_twist(ORDER), require_valid_twist=False)
        report = check_associativity(S, cutoff=2)
        self.assertTrue(report.failed)
        self.assertEqual(report.lowest_failing_order, 2)

    def test_symmetric_twist_has_no_poisson_first_order(self):
        S = StarAlgebra(torus_action(ORDER), symmetric_twist(ORDER))
        self.assertTrue(check_associativity(S, cutoff=1).passed)
        report = check_first_order_poisson(S, cutoff=1)
        self.assertTrue(report.failed)
        self.assertEqual(report.lowest_failing_order, 1)


class TestEquivalence(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.assign = torus_action(ORDER)
        cls.S = StarAlgebra(cls.assign, moyal_twist(ORDER), name="moyal")
        model = cls.assign.model
        XY = UEAElement.generator(TRANSLATIONS, "X") * UEAElement.generator(TRANSLATIONS, "Y")
        cls.T = EquivalenceMap(cls.assign, [[(model.one(), XY)]], name="T")

    def test_apply_and_invert(self):
        model = self.assign.model
        f = model.mode(1, 1) + model.mode(2, -1)
        self.assertEqual(self.T.inverse_apply(self.T.apply(f)), f)
        # XY acts on e(1,1) by i*i
        self.assertEqual(self.T.apply(model.mode(1, 1)),
                         model.mode(1, 1) + model.mode(1, 1).h_shift(1) * -1)

    def test_equivalent_star(self):
        S_prime = apply_equivalence(self.T, self.S)
        self.assertTrue(check_unitality(S_prime, cutoff=1).passed)
        self.assertTrue(check_intertwining(self.T, self.S, S_prime, cutoff=1,
                                           random_samples=3).passed)
        samples = self.S.random_functions(6, seed=3, cutoff=1)
        triples = [tuple(samples[3 * i:3 * i + 3]) for i in range(2)]
        self.assertTrue(check_associativity(S_prime, triples=triples).passed)

    def test_unit_must_be_fixed(self):
        model = self.assign.model
        with self.assertRaises(DomainError):
            EquivalenceMap(self.assign, [[(model.one(), UEAElement.one(TRANSLATIONS))]])

    def test_first_order_of_equivalent_star_stays_pointwise(self):
        S_prime = apply_equivalence(self.T, self.S)
        model = self.assign.model
        U, V = model.mode(1, 0), model.mode(0, 1)
        self.assertEqual(S_prime(U, V).h_coefficient(0), pointwise_mul(U, V))

    def test_equivalent_star_keeps_the_poisson_bracket(self):
        S_prime = apply_equivalence(self.T, self.S)
        self.assertTrue(check_first_order_poisson(S_prime, cutoff=1).passed)
        model = self.assign.model
        U, V = model.mode(1, 0), model.mode(0, 1)
        self.assertNotEqual(extract_bk(S_prime, U, V, 1), extract_bk(self.S, U, V, 1))
        self.assertEqual(extract_bk(S_prime, U, V, 1) - extract_bk(S_prime, V, U, 1),
                         extract_bk(self.S, U, V, 1) - extract_bk(self.S, V, U, 1))


if __name__ == "__main__":
    main()
