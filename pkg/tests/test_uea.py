from unittest import TestCase, main

from hypothesis import given, strategies as st

from twistkit.errors import DomainError, StructuralError
from twistkit.scalars import Scalar
from twistkit.uea import (LieAlgebraSpec, TensorElement, UEAElement, coproduct, coproduct_on_leg,
                          counit, counit_on_leg, pbw_normalize, tensor, tensor_mul,
                          validate_lie_algebra)

AB = LieAlgebraSpec.from_brackets(["H", "E"], {("H", "E"): {"E": 1}})
SL2 = LieAlgebraSpec.from_brackets(["H", "E", "F"], {("H", "E"): {"E": 2},
                                                     ("H", "F"): {"F": -2},
                                                     ("E", "F"): {"H": 1}})
words = st.lists(st.integers(min_value=0, max_value=2), max_size=4)


def gen(spec, name):
    return UEAElement.generator(spec, name)


class TestLieAlgebra(TestCase):
    def test_brackets_are_antisymmetrized(self):
        self.assertEqual(AB.bracket(1, 0), {1: Scalar(-1)})
        self.assertFalse(AB.is_abelian())
        self.assertTrue(LieAlgebraSpec.abelian(["X", "Y"]).is_abelian())

    def test_valid_algebras_pass(self):
        self.assertTrue(validate_lie_algebra(AB).passed)
        self.assertTrue(validate_lie_algebra(SL2).passed)

    def test_jacobi_violation_is_reported(self):
        broken = LieAlgebraSpec.from_brackets(["A", "B", "C"], {("A", "B"): {"C": 1},
                                                                ("A", "C"): {"A": 1}})
        report = validate_lie_algebra(broken)
        self.assertTrue(report.failed)
        self.assertTrue(any(d.get("kind") == "jacobi" for d in report.details))

    def test_antisymmetry_violation_is_reported(self):
        report = validate_lie_algebra(LieAlgebraSpec(["H", "E"], {(0, 1, 1): 1}))
        self.assertTrue(report.failed)
        self.assertTrue(any(d.get("kind") == "antisymmetry" for d in report.details))

    def test_duplicate_generators(self):
        with self.assertRaises(StructuralError):
            LieAlgebraSpec(["X", "X"])


class TestUEAElement(TestCase):
    def test_pbw_straightening(self):
        H, E = gen(AB, "H"), gen(AB, "E")
        self.assertEqual(E * H, H * E - E)
        self.assertEqual(pbw_normalize(AB, [1, 0]), H * E - E)
        self.assertEqual((H * E - E * H), E)

    def test_sl2_commutator(self):
        E, F, H = gen(SL2, "E"), gen(SL2, "F"), gen(SL2, "H")
        self.assertEqual(E * F - F * E, H)
        self.assertEqual(H * F - F * H, F * -2)

    def test_unordered_monomial_rejected(self):
        with self.assertRaises(StructuralError):
            UEAElement(AB, {(1, 0): 1})

    def test_only_scalars_are_units(self):
        self.assertEqual(UEAElement.scalar(AB, 2).inverse(), UEAElement.scalar(AB, Scalar(1, 0) / 2))
        with self.assertRaises(DomainError):
            gen(AB, "H").inverse()

    def test_mixing_algebras_fails(self):
        with self.assertRaises(StructuralError):
            gen(AB, "H") + gen(SL2, "H")

    @given(words, words, words)
    def test_associative(self, u, v, w):
        a, b, c = (pbw_normalize(SL2, word) for word in (u, v, w))
        self.assertEqual((a * b) * c, a * (b * c))


class TestHopfStructure(TestCase):
    def test_primitive_coproduct(self):
        H = gen(AB, "H")
        one = UEAElement.one(AB)
        self.assertEqual(coproduct(H), tensor(H, one) + tensor(one, H))
        self.assertEqual(counit(H), Scalar(0))
        self.assertEqual(counit(UEAElement.scalar(AB, 3)), Scalar(3))

    @given(words, words)
    def test_coproduct_is_multiplicative(self, u, v):
        a, b = pbw_normalize(SL2, u), pbw_normalize(SL2, v)
        self.assertEqual(coproduct(a * b), tensor_mul(coproduct(a), coproduct(b)))

    @given(words)
    def test_coassociative_and_counital(self, u):
        a = pbw_normalize(SL2, u)
        delta = coproduct(a)
        self.assertEqual(coproduct_on_leg(delta, 1), coproduct_on_leg(delta, 2))
        self.assertEqual(counit_on_leg(delta, 1), a)
        self.assertEqual(counit_on_leg(delta, 2), a)

    def test_extend_inserts_unit_legs(self):
        H, E = gen(AB, "H"), gen(AB, "E")
        one = UEAElement.one(AB)
        t = tensor(H, E)
        self.assertEqual(t.extend(2), tensor(H, E, one))
        self.assertEqual(t.extend(0), tensor(one, H, E))
        self.assertEqual(counit_on_leg(t.extend(1), 2), t)

    def test_tensor_units(self):
        unit = TensorElement.one(AB, 2)
        self.assertTrue(unit.is_unit_multiple())
        self.assertEqual((unit * 2).inverse(), unit * (Scalar(1) / 2))
        with self.assertRaises(DomainError):
            tensor(gen(AB, "H"), gen(AB, "E")).inverse()
        with self.assertRaises(StructuralError):
            TensorElement.one(AB, 1)


if __name__ == "__main__":
    main()
