from unittest import TestCase, main

from twistkit.dsl import parse_spec
from twistkit.errors import StructuralError
from twistkit.report import BLOCKED, FAIL, PASS, SKIPPED, all_passed
from twistkit.runner import RunOptions, run_command

from tests.helpers import read_corpus


def small_options(**overrides) -> RunOptions:
    options = dict(order=2, cutoffs={"torus": 1, "affine": 1}, grid=16, random_samples=2)
    options.update(overrides)
    return RunOptions(**options)


def load(name):
    return parse_spec(read_corpus(name))


def statuses(reports, check):
    return [r.status for r in reports if r.check == check]


class TestCommands(TestCase):
    def test_validate(self):
        reports = run_command("validate", load("moyal_t2.twk"), small_options())
        self.assertEqual([r.check for r in reports], ["lie-algebra", "action"])
        self.assertTrue(all_passed(reports))

    def test_check_twist_on_sabotaged_twists(self):
        reports = run_command("check-twist", load("sabotaged.twk"), small_options())
        naive = [r for r in reports if r.subject == "naive" and r.check == "cocycle"][0]
        symmetric = [r for r in reports if r.subject == "symmetric" and r.check == "cocycle"][0]
        self.assertEqual((naive.status, naive.lowest_failing_order), (FAIL, 2))
        self.assertEqual(symmetric.status, PASS)

    def test_non_scalar_head_blocks_the_twist_checks(self):
        document = parse_spec("liealgebra g { X Y }\ntwist F = series [1 + X ⊗ Y]")
        reports = run_command("check-twist", document, small_options())
        self.assertEqual([r.status for r in reports], [FAIL] + [BLOCKED] * 4)
        self.assertEqual(reports[0].check, "gauge-normalization")

    def test_scaled_twist_is_normalized(self):
        document = parse_spec("liealgebra g { X Y }\ntwist F = 2*exp(h*X ⊗ Y)")
        reports = run_command("check-twist", document, small_options())
        self.assertEqual(reports[0].check, "gauge-normalization")
        self.assertTrue(all_passed(reports))

    def test_star_eval(self):
        reports = run_command("star-eval", load("moyal_t2.twk"), small_options())
        self.assertEqual([r.check for r in reports], ["star-eval", "torus-relation"])
        self.assertTrue(all_passed(reports))
        orders = [d["order"] for d in reports[0].details if "order" in d]
        self.assertEqual(orders, [0, 1, 2])

    def test_star_eval_with_a_pair(self):
        options = small_options(pair=("exp(i*y)", "exp(i*x)"))
        reports = run_command("star-eval", load("moyal_t2.twk"), options)
        summary = reports[0].details[-1]["summary"]
        self.assertIn("e(1,1)", summary)

    def test_poisson_check(self):
        reports = run_command("poisson-check", load("sabotaged.twk"), small_options())
        self.assertEqual([(r.subject, r.status) for r in reports],
                         [("naive_star", SKIPPED), ("symmetric_star", FAIL)])
        reports = run_command("poisson-check", load("moyal_t2.twk"), small_options())
        self.assertEqual(statuses(reports, "first-order-poisson"), [PASS])

    def test_assoc_check(self):
        reports = run_command("assoc-check", load("sabotaged.twk"), small_options())
        naive = [r for r in reports if r.subject == "naive_star" and r.check == "associativity"][0]
        self.assertEqual((naive.status, naive.lowest_failing_order), (FAIL, 2))
        self.assertEqual(statuses([r for r in reports if r.subject == "symmetric_star"],
                                  "associativity"), [PASS])
        self.assertTrue(all_passed(run_command("assoc-check", load("jordanian_axb.twk"),
                                               small_options())))

    def test_modules(self):
        reports = run_command("module-check", load("jordanian_axb.twk"), small_options())
        self.assertEqual([r.check for r in reports], ["module-axioms", "psi"])
        self.assertTrue(all_passed(reports))
        reports = run_command("equivariance-check", load("jordanian_axb.twk"), small_options())
        self.assertTrue(all_passed(reports))

    def test_equiv_apply(self):
        reports = run_command("equiv-apply", load("moyal_t2.twk"), small_options())
        self.assertEqual([r.check for r in reports],
                         ["associativity", "unitality", "intertwining"])
        self.assertTrue(all_passed(reports))

    def test_chern(self):
        reports = run_command("chern", load("bundle_degree_d.twk"), small_options(degree=4))
        self.assertEqual([r.subject for r in reports],
                         ["O_minus2", "L0", "O_3", "gauged", "flat", "O(4)"])
        self.assertTrue(all_passed(reports))
        reports = run_command("chern", None, small_options(degree=-1))
        self.assertEqual(statuses(reports, "chern"), [PASS])

    def test_bundle_dichotomy(self):
        reports = run_command("equivariance-check", load("bundle_degree_d.twk"), small_options())
        accepted = {r.subject: r.details[0]["accepted"] for r in reports}
        self.assertEqual(accepted, {"O_minus2": False, "L0": True, "O_3": False, "gauged": False,
                                    "flat": True})
        self.assertTrue(all_passed(reports))


class TestCampaign(TestCase):
    def test_all_on_sabotaged(self):
        reports = run_command("all", load("sabotaged.twk"), small_options())
        self.assertFalse(all_passed(reports))
        blocked = [r.subject for r in reports if r.status == BLOCKED]
        self.assertEqual(blocked, ["naive_star"])
        self.assertIn(FAIL, statuses([r for r in reports if r.subject == "symmetric_star"],
                                     "first-order-poisson"))

    def test_all_on_jordanian(self):
        reports = run_command("all", load("jordanian_axb.twk"), small_options())
        self.assertTrue(all_passed(reports), [r.witnesses for r in reports if r.failed])
        self.assertEqual(statuses(reports, "first-order-poisson"), [SKIPPED])

    def test_all_on_moyal(self):
        reports = run_command("all", load("moyal_t2.twk"), small_options())
        self.assertTrue(all_passed(reports), [r.witnesses for r in reports if r.failed])
        self.assertNotIn(BLOCKED, [r.status for r in reports])

    def test_missing_declarations(self):
        with self.assertRaises(StructuralError):
            run_command("check-twist", load("bundle_degree_d.twk"), small_options())
        with self.assertRaises(StructuralError):
            run_command("validate", None, small_options())
        with self.assertRaises(StructuralError):
            run_command("chern", None, small_options())

    def test_unknown_command(self):
        with self.assertRaises(StructuralError):
            run_command("prove-everything", load("moyal_t2.twk"))

    def test_runs_are_deterministic(self):
        first = run_command("assoc-check", load("jordanian_axb.twk"), small_options(seed=5))
        second = run_command("assoc-check", load("jordanian_axb.twk"), small_options(seed=5))
        self.assertEqual([r.to_dict() for r in first], [r.to_dict() for r in second])


if __name__ == "__main__":
    main()
