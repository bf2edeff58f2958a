"""
Command-line runs of the bundled documents at the default options.

`all` on moyal_t2.twk takes minutes; it runs when TWISTKIT_SLOW is set.
"""
import json
import os
from unittest import TestCase, main, skipUnless

from twistkit.cli import EXIT_FAIL, EXIT_PASS
from twistkit.report import FAIL, PASS

from tests.helpers import corpus_path, run_cli

SLOW = bool(os.environ.get("TWISTKIT_SLOW"))


def machine_run(command, name, *options):
    code, out, _ = run_cli(command, corpus_path(name), "--format", "machine", *options)
    return code, out, json.loads(out)["reports"]


def find(reports, check, subject):
    matches = [r for r in reports if r["check"] == check and r["subject"] == subject]
    assert len(matches) == 1, (check, subject, matches)
    return matches[0]


class TestTwistOrders(TestCase):
    def test_moyal_at_order_six(self):
        code, _, reports = machine_run("check-twist", "moyal_t2.twk", "--order", "6")
        self.assertEqual(code, EXIT_PASS)
        for check in ("counitality", "cocycle", "mirrored-cocycle", "twisted-bialgebra"):
            self.assertEqual(find(reports, check, "moyal")["status"], PASS)

    def test_jordanian_at_order_four(self):
        code, _, reports = machine_run("check-twist", "jordanian_axb.twk", "--order", "4")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(find(reports, "cocycle", "jordanian")["status"], PASS)

    def test_sabotaged_orders_agree(self):
        code, _, twists = machine_run("check-twist", "sabotaged.twk")
        self.assertEqual(code, EXIT_FAIL)
        cocycle = find(twists, "cocycle", "naive")
        self.assertEqual((cocycle["status"], cocycle["lowest_failing_order"]), (FAIL, 2))
        self.assertEqual(find(twists, "cocycle", "symmetric")["status"], PASS)

        code, _, stars = machine_run("assoc-check", "sabotaged.twk")
        self.assertEqual(code, EXIT_FAIL)
        associativity = find(stars, "associativity", "naive_star")
        self.assertEqual((associativity["status"], associativity["lowest_failing_order"]),
                         (FAIL, cocycle["lowest_failing_order"]))
        self.assertEqual(find(stars, "associativity", "symmetric_star")["status"], PASS)


class TestAllCommand(TestCase):
    def test_bundles(self):
        code, _, reports = machine_run("all", "bundle_degree_d.twk")
        self.assertEqual(code, EXIT_PASS)
        self.assertTrue(all(r["status"] == PASS for r in reports))

    def test_jordanian_is_reproducible(self):
        code, first, reports = machine_run("all", "jordanian_axb.twk", "--workers", "1")
        self.assertEqual(code, EXIT_PASS)
        _, second, _ = machine_run("all", "jordanian_axb.twk", "--workers", "2")
        self.assertEqual(first, second)
        self.assertEqual(find(reports, "first-order-poisson", "jordanian_star")["status"],
                         "skipped")

    def test_sabotaged(self):
        code, _, reports = machine_run("all", "sabotaged.twk")
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual([r["subject"] for r in reports if r["status"] == "blocked"],
                         ["naive_star"])

    @skipUnless(SLOW, "set TWISTKIT_SLOW to run")
    def test_moyal(self):
        code, first, _ = machine_run("all", "moyal_t2.twk")
        self.assertEqual(code, EXIT_PASS)
        _, second, _ = machine_run("all", "moyal_t2.twk")
        self.assertEqual(first, second)


if __name__ == "__main__":
    main()
