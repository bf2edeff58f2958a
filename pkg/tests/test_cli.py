import io
import json
import os
import tempfile
from contextlib import redirect_stderr
from unittest import TestCase, main

from twistkit import __version__
from twistkit.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, build_parser, load_config

from tests.helpers import corpus_path, run_cli as run

SMALL = ["--order", "2", "--cutoff", "1", "--samples", "2", "--grid", "16"]


class TestExitCodes(TestCase):
    def test_passing_run(self):
        code, out, _ = run("validate", corpus_path("moyal_t2.twk"))
        self.assertEqual(code, EXIT_PASS)
        self.assertTrue(out.endswith("2 checks, 0 failed\n"))

    def test_failing_run(self):
        code, out, _ = run("check-twist", corpus_path("sabotaged.twk"), *SMALL)
        self.assertEqual(code, EXIT_FAIL)
        self.assertIn("lowest failing order 2", out)

    def test_chern_without_a_file(self):
        code, out, _ = run("chern", "--degree", "1")
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("O(1)", out)

    def test_spec_errors(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "broken.twk")
            with open(path, "w", encoding="utf-8") as f:
                f.write("liealgebra g { X Y }\ntwist F = exp(X ⊗ Y\n")
            code, out, err = run("check-twist", path)
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("E_SYNTAX", err)
        self.assertTrue(err.startswith(f"{path}:"))

    def test_missing_file_and_declarations(self):
        code, _, err = run("validate", "/nonexistent/spec.twk")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("twistkit: error:", err)
        code, _, _ = run("check-twist", corpus_path("bundle_degree_d.twk"))
        self.assertEqual(code, EXIT_USAGE)

    def test_unknown_command(self):
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                build_parser().parse_args(["frobnicate", "spec.twk"])
        self.assertEqual(context.exception.code, 2)


class TestMachineOutput(TestCase):
    def test_byte_identical_reports(self):
        with tempfile.TemporaryDirectory() as directory:
            outputs = []
            for attempt in range(2):
                path = os.path.join(directory, f"report{attempt}.json")
                code, out, _ = run("all", corpus_path("jordanian_axb.twk"), "--format", "machine",
                                   "--report", path, *SMALL)
                self.assertEqual(code, EXIT_PASS)
                with open(path, encoding="utf-8") as f:
                    self.assertEqual(f.read(), out)
                outputs.append(out)
        self.assertEqual(outputs[0], outputs[1])
        document = json.loads(outputs[0])
        self.assertEqual((document["tool"], document["version"], document["command"]),
                         ("twistkit", __version__, "all"))
        self.assertTrue(all(r["status"] in ("pass", "skipped") for r in document["reports"]))

    def test_sabotaged_exit_code_in_machine_format(self):
        code, out, _ = run("all", corpus_path("sabotaged.twk"), "--format", "machine", *SMALL)
        self.assertEqual(code, EXIT_FAIL)
        statuses = {r["status"] for r in json.loads(out)["reports"]}
        self.assertIn("fail", statuses)
        self.assertIn("blocked", statuses)


class TestConfig(TestCase):
    def test_overrides_merge(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"order": 3, "cutoffs": {"torus": 1}}, f)
            config = load_config(path)
        self.assertEqual(config["order"], 3)
        self.assertEqual(config["cutoffs"], {"torus": 1, "affine": 3})
        self.assertEqual(load_config(None)["order"], 6)
        self.assertEqual(load_config(None)["workers"], os.cpu_count() or 1)

    def test_config_file_drives_a_run(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump({"order": 2, "format": "machine"}, f)
            code, out, _ = run("star-eval", corpus_path("moyal_t2.twk"), "--config", path)
        self.assertEqual(code, EXIT_PASS)
        details = json.loads(out)["reports"][0]["details"]
        self.assertEqual([d["order"] for d in details if "order" in d], [0, 1, 2])


if __name__ == "__main__":
    main()
