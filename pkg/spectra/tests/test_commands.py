import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from spectra.reports import parse_csv
from spectra.verifiers import FAIL, CheckResult


def run(name, **options):
    out, err = StringIO(), StringIO()
    call_command(name, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def run_json(name, **options):
    out, _ = run(name, **options)
    return json.loads(out)


class SpectrumCommandTests(SimpleTestCase):
    def test_noncube_histogram(self):
        """Does spectrum --e 2 --alpha 2 report the bent histogram?"""
        document = run_json("spectrum", e=2, alpha="2")
        record = document["records"][0]
        self.assertEqual(record["histogram"], {"-4": 6, "4": 10})
        self.assertEqual(record["inner"], {"4": 4})
        self.assertEqual(record["outer"], {"-4": 6, "4": 6})
        self.assertTrue(record["bent"])
        self.assertFalse(record["cube"])
        self.assertEqual(document["summary"], {"records": 1, "bent": True})

    def test_header(self):
        """Does the header echo the tool, the field context and the config?"""
        header = run_json("spectrum", e=2, alpha="1", family="g")["header"]
        self.assertEqual(header["tool"], "inverse-bent-spectra")
        self.assertEqual(header["command"], "spectrum")
        self.assertEqual(header["context"]["modulus"], "7")
        self.assertEqual(header["config"]["alpha"], "1")
        self.assertEqual(header["config"]["family"], "g")

    def test_output_is_reproducible(self):
        """Do two identical runs print the same bytes?"""
        first, _ = run("spectrum", e=4, alpha="3")
        second, _ = run("spectrum", e=4, alpha="3")
        self.assertEqual(first, second)
        self.assertTrue(first.endswith("}\n"))

    def test_odd_e_exits_2(self):
        """Is an odd e refused with exit status 2 before any computation?"""
        with self.assertRaises(CommandError) as caught:
            run("spectrum", e=3, alpha="1")
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn("odd_e", str(caught.exception))

    def test_bad_alpha_exits_2(self):
        """Is an alpha outside GF(q) refused as bad_alpha with exit status 2?"""
        with self.assertRaises(CommandError) as caught:
            run("spectrum", e=2, alpha="4")
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn("bad_alpha", str(caught.exception))

    def test_missing_arguments_exit_2(self):
        """Does a run without --e and --alpha exit with status 2?"""
        with self.assertRaises(CommandError) as caught:
            run("spectrum")
        self.assertEqual(caught.exception.returncode, 2)


class SweepCommandTests(SimpleTestCase):
    def test_sweep_e2(self):
        """Does the e = 2 sweep find one cube and two noncube alphas, all as predicted?"""
        document = run_json("sweep", e=2)
        self.assertEqual(
            document["summary"],
            {"records": 3, "cube": 1, "noncube": 2, "bent": 2, "matched": 3},
        )
        self.assertEqual([r["alpha"] for r in document["records"]], ["1", "2", "3"])

    def test_csv_matches_json(self):
        """Do the CSV rows parse back to the JSON records?"""
        records = run_json("sweep", e=2)["records"]
        text, _ = run("sweep", e=2, format="csv")
        self.assertTrue(text.startswith("e,alpha,family,cube,bent,histogram"))
        self.assertEqual(parse_csv(text), records)

    def test_output_file(self):
        """Does --output write the report to the file and leave stdout empty?"""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "sweep.json"
            out, err = run("sweep", e=2, output=str(path), workers=2)
            self.assertEqual(out, "")
            self.assertIn("SUCCESS", err)
            document = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(document["summary"]["records"], 3)

    def test_unwritable_output_exits_2(self):
        """Is a report path inside a missing directory refused with exit status 2?"""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "missing" / "sweep.json"
            err = StringIO()
            with self.assertRaises(CommandError) as caught:
                call_command("sweep", e=2, output=str(path), stdout=StringIO(), stderr=err)
            self.assertFalse(path.exists())
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn("cannot write", str(caught.exception))
        self.assertIn("ERROR", err.getvalue())


class TableCommandTests(SimpleTestCase):
    def test_table_e4(self):
        """Does the e = 4 table match the closed forms in both branches?"""
        document = run_json("table", e=4)
        noncube, cube = document["records"]
        self.assertEqual(noncube["branch"], "noncube")
        self.assertEqual(noncube["alphas"], 10)
        self.assertEqual(noncube["computed"], {"-16": 120, "16": 136})
        self.assertEqual(cube["branch"], "cube")
        self.assertEqual(cube["alphas"], 5)
        self.assertEqual(cube["predicted"], {"-32": 28, "0": 192, "32": 36})
        self.assertEqual(cube["computed_outer"], [-32, 0, 32])
        self.assertTrue(noncube["match"] and cube["match"])

    def test_table_csv(self):
        """Does the CSV table list the noncube row before the cube row?"""
        text, _ = run("table", e=2, format="csv")
        rows = parse_csv(text)
        self.assertEqual([row["branch"] for row in rows], ["noncube", "cube"])
        self.assertEqual(rows[1]["computed_outer"], [0])


class VerifyCommandTests(SimpleTestCase):
    def test_verify_e2(self):
        """Does verify --e 2 pass every check?"""
        out, err = run("verify", e=2)
        summary = json.loads(out)["summary"]
        self.assertEqual(summary["checks"], 29)
        self.assertEqual(summary["failed"], 0)
        self.assertEqual(summary["skipped"], 0)
        self.assertEqual(summary["normalization"], "1/4")
        self.assertNotIn("wall_time_seconds", summary)
        self.assertIn("SUCCESS", err)

    def test_suite_and_timing(self):
        """Does --suite shells run five checks and --timing add the wall time?"""
        document = run_json("verify", e=4, suite="shells", timing=True)
        summary = document["summary"]
        self.assertEqual(summary["checks"], 5)
        self.assertEqual(summary["skipped"], 1)
        self.assertIn("wall_time_seconds", summary)
        self.assertEqual(document["header"]["config"]["suite"], "shells")

    def test_failure_exits_1(self):
        """Does a failed check give exit status 1 after the report is written?"""
        failing = [CheckResult("t-set", FAIL, checked=3, failures=1, counterexample={"t": "1"})]
        out = StringIO()
        with mock.patch("spectra.reports.run_suite", return_value=failing):
            with self.assertRaises(CommandError) as caught:
                call_command("verify", e=2, stdout=out, stderr=StringIO())
        self.assertEqual(caught.exception.returncode, 1)
        records = json.loads(out.getvalue())["records"]
        self.assertEqual(records[0]["counterexample"], {"t": "1"})


class DumpCommandTests(SimpleTestCase):
    def test_inverse_e2(self):
        """Does the inverse dump list all 16 elements with sigma(0) = 0?"""
        records = run_json("inverse", e=2)["records"]
        self.assertEqual(len(records), 16)
        self.assertEqual(records[0], {"x": "0+0*t", "sigma": "0+0*t", "sigma_inverse": "0+0*t"})
        self.assertEqual(
            sorted(r["sigma"] for r in records), sorted(r["x"] for r in records)
        )

    def test_truth_table(self):
        """Is the e = 2 truth table a 16-bit hex dump, identical for f and g?"""
        record = run_json("truth_table", e=2, alpha="1")["records"][0]
        self.assertEqual(record["bits"], 16)
        self.assertEqual(len(record["table"]), 4)
        self.assertEqual(bin(int(record["table"], 16)).count("1"), record["weight"])
        g_record = run_json("truth_table", e=2, alpha="1", family="g")["records"][0]
        self.assertEqual(g_record["table"], record["table"])
