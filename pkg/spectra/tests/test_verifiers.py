import dataclasses
from unittest import mock

from django.test import SimpleTestCase, override_settings

from spectra.exceptions import NotInMu
from spectra.fields import field_context
from spectra.reductions import CUBE, NONCUBE, shell_word
from spectra.verifiers import (
    CHECKS,
    FAIL,
    PASS,
    SKIP,
    Tally,
    Verifier,
    run_check,
    run_suite,
    stable_key,
    suite_ids,
)

SAMPLED = {
    "DEFAULT_SEED": 0,
    "SAMPLE_SIZE": 30,
    "EXHAUSTIVE_MAX_E": 2,
    "MAX_E": 8,
    "WORKERS": 1,
    "COUNTEREXAMPLE_LIMIT": 3,
}


class RegistryTests(SimpleTestCase):
    def test_suite_sizes(self):
        """Are there 9 theorem, 15 lemma and 5 shell checks?"""
        self.assertEqual(len(suite_ids("theorems")), 9)
        self.assertEqual(len(suite_ids("lemmas")), 15)
        self.assertEqual(len(suite_ids("shells")), 5)
        self.assertEqual(suite_ids(), sorted(CHECKS))
        self.assertEqual(len(suite_ids("all")), 29)

    def test_ids_are_sorted(self):
        """Are suite ids listed alphabetically, with each check in its own suite?"""
        ids = suite_ids("lemmas")
        self.assertEqual(ids, sorted(ids))
        self.assertIn("basic-reduction", ids)
        self.assertIn("triple-agreement", suite_ids("shells"))

    def test_unknown_suite(self):
        """Is an unknown suite name refused?"""
        with self.assertRaises(ValueError):
            suite_ids("corollaries")

    def test_stable_key(self):
        """Is the per-check seed component independent of the process?"""
        self.assertEqual(stable_key("bentness"), stable_key("bentness"))
        self.assertNotEqual(stable_key("bentness"), stable_key("distribution"))
        self.assertLess(stable_key("t-set"), 2**64)


class TallyTests(SimpleTestCase):
    def test_pass(self):
        """Does a tally of satisfied expectations pass and count each instance?"""
        tally = Tally("demo")
        tally.expect(True, x="00")
        tally.expect_all([True, True], lambda i: {"i": i})
        result = tally.result()
        self.assertEqual(result.status, PASS)
        self.assertEqual(result.checked, 3)
        self.assertIsNone(result.counterexample)

    def test_first_counterexample_is_reported(self):
        """Does a failing instance mark the check failed and keep the earliest details?"""
        tally = Tally("demo", limit=2)
        tally.expect_all([True, False, False, False], lambda i: {"i": i})
        tally.expect(False, i=9)
        result = tally.result()
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.failures, 4)
        self.assertEqual(result.checked, 5)
        self.assertEqual(result.counterexample, {"i": 1})
        self.assertEqual(tally.counterexamples, [{"i": 1}, {"i": 2}])
        self.assertFalse(result.passed)

    def test_skip(self):
        """Is a check with nothing to look at reported as skipped?"""
        tally = Tally("demo")
        tally.skip("not applicable")
        result = tally.result()
        self.assertEqual(result.status, SKIP)
        self.assertTrue(result.passed)

    def test_error_counts_as_failure(self):
        """Does an exception raised inside a check fail it, naming the exception?"""
        tally = Tally("demo")
        tally.error(NotInMu("02 is not a (q+1)-th root of unity"))
        result = tally.result()
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.counterexample["error"], "NotInMu")

    def test_record(self):
        """Does a result flatten to the five report fields?"""
        record = Tally("demo").result().to_record()
        self.assertEqual(
            record,
            {
                "lemma_id": "demo",
                "status": PASS,
                "checked": 0,
                "failures": 0,
                "counterexample": None,
            },
        )


class SuiteTests(SimpleTestCase):
    def test_everything_passes_at_e2(self):
        """Does every check pass on GF(16)?"""
        results = run_suite(field_context(2))
        self.assertEqual([result.lemma_id for result in results], suite_ids())
        for result in results:
            self.assertEqual(result.status, PASS, result.to_record())
            self.assertGreater(result.checked, 0, result.lemma_id)

    def test_theorems_and_shells_at_e4(self):
        """Do the theorem and shell checks hold on GF(256), with the degenerate case skipped?"""
        ctx = field_context(4)
        for suite in ("theorems", "shells"):
            for result in run_suite(ctx, suite=suite, workers=2):
                if result.lemma_id == "shell-degenerate":
                    self.assertEqual(result.status, SKIP)
                    self.assertEqual(result.checked, 0)
                else:
                    self.assertEqual(result.status, PASS, result.to_record())

    def test_reduction_lemmas_at_e4(self):
        """Do the trace-zero and sign-flip reductions hold on GF(256)?"""
        ctx = field_context(4)
        for lemma_id in ("trace-zero-reduction", "l-map", "sign-flip", "inner-prediction"):
            self.assertEqual(run_check(ctx, lemma_id).status, PASS, lemma_id)

    def test_worker_count_does_not_change_results(self):
        """Do serial and threaded runs give identical records?"""
        ctx = field_context(2)
        serial = [r.to_record() for r in run_suite(ctx, suite="lemmas", workers=1)]
        threaded = [r.to_record() for r in run_suite(ctx, suite="lemmas", workers=4)]
        self.assertEqual(serial, threaded)


@override_settings(SPECTRA=SAMPLED)
class SampledRegimeTests(SimpleTestCase):
    def test_sampling_above_the_exhaustive_limit(self):
        """Does e = 4 switch to sampling once the exhaustive limit is lowered?"""
        verifier = Verifier(field_context(4))
        self.assertFalse(verifier.exhaustive)
        self.assertEqual(verifier.samples, 30)
        pairs = verifier.pairs(verifier.rng("basic-reduction"), verifier.outer_betas())
        self.assertEqual(len(pairs), 15 * 2)
        self.assertEqual({alpha for alpha, _ in pairs}, set(range(1, 16)))

    def test_same_seed_same_sample(self):
        """Does a fixed seed reproduce the same records?"""
        ctx = field_context(4)
        first = run_check(ctx, "triple-agreement", seed=7).to_record()
        second = run_check(ctx, "triple-agreement", seed=7).to_record()
        self.assertEqual(first, second)
        self.assertEqual(first["status"], PASS)
        self.assertEqual(first["checked"], 30)

    def test_draws_depend_on_seed(self):
        """Do different seeds draw different samples?"""
        ctx = field_context(4)
        population = Verifier(ctx).outer_betas()
        draws = set()
        for seed in range(4):
            verifier = Verifier(ctx, seed=seed)
            draws.add(tuple(verifier.sample(verifier.rng("x"), population, 5).tolist()))
        self.assertGreater(len(draws), 1)


class ShellBranchTests(SimpleTestCase):
    def test_branch_is_read_from_the_word(self):
        """Does the shell-branch check judge each word by the branch it carries?"""
        ctx = field_context(4)
        self.assertEqual(run_check(ctx, "shell-branch").status, PASS)

        def swapped(ctx, delta):
            word = shell_word(ctx, delta)
            return dataclasses.replace(word, branch=NONCUBE if word.branch == CUBE else CUBE)

        with mock.patch("spectra.verifiers.shell_word", side_effect=swapped):
            result = run_check(ctx, "shell-branch")
        self.assertEqual(result.status, FAIL)
        self.assertIn(result.counterexample["branch"], (CUBE, NONCUBE))


class LargerFieldTests(SimpleTestCase):
    def test_theorems_and_shells_at_e6(self):
        """Do the theorem and shell checks hold on GF(4096) in the sampled regime?"""
        ctx = field_context(6)
        self.assertFalse(Verifier(ctx).exhaustive)
        for suite in ("theorems", "shells"):
            results = run_suite(ctx, suite=suite, workers=2)
            self.assertEqual([result.lemma_id for result in results], suite_ids(suite))
            for result in results:
                if result.lemma_id == "shell-degenerate":
                    self.assertEqual(result.status, SKIP)
                else:
                    self.assertEqual(result.status, PASS, result.to_record())
                    self.assertGreater(result.checked, 0, result.lemma_id)
