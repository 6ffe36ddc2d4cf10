from django.core.management.base import CommandError

from spectra.management.base import SpectraCommand
from spectra.reports import cmd_verify


class Command(SpectraCommand):
    help = "Runs the verification checks of a suite; exits 1 if any check fails"

    form_fields = ("suite", "seed", "samples")

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--suite",
            choices=["all", "theorems", "lemmas", "shells"],
            default="all",
        )
        parser.add_argument(
            "--seed",
            type=int,
            help="[integer] seed for the sampled regimes (default: settings)",
        )
        parser.add_argument(
            "--samples",
            type=int,
            help="[integer] sampled instances per check when e is too large to be exhaustive",
        )
        parser.add_argument(
            "--timing",
            action="store_true",
            help="add wall time to the summary (output is then no longer reproducible)",
        )

    def build_report(self, ctx, config, options):
        return cmd_verify(ctx, config, timing=options["timing"])

    def after_output(self, report):
        failed = report.summary["failed"]
        if failed:
            self.stderr.write(
                f"ERROR: {failed} of {report.summary['checks']} checks failed.",
                style_func=self.style.ERROR,
            )
            raise CommandError(f"ERROR: {failed} checks failed.", returncode=1)

        self.stderr.write(
            f"SUCCESS: {report.summary['passed']} checks passed.",
            style_func=self.style.SUCCESS,
        )
