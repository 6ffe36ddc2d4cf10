from spectra.management.base import SpectraCommand
from spectra.reports import cmd_sweep


class Command(SpectraCommand):
    help = "Computes the spectrum of f_alpha for every nonzero alpha and compares it with the closed form"

    def build_report(self, ctx, config, options):
        return cmd_sweep(ctx, config)

    def after_output(self, report):
        mismatched = report.summary["records"] - report.summary["matched"]
        if mismatched:
            self.stderr.write(
                f"WARNING: {mismatched} spectra differ from the predicted distribution.",
                style_func=self.style.WARNING,
            )
