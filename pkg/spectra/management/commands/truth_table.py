from spectra.management.base import ELEMENT_HELP, SpectraCommand
from spectra.reports import cmd_truth_table


class Command(SpectraCommand):
    help = "Dumps the truth table of f_alpha (or g_alpha) as hex; bit i is the value at the element encoded as i"

    requires_alpha = True
    form_fields = ("alpha", "family")

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--alpha",
            help=f"nonzero alpha in GF(2^e); {ELEMENT_HELP}",
        )
        parser.add_argument("--family", choices=["f", "g"], default="f")

    def build_report(self, ctx, config, options):
        return cmd_truth_table(ctx, config)
