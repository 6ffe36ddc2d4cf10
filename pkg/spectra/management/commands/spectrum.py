from spectra.management.base import ELEMENT_HELP, SpectraCommand
from spectra.reports import cmd_spectrum


class Command(SpectraCommand):
    help = "Computes the full Walsh spectrum of f_alpha (or g_alpha) on GF(2^2e)"

    requires_alpha = True
    form_fields = ("alpha", "family")

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--alpha",
            help=f"nonzero alpha in GF(2^e); {ELEMENT_HELP}",
        )
        parser.add_argument(
            "--family",
            choices=["f", "g"],
            default="f",
            help="f: the permutation-inverse form; g: the cyclotomic form",
        )

    def build_report(self, ctx, config, options):
        return cmd_spectrum(ctx, config)
