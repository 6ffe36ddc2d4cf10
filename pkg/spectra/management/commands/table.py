from spectra.management.base import SpectraCommand
from spectra.reports import cmd_table


class Command(SpectraCommand):
    help = "Prints the predicted Walsh multiplicities beside the computed ones, per cube class"

    def build_report(self, ctx, config, options):
        return cmd_table(ctx, config)
