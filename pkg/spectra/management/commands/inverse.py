from spectra.management.base import SpectraCommand
from spectra.reports import cmd_inverse


class Command(SpectraCommand):
    help = "Dumps x, sigma(x) and sigma^-1(x) for every x in GF(2^2e), as a0+a1*t"

    def build_report(self, ctx, config, options):
        return cmd_inverse(ctx, config)
