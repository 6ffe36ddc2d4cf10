import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from spectra.exceptions import SpectraError
from spectra.fields import field_context
from spectra.forms import RunConfigForm

VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO}

ELEMENT_HELP = "lowercase hex of the element's bit vector, constant term in bit 0"


class SpectraCommand(BaseCommand):
    """Shared options, validation and output handling for the report commands."""

    requires_alpha = False
    form_fields = ()

    def add_arguments(self, parser):
        parser.add_argument(
            "--e",
            type=int,
            help="[integer] even extension degree e; the functions live on GF(2^2e)",
        )
        parser.add_argument(
            "--format",
            choices=["json", "csv"],
            default="json",
            help="report encoding (default: json)",
        )
        parser.add_argument(
            "--output",
            help="write the report to this file instead of stdout",
        )
        parser.add_argument(
            "--workers",
            type=int,
            help="[integer] worker threads for per-alpha work",
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_report(self, ctx, config, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        logging.getLogger("spectra").setLevel(
            VERBOSITY_LEVELS.get(options["verbosity"], logging.DEBUG)
        )

        data = {"e": options["e"], "format": options["format"], "workers": options["workers"]}
        for name in self.form_fields:
            data[name] = options.get(name)

        form = RunConfigForm(data=data, require_alpha=self.requires_alpha)
        if not form.is_valid():
            codes = []
            for name, errors in form.errors.as_data().items():
                for error in errors:
                    codes.append(error.code)
                    self.stderr.write(
                        f"ERROR: --{name}: {' '.join(error.messages)}",
                        style_func=self.style.ERROR,
                    )
            raise CommandError(
                f"ERROR: invalid arguments ({', '.join(map(str, codes))}).",
                returncode=2,
            )

        config = form.to_config()
        try:
            ctx = field_context(config.e)
            report = self.build_report(ctx, config, options)
        except SpectraError as err:
            self.stderr.write(f"ERROR: {err}", style_func=self.style.ERROR)
            raise CommandError(f"ERROR: {err}", returncode=2)

        text = report.render(config.format)
        if options["output"]:
            try:
                Path(options["output"]).write_text(text, encoding="utf-8")
            except OSError as err:
                message = f"ERROR: cannot write {options['output']}: {err.strerror or err}"
                self.stderr.write(message, style_func=self.style.ERROR)
                raise CommandError(message, returncode=2)
            self.stderr.write(
                f"SUCCESS: wrote {len(report.records)} records to {options['output']}",
                style_func=self.style.SUCCESS,
            )
        else:
            self.stdout.write(text, ending="")

        self.after_output(report)

    def after_output(self, report):
        pass
