from dataclasses import dataclass

from django import forms

from spectra.conf import get_setting
from spectra.fields import format_elem, parse_elem

SUITE_CHOICES = [
    ("all", "all"),
    ("theorems", "theorems"),
    ("lemmas", "lemmas"),
    ("shells", "shells"),
]
FORMAT_CHOICES = [("json", "json"), ("csv", "csv")]
FAMILY_CHOICES = [("f", "f"), ("g", "g")]

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class RunConfig:
    e: int
    alpha: int | None = None
    suite: str = "all"
    format: str = "json"
    family: str = "f"
    seed: int = 0
    workers: int = 1
    samples: int = 1000

    def echo(self):
        """The config as it appears in report headers."""
        return {
            "e": self.e,
            "alpha": None if self.alpha is None else format_elem(self.alpha),
            "suite": self.suite,
            "format": self.format,
            "family": self.family,
            "seed": self.seed,
            "samples": self.samples,
        }


class RunConfigForm(forms.Form):
    e = forms.IntegerField()
    alpha = forms.CharField(
        max_length=16,
        required=False,
    )
    suite = forms.ChoiceField(
        choices=SUITE_CHOICES,
        required=False,
    )
    format = forms.ChoiceField(
        choices=FORMAT_CHOICES,
        required=False,
    )
    family = forms.ChoiceField(
        choices=FAMILY_CHOICES,
        required=False,
    )
    seed = forms.IntegerField(
        min_value=0,
        max_value=MAX_SEED,
        required=False,
    )
    workers = forms.IntegerField(
        min_value=1,
        required=False,
    )
    samples = forms.IntegerField(
        min_value=1,
        required=False,
    )

    def __init__(self, *args, require_alpha=False, **kwargs):
        super().__init__(*args, **kwargs)

        self.fields["alpha"].required = require_alpha

    def clean_e(self):
        e = self.cleaned_data["e"]
        if e % 2:
            raise forms.ValidationError(
                "e=%(e)s is odd; the extension degree must be even.",
                code="odd_e",
                params={"e": e},
            )

        max_e = get_setting("MAX_E")
        if not 2 <= e <= max_e:
            raise forms.ValidationError(
                "e=%(e)s is outside 2..%(max_e)s.",
                code="e_range",
                params={"e": e, "max_e": max_e},
            )

        return e

    def clean(self):
        cleaned_data = super().clean()
        text = cleaned_data.get("alpha")
        e = cleaned_data.get("e")
        if not text or e is None:
            cleaned_data["alpha"] = None
            return cleaned_data

        try:
            alpha = parse_elem(text)
        except ValueError:
            alpha = None

        if alpha is None or not 0 < alpha < 1 << e:
            self.add_error(
                "alpha",
                forms.ValidationError(
                    "alpha=%(alpha)s is not a nonzero element of GF(2^%(e)s) in hex.",
                    code="bad_alpha",
                    params={"alpha": text, "e": e},
                ),
            )
        else:
            cleaned_data["alpha"] = alpha

        return cleaned_data

    def to_config(self):
        data = self.cleaned_data
        return RunConfig(
            e=data["e"],
            alpha=data.get("alpha"),
            suite=data.get("suite") or "all",
            format=data.get("format") or "json",
            family=data.get("family") or "f",
            seed=get_setting("DEFAULT_SEED") if data.get("seed") is None else data["seed"],
            workers=data.get("workers") or get_setting("WORKERS"),
            samples=data.get("samples") or get_setting("SAMPLE_SIZE"),
        )
