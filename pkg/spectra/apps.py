from django.apps import AppConfig


class SpectraConfig(AppConfig):
    name = "spectra"
    verbose_name = "Walsh spectra of the permutation-inverse family"
