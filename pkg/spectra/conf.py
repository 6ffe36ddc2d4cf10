from django.conf import settings

DEFAULTS = {
    "DEFAULT_SEED": 0,
    "SAMPLE_SIZE": 1000,
    "EXHAUSTIVE_MAX_E": 4,
    "MAX_E": 8,
    "WORKERS": 1,
    "COUNTEREXAMPLE_LIMIT": 1,
}


def get_setting(name):
    """Look up a toolkit setting, falling back to the built-in default."""
    overrides = getattr(settings, "SPECTRA", {})
    if name in overrides:
        return overrides[name]

    return DEFAULTS[name]
