"""
Django settings for invbentproject project.

The project has no database, templates or URL routes: Django provides the
settings layer, the management-command CLI, form validation, logging
configuration and the test runner for the ``spectra`` app.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = "spectra-offline-toolkit-not-a-secret"

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "spectra.apps.SpectraConfig",
]

MIDDLEWARE = []

# Database
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Spectra toolkit
# Defaults are mirrored in spectra/conf.py; entries here override them.

SPECTRA = {
    "DEFAULT_SEED": 0,
    "SAMPLE_SIZE": 1000,
    "EXHAUSTIVE_MAX_E": 4,
    "MAX_E": 8,
    "WORKERS": 1,
    "COUNTEREXAMPLE_LIMIT": 1,
}


# Logging
# https://docs.djangoproject.com/en/5.1/topics/logging/

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "spectra": {
            "handlers": ["stderr"],
            "level": "WARNING",
            "propagate": False,
        },
    },
}
