"""
Django settings for vortexnerve project.

Generated by 'django-admin startproject' using Django 6.0.

For more information on this file, see
https://docs.djangoproject.com/en/6.0/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# The project only runs management commands; the key is never used for signing.
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "django-insecure-vortexnerve-cli-only")

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'vortex.apps.VortexConfig',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {},
    },
]

# No database: complexes are read from and written to .cx files.
DATABASES = {}

# Internationalization
# https://docs.djangoproject.com/en/6.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# ------------------------
# Logging
# ------------------------
VORTEX_LOG_LEVEL = os.getenv("VORTEX_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "vortex": {
            "handlers": ["console"],
            "level": VORTEX_LOG_LEVEL,
            "propagate": False,
        },
    },
}

# ------------------------
# Vortex nerve analysis
# ------------------------
# Geometric comparison tolerance; also the default feature-vector epsilon.
VORTEX_TOLERANCE = 1e-9

# Subset enumeration of Edelsbrunner-Harer nerves is exponential.
VORTEX_NERVE_MAX_FAMILY = 20

# Union rasterization (grid cells per side over the family's bounding box).
VORTEX_RASTER_RESOLUTION = 512
VORTEX_RASTER_MAX_RESOLUTION = 4096
VORTEX_RASTER_MIN_FEATURE_PIXELS = 9

# Random instance guards.
VORTEX_GENERATE_MAX_VERTICES = 200
VORTEX_GENERATE_MAX_DISKS = 6

# Every random draw flows from this seed unless --seed is given.
VORTEX_NERVE_SEED = int(os.getenv("VORTEX_NERVE_SEED", "0"))

VORTEX_AXIOM_TRIALS = 1000
VORTEX_AXIOM_UNIVERSE_SIZE = 50
