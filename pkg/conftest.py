import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "vortexnerve.settings")
django.setup()
