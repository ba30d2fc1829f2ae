from django.apps import AppConfig


class VortexConfig(AppConfig):
    name = 'vortex'
    verbose_name = "Vortex nerves"
