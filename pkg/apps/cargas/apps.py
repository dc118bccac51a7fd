from django.apps import AppConfig


class CargasConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.cargas'
    verbose_name = 'Cargas y CLI'
