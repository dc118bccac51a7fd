from django.apps import AppConfig


class NivelesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.niveles'
    verbose_name = 'Índice de niveles'
