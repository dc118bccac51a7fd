from django.apps import AppConfig


class VerificadorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.verificador'
    verbose_name = 'Verificador'
