from django.apps import AppConfig


class MotorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.motor'
    verbose_name = 'Motor de cobertura'
