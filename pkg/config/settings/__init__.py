# config/settings/__init__.py
"""
Configuraciones de Django divididas por entorno

Este archivo carga la configuración adecuada según la variable
de entorno DJANGO_ENV.

Uso:
    # En desarrollo (por defecto)
    export DJANGO_ENV=local
    python manage.py dsc_check --trace apps/cargas/fixtures/smoke_1000.trace

    # En testing
    export DJANGO_ENV=test
    python manage.py test

    # O directamente con DJANGO_SETTINGS_MODULE
    export DJANGO_SETTINGS_MODULE=config.settings.test
"""

import os

# Detectar el entorno
DJANGO_ENV = os.getenv('DJANGO_ENV', 'local')

# Cargar la configuración apropiada
if DJANGO_ENV == 'test':
    from .test import *
else:
    from .local import *
