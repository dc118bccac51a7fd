# config/settings/base.py
"""
Configuraciones BASE de Django

Este archivo contiene las configuraciones comunes para todos los entornos
(desarrollo y testing). El proyecto no sirve HTTP: Django aporta settings,
registro de apps, logging y los comandos de gestión dsc_*.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Cargar variables de entorno
load_dotenv(BASE_DIR / '.env')

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-default-key-for-dev')

DEBUG = os.getenv('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = os.getenv('ALLOWED_HOSTS', '*').split(',')


# Application definition
# ======================

DJANGO_APPS = [
    'django.contrib.contenttypes',
]

THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    # Motor
    "apps.nucleo.apps.NucleoConfig",
    "apps.niveles.apps.NivelesConfig",
    "apps.motor.apps.MotorConfig",
    # Verificación y cargas
    "apps.verificador.apps.VerificadorConfig",
    "apps.cargas.apps.CargasConfig",
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

MIDDLEWARE = []

ROOT_URLCONF = 'config.urls'


# Database
# ========
# Ninguna app define modelos; el estado del motor vive en memoria.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Internationalization
# ====================

LANGUAGE_CODE = 'es-es'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# REST Framework
# ==============
# Solo se usan serializers para validar parámetros y dar forma a informes.

REST_FRAMEWORK = {
    'COERCE_DECIMAL_TO_STRING': True,
    'UNAUTHENTICATED_USER': None,
}


# Conjunto dinámico (DSC)
# =======================

DSC = {
    # Nivel de verificación por defecto de dsc_run: none | fast | full
    'CHECK_LEVEL': os.getenv('DSC_CHECK_LEVEL', 'fast'),
    # En nivel fast, auditoría cada N actualizaciones
    'FAST_AUDIT_EVERY': int(os.getenv('DSC_FAST_AUDIT_EVERY', '64')),
    # Escrituras de ω antes de recalcular agregados con fsum
    'REFRESH_WRITES': int(os.getenv('DSC_REFRESH_WRITES', '65536')),
    # Máximo de conjuntos ocupados para el óptimo por fuerza bruta
    'BRUTE_FORCE_CAP': int(os.getenv('DSC_BRUTE_FORCE_CAP', '24')),
    # En nivel full, comprobar aproximación por paso hasta este tamaño
    'APPROX_CHECK_CAP': int(os.getenv('DSC_APPROX_CHECK_CAP', '16')),
    'TAU_REL': float(os.getenv('DSC_TAU_REL', '1e-9')),
    'TAU_ABS': float(os.getenv('DSC_TAU_ABS', '1e-9')),
    # Cota de t(2f)/t(f) en dsc_bench
    'BENCH_MAX_RATIO': float(os.getenv('DSC_BENCH_MAX_RATIO', '3.0')),
    # Aserciones internas del motor (costosas)
    'CONTRACTS': os.getenv('DSC_CONTRACTS', 'False') == 'True',
}
