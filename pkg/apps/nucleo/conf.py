# apps/nucleo/conf.py
"""
Lectura del bloque DSC de settings con valores por defecto.

El motor puede usarse como librería sin Django configurado; en ese caso
se devuelven los valores por defecto.
"""

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    "CHECK_LEVEL": "fast",
    "FAST_AUDIT_EVERY": 64,
    "REFRESH_WRITES": 65536,
    "BRUTE_FORCE_CAP": 24,
    "APPROX_CHECK_CAP": 16,
    "TAU_REL": 1e-9,
    "TAU_ABS": 1e-9,
    "BENCH_MAX_RATIO": 3.0,
    "CONTRACTS": False,
}


def dsc_setting(nombre: str):
    """Devuelve settings.DSC[nombre] o el valor por defecto."""
    try:
        bloque = getattr(settings, "DSC", {})
    except ImproperlyConfigured:
        bloque = {}
    return bloque.get(nombre, DEFAULTS[nombre])
