#!/usr/bin/env python
"""
Utilidad de línea de comandos del proyecto.

El entorno se elige con DJANGO_ENV (local o test); los comandos propios
son dsc_run, dsc_check, dsc_gen y dsc_bench.
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "No se pudo importar Django. ¿Está instalado y activo el entorno "
            "virtual? (pip install -r requirements.txt)"
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
