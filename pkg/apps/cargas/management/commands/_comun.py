"""Utilidades compartidas por los comandos dsc_*."""

import logging
from pathlib import Path

from django.core.management.base import CommandError
from rest_framework.renderers import JSONRenderer

from apps.cargas.exceptions import TrazaError
from apps.cargas.serializers import ReporteEjecucionSerializer
from apps.cargas.services import EjecucionService, TrazaService
from apps.motor.exceptions import ActualizacionInvalidaError
from apps.nucleo.exceptions import ConfiguracionInvalidaError

logger = logging.getLogger("cargas")

EXIT_FALLO = 1
EXIT_USO = 2
EXIT_IO = 3
U64_MAX = 2**64 - 1

MODOS = ("det", "rand")


def semilla(valor: int) -> int:
    if not (0 <= valor <= U64_MAX):
        raise CommandError(f"--seed debe ser un entero de 64 bits sin signo: {valor}", returncode=EXIT_USO)
    return valor


def cargar_traza(ruta: str):
    try:
        return TrazaService.load_trace(ruta)
    except OSError as e:
        raise CommandError(f"No se pudo leer la traza {ruta}: {e}", returncode=EXIT_IO)
    except (TrazaError, ConfiguracionInvalidaError) as e:
        raise CommandError(f"Traza inválida {ruta}: {e}", returncode=EXIT_USO)


def ejecutar(traza, **kwargs):
    """EjecucionService.run_trace con la traducción de errores de configuración a CommandError."""
    try:
        return EjecucionService.run_trace(traza, **kwargs)
    except (ConfiguracionInvalidaError, ActualizacionInvalidaError) as e:
        raise CommandError(str(e), returncode=EXIT_USO)


def escribir(texto: str, destino, stdout):
    if not destino:
        stdout.write(texto)
        return
    try:
        Path(destino).write_text(texto, encoding="utf-8")
    except OSError as e:
        raise CommandError(f"No se pudo escribir {destino}: {e}", returncode=EXIT_IO)


def _ordenado(valor):
    if isinstance(valor, dict):
        return {k: _ordenado(valor[k]) for k in sorted(valor)}
    if isinstance(valor, list):
        return [_ordenado(v) for v in valor]
    return valor


def reporte_json(reporte: dict) -> str:
    """Informe validado por ReporteEjecucionSerializer, con claves ordenadas y sangría 2."""
    datos = _ordenado(ReporteEjecucionSerializer(reporte).data)
    return JSONRenderer().render(datos, renderer_context={"indent": 2}).decode("utf-8")
