# apps/cargas/serializers/__init__.py
from .read import FilaBenchSerializer, ReporteEjecucionSerializer
from .write import OpcionesGeneradorSerializer, ParametrosTrazaSerializer

__all__ = [
    # READ
    "FilaBenchSerializer",
    "ReporteEjecucionSerializer",
    # WRITE
    "OpcionesGeneradorSerializer",
    "ParametrosTrazaSerializer",
]
