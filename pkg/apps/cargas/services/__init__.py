from .benchmark_service import BenchmarkService, BenchRow
from .ejecucion_service import EjecucionService, ResultadoEjecucion
from .generador_service import GeneradorService
from .traza_service import TraceParams, TrazaService, UpdateTrace

__all__ = [
    "BenchmarkService",
    "BenchRow",
    "EjecucionService",
    "ResultadoEjecucion",
    "GeneradorService",
    "TraceParams",
    "TrazaService",
    "UpdateTrace",
]
