"""
Excepciones de trazas, generadores y benchmark.

Jerarquía:
    TrazaError (base, hereda de DSCError)
    ├── TraceSyntaxError      → línea mal formada (con número de línea)
    └── TraceValidationError  → traza bien formada pero inválida (kind + línea)
    BenchError (hereda de DSCError) → el barrido no cumple el criterio de escala
"""

from apps.nucleo.exceptions import DSCError


class TrazaError(DSCError):
    """Error base de las trazas."""
    pass


class TraceSyntaxError(TrazaError):
    def __init__(self, line: int, mensaje: str):
        self.line = line
        super().__init__(f"línea {line}: {mensaje}")


class TraceValidationError(TrazaError):
    """
    kind reutiliza los nombres de los errores de actualización del motor
    (UnknownSet, FrequencyExceeded, CapacityExceeded, ...) más los propios
    de la cabecera (BadParams, BadCost, DuplicateSet).
    """

    def __init__(self, kind: str, line: int, mensaje: str):
        self.kind = kind
        self.line = line
        super().__init__(f"línea {line}: {kind}: {mensaje}")


class BenchError(DSCError):
    """El barrido de benchmark viola el criterio de escala."""

    def __init__(self, modo: str, f: int, f_next: int, razon: float, maximo: float):
        self.modo = modo
        self.f = f
        self.f_next = f_next
        self.razon = razon
        self.maximo = maximo
        super().__init__(f"modo {modo}: t({f_next})/t({f}) = {razon:.3f} > {maximo}")
