"""
Excepciones base del motor de cobertura dinámica.

Jerarquía:
    DSCError (base de todo el proyecto)
    ├── ConfiguracionInvalidaError → parámetros de Config fuera de rango
    ├── CostoFueraDeRangoError     → costo de conjunto fuera de [1/C, 1]
    └── InternalInvariantError     → fallo interno (error de programación)
"""


class DSCError(Exception):
    """Error base del proyecto."""
    pass


class ConfiguracionInvalidaError(DSCError):
    """Los parámetros de configuración no son válidos."""
    pass


class CostoFueraDeRangoError(DSCError):
    """El costo de un conjunto no está en [1/C, 1] o no es decimal."""

    def __init__(self, set_id, costo):
        self.set_id = set_id
        self.costo = costo
        super().__init__(f"Costo fuera de rango para el conjunto {set_id}: {costo}")


class InternalInvariantError(DSCError):
    """
    Se violó una precondición o post-condición interna del algoritmo.

    No es un error de entrada del usuario: indica un defecto.
    """
    pass
