# apps/verificador/exceptions.py
"""
Excepciones del verificador.

Jerarquía:
    VerificadorError (base, hereda de DSCError)
    └── TooLargeError → la instancia supera el tope del oráculo exacto
"""

from apps.nucleo.exceptions import DSCError


class VerificadorError(DSCError):
    """Error base del verificador."""
    pass


class TooLargeError(VerificadorError):
    """Demasiados conjuntos ocupados para la enumeración exacta."""

    def __init__(self, ocupados, tope):
        self.ocupados = ocupados
        self.tope = tope
        super().__init__(f"{ocupados} conjuntos ocupados superan el tope de {tope} del oráculo exacto")
