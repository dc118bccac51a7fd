# apps/motor/exceptions.py
"""
Excepciones del motor de cobertura dinámica.

Jerarquía:
    ActualizacionInvalidaError (base, hereda de DSCError)
    ├── UnknownElementError      → borrado de un elemento que no está vivo
    ├── DuplicateElementError    → inserción de un id ya vivo
    ├── FrequencyExceededError   → más de f conjuntos en la inserción
    ├── CapacityExceededError    → el universo vivo ya tiene N elementos
    ├── UnknownSetError          → conjunto no declarado
    └── InvalidMembershipError   → lista de miembros vacía o con repetidos

Todas se lanzan ANTES de tocar el estado.
"""

from apps.nucleo.exceptions import DSCError


class ActualizacionInvalidaError(DSCError):
    """La actualización no cumple sus precondiciones."""

    kind = "InvalidUpdate"


class UnknownElementError(ActualizacionInvalidaError):
    kind = "UnknownElement"

    def __init__(self, elem_id):
        self.elem_id = elem_id
        super().__init__(f"El elemento {elem_id} no está vivo")


class DuplicateElementError(ActualizacionInvalidaError):
    kind = "DuplicateElement"

    def __init__(self, elem_id):
        self.elem_id = elem_id
        super().__init__(f"El elemento {elem_id} ya está vivo")


class FrequencyExceededError(ActualizacionInvalidaError):
    kind = "FrequencyExceeded"

    def __init__(self, elem_id, frecuencia, maximo):
        self.elem_id = elem_id
        super().__init__(f"El elemento {elem_id} pertenece a {frecuencia} conjuntos (máximo f={maximo})")


class CapacityExceededError(ActualizacionInvalidaError):
    kind = "CapacityExceeded"

    def __init__(self, capacidad):
        super().__init__(f"El universo vivo ya alcanzó la capacidad N={capacidad}")


class UnknownSetError(ActualizacionInvalidaError):
    kind = "UnknownSet"

    def __init__(self, set_id):
        self.set_id = set_id
        super().__init__(f"El conjunto {set_id} no está declarado")


class InvalidMembershipError(ActualizacionInvalidaError):
    kind = "InvalidMembership"

    def __init__(self, elem_id, motivo):
        self.elem_id = elem_id
        super().__init__(f"Miembros inválidos para el elemento {elem_id}: {motivo}")
