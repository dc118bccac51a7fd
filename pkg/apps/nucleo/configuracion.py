# apps/nucleo/configuracion.py
"""
Configuración inmutable de una instancia del motor.
"""

import logging
from dataclasses import dataclass, asdict
from decimal import Decimal, InvalidOperation
from typing import Optional, Union

from apps.nucleo.exceptions import ConfiguracionInvalidaError, CostoFueraDeRangoError

logger = logging.getLogger("nucleo")

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Config:
    """
    Parámetros del motor.

    epsilon:        perilla de aproximación ε, en (0, 1] (analizado en (0, 0.1]).
    cost_ratio:     C ≥ 1; los costos viven en [1/C, 1].
    max_frequency:  f ≥ 1, máximo de conjuntos por elemento.
    capacity:       N ≥ 1, cota del universo vivo; fija L.
    deterministic:  True → HandleDet, False → HandleRand.
    rng_seed:       semilla de 64 bits.
    check_contracts: activa las aserciones de post-contrato en tiempo de ejecución.
    sampling_gap_floor: reemplaza el umbral de HandleRand (None = el publicado).
    """

    epsilon: float
    cost_ratio: int
    max_frequency: int
    capacity: int
    deterministic: bool = True
    rng_seed: int = 0
    check_contracts: bool = False
    sampling_gap_floor: Optional[float] = None

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0):
            raise ConfiguracionInvalidaError(f"epsilon debe estar en (0, 1], se recibió {self.epsilon}")
        if self.cost_ratio < 1:
            raise ConfiguracionInvalidaError(f"C debe ser ≥ 1, se recibió {self.cost_ratio}")
        if self.max_frequency < 1:
            raise ConfiguracionInvalidaError(f"f debe ser ≥ 1, se recibió {self.max_frequency}")
        if self.capacity < 1:
            raise ConfiguracionInvalidaError(f"capacity debe ser ≥ 1, se recibió {self.capacity}")
        if not (0 <= self.rng_seed <= U64_MAX):
            raise ConfiguracionInvalidaError(f"rng_seed debe ser un entero de 64 bits sin signo: {self.rng_seed}")
        if self.epsilon > 0.1:
            logger.warning(f"epsilon={self.epsilon} está fuera del régimen analizado (0, 0.1]")

    @property
    def mode(self) -> str:
        return "det" if self.deterministic else "rand"

    def to_dict(self) -> dict:
        return asdict(self)


def parse_cost(set_id: int, valor: Union[str, float, Decimal], cost_ratio: int) -> float:
    """
    Valida un costo contra [1/C, 1] y lo redondea una sola vez a double.

    Los textos se interpretan como decimales exactos (Decimal), de modo que la
    comparación con 1/C no depende del redondeo binario.
    """
    try:
        exacto = Decimal(str(valor)) if not isinstance(valor, Decimal) else valor
    except InvalidOperation:
        raise CostoFueraDeRangoError(set_id, valor)

    if not exacto.is_finite() or exacto > 1 or exacto * cost_ratio < 1:
        raise CostoFueraDeRangoError(set_id, valor)
    return float(exacto)
