# apps/nucleo/potencias.py
"""
Tabla de potencias (1+ε)^{-i} calculada una sola vez por configuración.

Todas las búsquedas del tipo "menor h tal que (1+ε)^{-h} < gap" se hacen con
bisección sobre la tabla, nunca con logaritmos en coma flotante.
"""

import bisect
import math

from apps.nucleo.exceptions import InternalInvariantError


def ceil_log(base: float, y: float) -> int:
    """Menor entero x ≥ 0 con base**x ≥ y (multiplicación repetida)."""
    x = 0
    p = 1.0
    while p < y:
        p *= base
        x += 1
    return x


class PowerTable:
    """
    pow[i] = (1+ε)^{-i} para i en [0, L + gap_bound + 1].

    Atributos:
        epsilon, levels (L), gap_bound, low_cutoff, top (último índice).
    """

    def __init__(self, epsilon: float, cost_ratio: int, max_frequency: int, capacity: int):
        self.epsilon = epsilon
        self.base = 1.0 + epsilon
        self.levels = ceil_log(self.base, cost_ratio * capacity) + 1
        self.gap_bound = ceil_log(self.base, max(max_frequency, 2 * cost_ratio / epsilon))
        self.low_cutoff = ceil_log(self.base, cost_ratio) + 1

        size = self.levels + self.gap_bound + 2
        self.pow = [1.0] * size
        for i in range(1, size):
            self.pow[i] = self.pow[i - 1] / self.base
        # creciente, para bisect
        self._negados = [-p for p in self.pow]
        self.top = size - 1

    def __len__(self):
        return len(self.pow)

    def __getitem__(self, i: int) -> float:
        if i < 0 or i > self.top:
            raise InternalInvariantError(f"Índice {i} fuera de la tabla de potencias [0, {self.top}]")
        return self.pow[i]

    def drop(self, i: int) -> float:
        """Peso que pierde un elemento al subir del nivel i al i+1: ε(1+ε)^{-i-1}."""
        return self[i] - self[i + 1]

    def first_below(self, gap: float, lo: int, hi: int):
        """Menor h en [lo, hi] con pow[h] < gap, o None si no existe."""
        lo = max(lo, 0)
        hi = min(hi, self.top)
        if lo > hi:
            return None
        h = bisect.bisect_right(self._negados, -gap, lo, hi + 1)
        return h if h <= hi else None

    def ceil_log(self, y: float) -> int:
        return ceil_log(self.base, y)

    def log(self, y: float) -> float:
        """log_{1+ε}(y) real; solo para umbrales y diagnósticos, no para control de niveles."""
        return math.log(y) / math.log(self.base)
