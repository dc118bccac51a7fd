# apps/motor/services/iterlog.py
"""
Logaritmo iterado y → 5·log_{1+ε}(y) usado por la versión aleatorizada.

it[0] = f, it[η+1] = 5·log_{1+ε}(it[η]). Para cada brecha g = ilev(e) − k − 1
se precalcula el η con it[η+1] ≤ g ≤ it[η], de modo que la consulta es O(1).
Las brechas por debajo del último iterado usan el último η.
"""

import math
from typing import List, Optional

from apps.nucleo.potencias import PowerTable

MAX_ITERACIONES = 64


class IteratedLogTable:

    def __init__(self, powers: PowerTable, max_frequency: int, cost_ratio: int):
        self.powers = powers
        self.max_frequency = max_frequency
        self.cost_ratio = cost_ratio

        self.iterados: List[float] = [float(max_frequency)]
        while len(self.iterados) < MAX_ITERACIONES:
            actual = self.iterados[-1]
            if actual <= 1.0:
                break
            siguiente = 5.0 * powers.log(actual)
            self.iterados.append(siguiente)
            if siguiente >= actual:
                break

        # último η del tramo estrictamente decreciente
        self.last_eta = 0
        for i in range(1, len(self.iterados)):
            if self.iterados[i] >= self.iterados[i - 1]:
                break
            self.last_eta = i

        self._eta_por_brecha: List[Optional[int]] = [self._buscar(g) for g in range(powers.top + 1)]

    def _buscar(self, brecha: int) -> Optional[int]:
        """Mayor η del tramo decreciente con brecha ≤ it[η]; None si brecha > f."""
        eta = None
        for i, valor in enumerate(self.iterados):
            if i > 0 and valor >= self.iterados[i - 1]:
                break
            if brecha <= valor:
                eta = i
        return eta

    def iterate(self, eta: int) -> float:
        return self.iterados[eta]

    def eta_for_gap(self, brecha: int) -> Optional[int]:
        if 0 <= brecha < len(self._eta_por_brecha):
            return self._eta_por_brecha[brecha]
        return None

    def sample_budget(self, eta: int) -> int:
        """50·⌈f / it[η]⌉ muestras."""
        return 50 * math.ceil(self.max_frequency / self.iterados[eta])

    def probe_weight(self, eta: int, k: int) -> float:
        """δ = min{it[η]^{-4}, (ε/2C)²}·(1+ε)^{-k-1}."""
        eps = self.powers.epsilon
        factor = min(self.iterados[eta] ** -4, (eps / (2 * self.cost_ratio)) ** 2)
        return factor * self.powers[k + 1]

    def small_fhat_gap(self, eta: int) -> int:
        """d̂ = ⌈log_{1+ε} max{it[η]⁴, (2C/ε)²}⌉."""
        eps = self.powers.epsilon
        return self.powers.ceil_log(max(self.iterados[eta] ** 4, (2 * self.cost_ratio / eps) ** 2))
