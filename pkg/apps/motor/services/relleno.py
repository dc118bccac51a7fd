# apps/motor/services/relleno.py
"""
WaterFilling por descenso sincronizado.

Entrada: conjuntos Ŝ y elementos activos Ê, todos en el nivel k̂, con
ω(s) < c_s y φ(s) = 0.

Cada conjunto s ∈ Ŝ "flota" mientras bajar un nivel más no lo haga alcanzar
c_s. Con n(s) elementos flotantes y peso fijo F(s) del resto, s se congela en
el mayor t ≤ k̂ con F(s) + n(s)·(1+ε)^{-(t-1)} ≥ c_s; al congelarse arrastra
a sus elementos flotantes, que pasan a peso fijo en los demás conjuntos y solo
pueden retrasar su congelamiento. Lo que sigue flotando al final cae a 0.

Coste O(f·|Ê| + k̂) más una bisección por recálculo.
"""

import bisect
import logging
import time
from collections import defaultdict
from typing import Dict, List

from apps.nucleo.estado import ElementState, SetState
from apps.nucleo.exceptions import InternalInvariantError

logger = logging.getLogger("motor")


class RellenoMixin:

    def _nivel_congelado(self, s: SetState, n: int, fijo: float, hasta: int) -> int:
        """Mayor t en [1, hasta] con fijo + n·pow[t−1] ≥ c_s, o 0."""
        if n == 0:
            return 0
        pw = self.powers
        c = s.cost
        return bisect.bisect_left(
            range(1, hasta + 1), True, key=lambda t: not (fijo + n * pw[t - 1] >= c)
        )

    def water_filling(self, k_hat: int, S_hat: Dict[int, None], E_hat: List[ElementState]):
        if not S_hat and not E_hat:
            return

        inicio = time.perf_counter_ns()
        self.stats.water_filling_calls += 1
        pw = self.powers

        flotantes_de = defaultdict(list)
        n = {sid: 0 for sid in S_hat}
        for e in E_hat:
            for sid in e.members:
                flotantes_de[sid].append(e)
                n[sid] += 1
        fijo = {sid: self.sets[sid].omega - n[sid] * pw[k_hat] for sid in S_hat}

        t_de = {}
        cubetas = defaultdict(list)
        for sid in S_hat:
            t = self._nivel_congelado(self.sets[sid], n[sid], fijo[sid], k_hat)
            t_de[sid] = t
            cubetas[t].append(sid)

        nivel_s: Dict[int, int] = {}
        nivel_e: Dict[int, int] = {}

        for j in range(k_hat, 0, -1):
            pila = cubetas.pop(j, [])
            while pila:
                sid = pila.pop()
                if sid in nivel_s or t_de[sid] != j:
                    continue
                nivel_s[sid] = j
                for e in flotantes_de[sid]:
                    if e.elem_id in nivel_e:
                        continue
                    nivel_e[e.elem_id] = j
                    for sid2 in e.members:
                        if sid2 in nivel_s:
                            continue
                        n[sid2] -= 1
                        fijo[sid2] += pw[j]
                        t = self._nivel_congelado(self.sets[sid2], n[sid2], fijo[sid2], j)
                        t_de[sid2] = t
                        if t == j:
                            pila.append(sid2)
                        else:
                            cubetas[t].append(sid2)

        # ── Aplicar niveles ──
        for e in E_hat:
            j = nivel_e.get(e.elem_id, 0)
            if j != e.ilev:
                self._mover_elemento(e, j, True)
            self.index.move_element_zlev(e, j)

        for sid in S_hat:
            s = self.sets[sid]
            self._fijar_nivel(s, nivel_s.get(sid, 0))
            self._resumar(s)

        if self.check_contracts:
            self._verificar_relleno(S_hat)

        self.stats.add_time("water_filling", time.perf_counter_ns() - inicio)

    def _verificar_relleno(self, S_hat: Dict[int, None]):
        for sid in S_hat:
            s = self.sets[sid]
            tolerancia = self.tau_rel * (1 + s.member_count())
            fallos = []
            if s.omega >= s.cost:
                fallos.append(f"ω={s.omega} ≥ c={s.cost}")
            if s.phi != 0.0:
                fallos.append(f"φ={s.phi} ≠ 0")
            if s.lev > 0 and s.omega < s.static.threshold - tolerancia:
                fallos.append(f"lev={s.lev} con ω={s.omega} < c/(1+ε)={s.static.threshold}")
            if fallos:
                logger.error(f"water_filling dejó el conjunto {sid} inválido: {'; '.join(fallos)}")
                raise InternalInvariantError(f"Post-contrato de water_filling violado en el conjunto {sid}")
