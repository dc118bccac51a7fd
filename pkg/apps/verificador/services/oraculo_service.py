# apps/verificador/services/oraculo_service.py
"""
Oráculos de OPT para instancias pequeñas.

- brute_force_opt:     costo mínimo exacto por ramificación y poda sobre
                       máscaras de bits (solo conjuntos ocupados).
- greedy_cover_cost:   voraz por costo-efectividad, cota superior de OPT.
- dual_lower_bound:    ω(𝒰)/(1+ε), cota inferior de OPT.
- approximation_check: c(T)/OPT contra (1+5ε)·f.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple

from apps.nucleo.conf import dsc_setting
from apps.verificador.exceptions import TooLargeError

logger = logging.getLogger("verificador")


# ============================================================================
# CONSTRUCCIÓN DE LA INSTANCIA
# ============================================================================


def _ocupados(miembros: Mapping[int, Iterable[int]]) -> Dict[int, int]:
    """{set_id: máscara de bits de los elementos vivos que contiene}."""
    bit_de = {eid: 1 << i for i, eid in enumerate(sorted(miembros))}
    mascaras: Dict[int, int] = {}
    for eid, sets in miembros.items():
        for sid in sets:
            mascaras[sid] = mascaras.get(sid, 0) | bit_de[eid]
    return mascaras


# ============================================================================
# COMPROBACIÓN DE APROXIMACIÓN
# ============================================================================


@dataclass(frozen=True)
class Aproximacion:
    ratio: float
    bound: float
    opt: float
    omega_universe: float

    @property
    def ratio_ok(self) -> bool:
        return self.ratio <= self.bound

    def dual_ok(self, epsilon: float, tau_abs: float) -> bool:
        return self.omega_universe <= (1 + epsilon) * self.opt + tau_abs


class OraculoService:
    """Oráculos de OPT y comprobación de la cota de aproximación."""

    @staticmethod
    def instancia_de(engine) -> Tuple[Dict[int, Tuple[int, ...]], Dict[int, float]]:
        """(miembros por elemento vivo, costos) de un motor."""
        miembros = {eid: e.members for eid, e in engine.elements.items()}
        costos = {sid: s.cost for sid, s in engine.sets.items()}
        return miembros, costos

    @staticmethod
    def brute_force_opt(
        miembros: Mapping[int, Iterable[int]],
        costos: Mapping[int, float],
        cap: Optional[int] = None,
    ) -> float:
        """
        Costo mínimo exacto de una cobertura de los elementos vivos.

        Ramifica sobre el elemento descubierto con menos conjuntos y poda con el
        mejor costo conocido (inicialmente el del voraz).

        Raises:
            TooLargeError: si hay más de `cap` conjuntos ocupados
        """
        cap = dsc_setting("BRUTE_FORCE_CAP") if cap is None else cap
        mascaras = _ocupados(miembros)
        if not mascaras:
            return 0.0
        if len(mascaras) > cap:
            raise TooLargeError(len(mascaras), cap)

        universo = (1 << len(miembros)) - 1
        sids = sorted(mascaras)
        cubren = {}
        for bit in range(len(miembros)):
            cubren[bit] = [sid for sid in sids if (mascaras[sid] >> bit) & 1]

        mejor = OraculoService.greedy_cover_cost(miembros, costos)

        def buscar(cubierto: int, costo: float):
            nonlocal mejor
            if cubierto == universo:
                mejor = min(mejor, costo)
                return

            restante = universo & ~cubierto
            bit = min(
                (b for b in range(len(miembros)) if (restante >> b) & 1),
                key=lambda b: (len(cubren[b]), b),
            )
            for sid in sorted(cubren[bit], key=lambda s: costos[s]):
                nuevo = costo + costos[sid]
                if nuevo >= mejor:
                    continue
                buscar(cubierto | mascaras[sid], nuevo)

        buscar(0, 0.0)
        return mejor

    @staticmethod
    def greedy_cover_cost(miembros: Mapping[int, Iterable[int]], costos: Mapping[int, float]) -> float:
        """Voraz clásico: elige el conjunto de menor costo por elemento nuevo cubierto."""
        mascaras = _ocupados(miembros)
        universo = (1 << len(miembros)) - 1
        cubierto = 0
        total = []
        while cubierto != universo:
            sid = min(
                (s for s in mascaras if mascaras[s] & ~cubierto),
                key=lambda s: (costos[s] / (mascaras[s] & ~cubierto).bit_count(), s),
            )
            total.append(costos[sid])
            cubierto |= mascaras[sid]
        return math.fsum(total)

    @staticmethod
    def dual_lower_bound(engine) -> float:
        """ω(𝒰)/(1+ε) ≤ OPT."""
        pw = engine.powers
        return math.fsum(pw[e.ilev] for e in engine.elements.values()) / pw.base

    @staticmethod
    def approximation_bound(epsilon: float, max_frequency: int) -> float:
        return (1 + 5 * epsilon) * max_frequency

    @staticmethod
    def approximation_check(engine) -> Aproximacion:
        """
        c(T)/OPT del estado actual del motor.

        Raises:
            TooLargeError: propagado desde brute_force_opt
        """
        miembros, costos = OraculoService.instancia_de(engine)
        opt = OraculoService.brute_force_opt(miembros, costos)
        costo_T = engine.query_cover_cost()
        ratio = costo_T / opt if opt > 0 else 1.0
        pw = engine.powers

        resultado = Aproximacion(
            ratio=ratio,
            bound=OraculoService.approximation_bound(pw.epsilon, engine.config.max_frequency),
            opt=opt,
            omega_universe=math.fsum(pw[e.ilev] for e in engine.elements.values()),
        )
        if not resultado.ratio_ok:
            logger.warning(f"Razón de aproximación {ratio:.4f} supera la cota {resultado.bound:.4f}")
        return resultado
