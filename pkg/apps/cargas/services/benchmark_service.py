# apps/cargas/services/benchmark_service.py
"""
Barrido de benchmark sobre f.

Cada celda (f, modo) genera una carga `window` con volumen n·f constante
(W = VOLUMEN // f, capacidad W + 1, m = max(64, 2·max f) conjuntos, C = 1)
y la ejecuta sin auditorías. El tiempo es el acumulado de apply_update que
mide el propio motor. Las celdas se ejecutan en secuencia, un motor por
celda.

opt_cost y ratio quedan vacíos salvo que el estado final tenga pocos
conjuntos ocupados para el óptimo exacto.
"""

import csv
import logging
from dataclasses import asdict, dataclass, fields
from decimal import Decimal
from typing import Iterable, List, Optional, TextIO

from apps.cargas.exceptions import BenchError
from apps.cargas.serializers import FilaBenchSerializer
from apps.cargas.services.ejecucion_service import EjecucionService
from apps.cargas.services.generador_service import GeneradorService
from apps.verificador.exceptions import TooLargeError
from apps.verificador.services import OraculoService

logger = logging.getLogger("cargas")

VOLUMEN = 4096


@dataclass
class BenchRow:
    f: int
    m: int
    n_live_max: int
    mode: str
    seed: int
    total_updates: int
    wall_ns_total: int
    amortized_ns_per_update: float
    rebuild_count: int
    max_rebuild_k: int
    cover_cost_final: float
    opt_cost: Optional[float] = None
    ratio: Optional[float] = None


def _celda(f: int, m: int, modo: str, updates: int, seed: int, epsilon: Decimal) -> BenchRow:
    ventana = max(1, VOLUMEN // f)
    traza = GeneradorService.gen_workload(
        "window",
        {
            "sets": m,
            "freq": f,
            "updates": updates,
            "epsilon": epsilon,
            "cost_ratio": 1,
            "capacity": ventana + 1,
            "window": ventana,
            "fixed_frequency": True,
        },
        seed=seed,
    )
    resultado = EjecucionService.run_trace(traza, mode=modo, seed=seed, check_level="none")
    stats = resultado.engine.stats
    total = stats.updates
    wall = stats.timing.get("apply_update", 0)

    fila = BenchRow(
        f=f,
        m=m,
        n_live_max=resultado.n_live_max,
        mode=modo,
        seed=seed,
        total_updates=total,
        wall_ns_total=wall,
        amortized_ns_per_update=wall / total if total else 0.0,
        rebuild_count=stats.rebuild_count,
        max_rebuild_k=stats.max_rebuild_k,
        cover_cost_final=resultado.engine.query_cover_cost(),
    )
    _con_optimo(fila, resultado.engine)
    FilaBenchSerializer(data=asdict(fila)).is_valid(raise_exception=True)
    logger.info(f"bench f={f} modo={modo}: {fila.amortized_ns_per_update:.0f} ns/actualización")
    return fila


def _con_optimo(fila: BenchRow, engine):
    """opt_cost y ratio solo cuando el oráculo exacto admite la instancia final."""
    if not engine.elements:
        return
    try:
        aprox = OraculoService.approximation_check(engine)
    except TooLargeError:
        return
    fila.opt_cost = aprox.opt
    fila.ratio = aprox.ratio


class BenchmarkService:
    """Barrido de frecuencias, criterio de escala y CSV."""

    @staticmethod
    def run_bench(
        freqs: Iterable[int],
        updates: int,
        modes: Iterable[str] = ("det", "rand"),
        seed: int = 0,
        epsilon: Decimal = Decimal("0.2"),
    ) -> List[BenchRow]:
        freqs = sorted(set(freqs))
        m = max(64, 2 * max(freqs))
        return [_celda(f, m, modo, updates, seed, epsilon) for modo in modes for f in freqs]

    @staticmethod
    def check_scaling(filas: List[BenchRow], max_ratio: float):
        """
        t(f_{i+1})/t(f_i) ≤ max_ratio para cada par consecutivo de cada modo.

        Raises:
            BenchError: en el primer par que lo viole
        """
        for modo in sorted({fila.mode for fila in filas}):
            serie = sorted((fila for fila in filas if fila.mode == modo), key=lambda fila: fila.f)
            for anterior, actual in zip(serie, serie[1:]):
                if anterior.amortized_ns_per_update <= 0:
                    continue
                razon = actual.amortized_ns_per_update / anterior.amortized_ns_per_update
                if razon > max_ratio:
                    raise BenchError(modo, anterior.f, actual.f, razon, max_ratio)

    @staticmethod
    def write_csv(filas: List[BenchRow], destino: TextIO):
        escritor = csv.DictWriter(destino, fieldnames=[c.name for c in fields(BenchRow)])
        escritor.writeheader()
        for fila in filas:
            escritor.writerow({k: ("" if v is None else v) for k, v in asdict(fila).items()})
