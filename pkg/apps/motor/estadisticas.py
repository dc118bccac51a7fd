# apps/motor/estadisticas.py
"""
Tipos de apoyo del motor: contadores, delta de cobertura y marcos de trabajo
de Rebuild y FixLevel.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from apps.nucleo.estado import ElementState


@dataclass(frozen=True)
class CoverDelta:
    """Conjuntos que entraron / salieron de T durante una actualización."""

    entered: Tuple[int, ...] = ()
    left: Tuple[int, ...] = ()

    @property
    def recourse(self) -> int:
        return len(self.entered) + len(self.left)


@dataclass
class EngineStats:
    """
    Contadores monótonos del motor.

    `timing` acumula nanosegundos por subrutina y es lo único que varía
    entre dos ejecuciones idénticas.
    """

    inserts: int = 0
    deletes: int = 0
    rebuild_count: int = 0
    rebuild_k_histogram: Counter = field(default_factory=Counter)
    max_rebuild_k: int = -1
    fixlevel_calls: int = 0
    activated_elements: int = 0
    handle_det_calls: int = 0
    handle_rand_calls: int = 0
    rand_routed_det: int = 0
    dec_ilev_calls: int = 0
    water_filling_calls: int = 0
    dirty_processed: int = 0
    gap_violations: int = 0
    eta_violations: int = 0
    sample_rounds: int = 0
    sample_hits: int = 0
    eta_histogram: Counter = field(default_factory=Counter)
    fhat_empty: int = 0
    fhat_small: int = 0
    fhat_large: int = 0
    refreshes: int = 0
    timing: Dict[str, int] = field(default_factory=Counter)

    @property
    def updates(self) -> int:
        return self.inserts + self.deletes

    def record_rebuild(self, k: int):
        self.rebuild_count += 1
        self.rebuild_k_histogram[k] += 1
        self.max_rebuild_k = max(self.max_rebuild_k, k)

    def add_time(self, nombre: str, ns: int):
        self.timing[nombre] += ns

    def to_dict(self) -> dict:
        return {
            "updates": {"insert": self.inserts, "delete": self.deletes},
            "rebuild_count": self.rebuild_count,
            "rebuild_k_histogram": {str(k): v for k, v in sorted(self.rebuild_k_histogram.items())},
            "max_rebuild_k": self.max_rebuild_k,
            "fixlevel_calls": self.fixlevel_calls,
            "activated_elements": self.activated_elements,
            "handle_det_calls": self.handle_det_calls,
            "handle_rand_calls": self.handle_rand_calls,
            "rand_routed_det": self.rand_routed_det,
            "dec_ilev_calls": self.dec_ilev_calls,
            "water_filling_calls": self.water_filling_calls,
            "dirty_processed": self.dirty_processed,
            "gap_violations": self.gap_violations,
            "eta_violations": self.eta_violations,
            "sample_rounds": self.sample_rounds,
            "sample_hits": self.sample_hits,
            "eta_histogram": {str(k): v for k, v in sorted(self.eta_histogram.items())},
            "fhat": {"empty": self.fhat_empty, "small": self.fhat_small, "large": self.fhat_large},
            "refreshes": self.refreshes,
            "timing": {k: v for k, v in sorted(self.timing.items())},
        }


@dataclass
class RebuildScratch:
    """Estado de trabajo de una llamada a rebuild(k)."""

    k: int
    D: List[ElementState] = field(default_factory=list)
    E: List[ElementState] = field(default_factory=list)
    E_prime: List[ElementState] = field(default_factory=list)
    # dict como conjunto ordenado: el orden de inserción fija el recorrido
    S: Dict[int, None] = field(default_factory=dict)
    E_hat: List[ElementState] = field(default_factory=list)
    S_hat: Dict[int, None] = field(default_factory=dict)
    k_hat: Optional[int] = None

    def touch(self, sid: int):
        self.S[sid] = None


@dataclass
class FixLevelFrame:
    """
    Marco de FixLevel(e, l).

    acc[sid] es el peso de e que ω(sid) tiene contabilizado en este momento;
    la diferencia con ω(e) se aplica perezosamente.
    """

    e: ElementState
    l: int
    d: int = 0
    F: Set[int] = field(default_factory=set)
    l_s: Dict[int, int] = field(default_factory=dict)
    acc: Dict[int, float] = field(default_factory=dict)
