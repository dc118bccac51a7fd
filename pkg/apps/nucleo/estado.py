# apps/nucleo/estado.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                 ESTADO DE CONJUNTOS Y ELEMENTOS (NÚCLEO)                   ║
╚══════════════════════════════════════════════════════════════════════════════╝

Tipos compartidos por el índice de niveles, el motor y el verificador:

- SetStatic:    descripción estática de un conjunto (id, costo, nivel base).
- SetState:     estado dinámico (nivel, peso ω, peso muerto φ, marca de tiempo,
                cubetas A_i(s) de elementos activos y P_i(s) de pasivos).
- ElementState: miembros, activo/pasivo, nivel perezoso zlev y nivel
                intrínseco ilev (ω(e) = (1+ε)^{-ilev}).

Los campos lev/phi de SetState son los valores ALMACENADOS; el valor efectivo
se obtiene siempre a través de LevelIndex.effective_set_state (puesta a cero
implícita).
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Set, Tuple

from apps.nucleo.potencias import PowerTable


@dataclass(frozen=True)
class SetStatic:
    set_id: int
    cost: float
    base: int
    # c_s/(1+ε), umbral de tensión
    threshold: float


@dataclass
class SetState:
    static: SetStatic
    lev: int = 0
    omega: float = 0.0
    phi: float = 0.0
    tm: int = 0
    writes: int = 0
    buckets_active: Dict[int, Set[int]] = field(default_factory=lambda: defaultdict(set))
    buckets_passive: Dict[int, Set[int]] = field(default_factory=lambda: defaultdict(set))

    @property
    def set_id(self) -> int:
        return self.static.set_id

    @property
    def cost(self) -> float:
        return self.static.cost

    @property
    def active_count_at_lev(self) -> int:
        return self.count_active(self.lev)

    # ── Cubetas ──────────────────────────────────────────────────────────────

    def count_active(self, i: int) -> int:
        cubeta = self.buckets_active.get(i)
        return len(cubeta) if cubeta else 0

    def active_at(self, i: int) -> Set[int]:
        return self.buckets_active.get(i, set())

    def passive_at(self, i: int) -> Set[int]:
        return self.buckets_passive.get(i, set())

    def add_member(self, eid: int, ilev: int, active: bool):
        destino = self.buckets_active if active else self.buckets_passive
        destino[ilev].add(eid)

    def discard_member(self, eid: int, ilev: int, active: bool):
        origen = self.buckets_active if active else self.buckets_passive
        cubeta = origen.get(ilev)
        if cubeta is None:
            return
        cubeta.discard(eid)
        if not cubeta:
            del origen[ilev]

    def is_empty(self) -> bool:
        return not self.buckets_active and not self.buckets_passive

    def member_count(self) -> int:
        return sum(len(c) for c in self.buckets_active.values()) + sum(
            len(c) for c in self.buckets_passive.values()
        )

    def iter_members(self) -> Iterable[Tuple[int, int, bool]]:
        """(eid, ilev, activo) de cada miembro."""
        for i, cubeta in self.buckets_active.items():
            for eid in cubeta:
                yield eid, i, True
        for i, cubeta in self.buckets_passive.items():
            for eid in cubeta:
                yield eid, i, False


@dataclass
class ElementState:
    elem_id: int
    members: Tuple[int, ...]
    active: bool = True
    zlev: int = 0
    ilev: Optional[int] = None
    rebuild_hits: int = 0

    @property
    def status(self) -> str:
        return "Active" if self.active else "Passive"


# ============================================================================
# OPERACIONES
# ============================================================================


def element_weight(e: ElementState, powers: PowerTable) -> float:
    """ω(e) = (1+ε)^{-ilev(e)}; fuera de tabla → InternalInvariantError."""
    return powers[e.ilev]


def composite_weight(s: SetState) -> float:
    return s.omega + s.phi


def is_tight(s: SetState, static: Optional[SetStatic] = None) -> bool:
    """ω*(s) ≥ c_s/(1+ε), comparación inclusiva."""
    static = static or s.static
    return composite_weight(s) >= static.threshold


def base_level(cost: float, powers: PowerTable) -> int:
    """Mayor b ≥ 0 con (1+ε)^b ≤ 1/c_s, es decir pow[b] ≥ c_s."""
    h = powers.first_below(cost, 0, powers.top)
    if h is None:
        return powers.top
    return max(h - 1, 0)


def weight_at_level(
    s: SetState,
    i: int,
    powers: PowerTable,
    members_view: Optional[Callable[[SetState], Iterable[Tuple[float, int]]]] = None,
) -> float:
    """
    Peso de s si se elevara al nivel i.

    Sin members_view solo se admite i = lev(s)+1 (forma O(1)):
        ω(s) − |A_lev(s)| · ε(1+ε)^{-lev-1}
    Con members_view, que produce (ω(e), máximo nivel de los otros conjuntos
    de e) por cada miembro, se evalúa la suma completa:
        Σ min{ω(e), (1+ε)^{-max(i, otros)}}
    """
    if members_view is None:
        if i != s.lev + 1:
            raise ValueError("La forma O(1) solo está definida para i = lev(s)+1")
        return s.omega - s.count_active(s.lev) * powers.drop(s.lev)

    return math.fsum(min(w, powers[max(i, otros)]) for w, otros in members_view(s))


def build_set_static(set_id: int, cost: float, powers: PowerTable) -> SetStatic:
    return SetStatic(
        set_id=set_id,
        cost=cost,
        base=base_level(cost, powers),
        threshold=cost / powers.base,
    )
