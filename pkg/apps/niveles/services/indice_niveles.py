# apps/niveles/services/indice_niveles.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                    ÍNDICE DE NIVELES - REGISTROS POR NIVEL                 ║
╚══════════════════════════════════════════════════════════════════════════════╝

Mantiene, para cada nivel i:
  S_i  conjuntos en el nivel i
  T_i  conjuntos tensos (tight) en el nivel i
  E_i  elementos con zlev = i
y los agregados φ_i = Σ φ(s) sobre S_i, c(T_i) y ω(E_i).

Puesta a cero implícita
-----------------------
Cada conjunto guarda tm(s), la marca de su última escritura de lev/φ, y cada
nivel guarda aux[i], la marca de su última puesta a cero. Si
tm(s) ≤ aux[lev(s)] el estado efectivo del conjunto es (lev=0, φ=0).

Para los niveles ≥ 1 la puesta a cero reemplaza los contenedores S_i/T_i por
contenedores vacíos y guarda los viejos en un "limbo"; un registro está vigente
solo si el conjunto pertenece al contenedor ACTUAL de su nivel. Los conjuntos
del limbo se re-registran en S_0 al tocarse o en settle().

En el nivel 0 solo cambia φ, así que basta limpiar los conjuntos con φ > 0
(se llevan por nivel en _phi_pos). Cada uno recibió su φ en una escritura
posterior a la última puesta a cero (un borrado), y la limpieza se amortiza
contra esas escrituras.

Por encima de low_cutoff se mantiene una cadena doblemente enlazada de los
niveles con T_i ≠ ∅ o E_i ≠ ∅, que recorre find_rebuild_k. Enlazar un nivel
busca su predecesor en una máscara de bits de los niveles enlazados
(int.bit_length), sin recorrer los niveles vacíos.
"""

import logging
from typing import Dict, Iterable, List, Optional, Set, Tuple

from apps.nucleo.configuracion import U64_MAX
from apps.nucleo.estado import ElementState, SetState, is_tight
from apps.nucleo.exceptions import InternalInvariantError
from apps.nucleo.potencias import PowerTable

logger = logging.getLogger("niveles")


class TimestampOverflowError(InternalInvariantError):
    """El reloj de puesta a cero se desbordó: hay que reconstruir la instancia."""
    pass


class ZeroClock:
    """Contador monótono `now` y marcas aux[i] de la última puesta a cero."""

    def __init__(self, niveles: int):
        self.now = 0
        self.aux = [0] * niveles

    def tick(self) -> int:
        if self.now >= U64_MAX:
            raise TimestampOverflowError("El reloj de 64 bits llegó a su máximo")
        self.now += 1
        return self.now


class LevelIndex:
    """Registros y agregados por nivel de una instancia del motor."""

    def __init__(self, powers: PowerTable, sets: Dict[int, SetState], max_frequency: int):
        self.powers = powers
        self.epsilon = powers.epsilon
        self.max_frequency = max_frequency
        self._sets = sets

        n = powers.top + 1
        self.niveles = n
        self.low_cutoff = min(powers.low_cutoff, powers.top)
        self.clock = ZeroClock(n)

        self._sets_at: List[Set[int]] = [set() for _ in range(n)]
        self._tight_at: List[Set[int]] = [set() for _ in range(n)]
        self._phi_pos: List[Set[int]] = [set() for _ in range(n)]
        self._elems_at: List[Set[int]] = [set() for _ in range(n)]

        self.phi_i = [0.0] * n
        self.cost_T_i = [0.0] * n
        self.omega_E_i = [0.0] * n

        # Instantánea de lo registrado por cada conjunto / elemento
        self._slot: Dict[int, int] = {}
        self._reg_phi: Dict[int, float] = {}
        self._reg_tight: Dict[int, bool] = {}
        self._elem_slot: Dict[int, int] = {}
        self._elem_w: Dict[int, float] = {}

        self._limbo: List[Set[int]] = []
        self._cambios: Dict[int, bool] = {}

        # Cadena de niveles no vacíos; low_cutoff hace de cabecera
        self._next: List[Optional[int]] = [None] * n
        self._prev: List[Optional[int]] = [None] * n
        # bit i encendido ⇔ i está en la cadena
        self._enlazados = 0

        for s in sets.values():
            self._registrar(s, is_tight(s))
        self._cambios.clear()

    # ── ESTADO EFECTIVO ──────────────────────────────────────────────────────

    def effective_set_state(self, s: SetState) -> Tuple[int, float]:
        """
        (lev, φ) efectivos de s. Si el nivel almacenado fue puesto a cero
        después de la última escritura, materializa (0, 0) y re-registra s.
        """
        if s.tm > self.clock.aux[s.lev]:
            return s.lev, s.phi
        s.lev = 0
        s.phi = 0.0
        s.tm = self.clock.tick()
        self._registrar(s, is_tight(s))
        return 0, 0.0

    def peek_set_state(self, s: SetState) -> Tuple[int, float]:
        """Como effective_set_state pero sin escribir nada."""
        if s.tm > self.clock.aux[s.lev]:
            return s.lev, s.phi
        return 0, 0.0

    def implicit_zero_levels(self, i_lo: int, i_hi: int):
        """aux[i] ← now para i en [i_lo, i_hi]; O(i_hi − i_lo + 1) más la limpieza de φ en el nivel 0."""
        if not (0 <= i_lo <= i_hi < self.niveles):
            raise InternalInvariantError(f"Rango de puesta a cero inválido [{i_lo}, {i_hi}]")

        now = self.clock.tick()
        for i in range(i_lo, i_hi + 1):
            self.clock.aux[i] = now
            if i == 0:
                for sid in list(self._phi_pos[0]):
                    s = self._sets[sid]
                    s.phi = 0.0
                    s.tm = self.clock.tick()
                    self._registrar(s, is_tight(s))
                continue

            if self._sets_at[i]:
                self._limbo.append(self._sets_at[i])
                self._sets_at[i] = set()
            self._tight_at[i] = set()
            self._phi_pos[i] = set()
            self.phi_i[i] = 0.0
            self.cost_T_i[i] = 0.0
            self._refrescar_cadena(i)

    def settle(self):
        """Re-registra en S_0 los conjuntos que quedaron en contenedores puestos a cero."""
        while self._limbo:
            lote = self._limbo.pop()
            for sid in lote:
                if self._vigente(sid):
                    continue
                s = self._sets[sid]
                self.effective_set_state(s)
                if not self._vigente(sid):
                    self._registrar(s, is_tight(s))

    # ── CONJUNTOS ────────────────────────────────────────────────────────────

    def move_set(self, s: SetState, new_lev: int):
        if not (0 <= new_lev < self.niveles):
            raise InternalInvariantError(f"Nivel {new_lev} fuera de rango para el conjunto {s.set_id}")
        if new_lev != s.lev:
            s.lev = new_lev
            s.tm = self.clock.tick()
        self._registrar(s, is_tight(s))

    def set_phi(self, s: SetState, phi: float):
        s.phi = phi
        s.tm = self.clock.tick()
        self._registrar(s, is_tight(s))

    def set_tightness_cache(self, s: SetState, tight: bool):
        self._registrar(s, tight)

    def sync_set(self, s: SetState):
        """Re-sincroniza el registro de s tras escribir ω(s)."""
        self._registrar(s, is_tight(s))

    def registered_tight(self, sid: int) -> bool:
        return self._reg_tight.get(sid, False)

    def _vigente(self, sid: int) -> bool:
        slot = self._slot.get(sid)
        return slot is not None and sid in self._sets_at[slot]

    def _registrar(self, s: SetState, tight: bool):
        sid = s.set_id
        if self._vigente(sid):
            self._quitar(sid, self._slot[sid])

        antes = self._reg_tight.get(sid, False)
        if antes != tight and sid not in self._cambios:
            self._cambios[sid] = antes

        i = s.lev
        self._sets_at[i].add(sid)
        self._slot[sid] = i
        self._reg_phi[sid] = s.phi
        self._reg_tight[sid] = tight
        if s.phi != 0.0:
            self._phi_pos[i].add(sid)
            self.phi_i[i] += s.phi
        if tight:
            self._tight_at[i].add(sid)
            self.cost_T_i[i] += s.cost
            self._refrescar_cadena(i)

    def _quitar(self, sid: int, i: int):
        self._sets_at[i].discard(sid)
        if sid in self._phi_pos[i]:
            self._phi_pos[i].discard(sid)
            self.phi_i[i] -= self._reg_phi[sid]
            if not self._phi_pos[i]:
                self.phi_i[i] = 0.0
        if sid in self._tight_at[i]:
            self._tight_at[i].discard(sid)
            self.cost_T_i[i] -= self._sets[sid].cost
            if not self._tight_at[i]:
                self.cost_T_i[i] = 0.0
            self._refrescar_cadena(i)

    # ── ELEMENTOS ────────────────────────────────────────────────────────────

    def sync_element(self, e: ElementState):
        """Registra e en E_{zlev(e)} con peso ω(e) (alta o actualización)."""
        eid = e.elem_id
        peso = self.powers[e.ilev]
        if eid in self._elem_slot:
            self._quitar_elemento(eid)
        i = e.zlev
        self._elems_at[i].add(eid)
        self._elem_slot[eid] = i
        self._elem_w[eid] = peso
        self.omega_E_i[i] += peso
        self._refrescar_cadena(i)

    def move_element_zlev(self, e: ElementState, new_zlev: int):
        if not (0 <= new_zlev < self.niveles):
            raise InternalInvariantError(f"zlev {new_zlev} fuera de rango para el elemento {e.elem_id}")
        e.zlev = new_zlev
        self.sync_element(e)

    def remove_element(self, eid: int):
        if eid in self._elem_slot:
            self._quitar_elemento(eid)

    def _quitar_elemento(self, eid: int):
        i = self._elem_slot.pop(eid)
        peso = self._elem_w.pop(eid)
        self._elems_at[i].discard(eid)
        self.omega_E_i[i] -= peso
        if not self._elems_at[i]:
            self.omega_E_i[i] = 0.0
        self._refrescar_cadena(i)

    # ── CADENA DE NIVELES NO VACÍOS ──────────────────────────────────────────

    def _refrescar_cadena(self, i: int):
        if i <= self.low_cutoff:
            return
        presente = bool(self._tight_at[i]) or bool(self._elems_at[i])
        enlazado = (self._enlazados >> i) & 1
        if presente and not enlazado:
            self._enlazar(i)
        elif not presente and enlazado:
            self._desenlazar(i)

    def _enlazar(self, i: int):
        """El predecesor es el bit encendido más alto por debajo de i (o la cabecera)."""
        debajo = self._enlazados & ((1 << i) - 1)
        p = debajo.bit_length() - 1 if debajo else self.low_cutoff
        siguiente = self._next[p]
        self._next[p] = i
        self._prev[i] = p
        self._next[i] = siguiente
        if siguiente is not None:
            self._prev[siguiente] = i
        self._enlazados |= 1 << i

    def _desenlazar(self, i: int):
        p = self._prev[i]
        siguiente = self._next[i]
        self._next[p] = siguiente
        if siguiente is not None:
            self._prev[siguiente] = p
        self._next[i] = None
        self._prev[i] = None
        self._enlazados &= ~(1 << i)

    def linked_levels(self) -> List[int]:
        niveles = []
        i = self._next[self.low_cutoff]
        while i is not None:
            niveles.append(i)
            i = self._next[i]
        return niveles

    # ── CONSULTAS ────────────────────────────────────────────────────────────

    def find_rebuild_k(self) -> Optional[int]:
        """
        Menor k con φ_{≤k} > ε(c(T_{≤k}) + f·ω(E_{≤k})), o None.

        Recorre densamente 0..low_cutoff y luego la cadena.
        """
        eps = self.epsilon
        f = self.max_frequency
        phi = cost = omega = 0.0

        for i in range(self.low_cutoff + 1):
            phi += self.phi_i[i]
            cost += self.cost_T_i[i]
            omega += self.omega_E_i[i]
            if phi > eps * (cost + f * omega):
                return i

        i = self._next[self.low_cutoff]
        while i is not None:
            phi += self.phi_i[i]
            cost += self.cost_T_i[i]
            omega += self.omega_E_i[i]
            if phi > eps * (cost + f * omega):
                return i
            i = self._next[i]
        return None

    def sets_at(self, i: int) -> Set[int]:
        return self._sets_at[i]

    def tight_at(self, i: int) -> Set[int]:
        return self._tight_at[i]

    def elements_at(self, i: int) -> Set[int]:
        return self._elems_at[i]

    def tight_sets(self) -> Iterable[int]:
        for cubeta in self._tight_at:
            yield from cubeta

    def cover_cost(self) -> float:
        return sum(self.cost_T_i)

    def cover_changes(self) -> Dict[int, bool]:
        """{sid: tensión al inicio} de los conjuntos cuya tensión cambió desde el último reset."""
        return dict(self._cambios)

    def reset_cover_changes(self):
        self._cambios.clear()
