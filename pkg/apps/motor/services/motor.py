# apps/motor/services/motor.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║              MOTOR DINÁMICO DE COBERTURA DE CONJUNTOS (PRIMAL-DUAL)        ║
╚══════════════════════════════════════════════════════════════════════════════╝

Mantiene una cobertura (1+ε)f-aproximada de costo mínimo bajo inserciones y
borrados de elementos.

Ciclo de una actualización (apply_update):
  1. Validación completa: si falla, el estado no se toca.
  2. delete_element / insert_element (este último puede llamar a fix_level).
  3. Mientras exista k con φ_{≤k} > ε(c(T_{≤k}) + f·ω(E_{≤k})): rebuild(k).
  4. settle() del índice y resumado exacto de los pesos con muchas escrituras.

La cobertura T son los conjuntos tensos (ω(s) + φ(s) ≥ c_s/(1+ε)).

Los pasos de reconstrucción viven en reconstruccion.py y el relleno por
niveles (WaterFilling) en relleno.py; aquí quedan las primitivas de estado
que comparten todos.
"""

import logging
import math
import random
import time
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union
from decimal import Decimal

from apps.motor.actualizaciones import Delete, Insert, Update
from apps.motor.estadisticas import CoverDelta, EngineStats, FixLevelFrame
from apps.motor.exceptions import (
    CapacityExceededError,
    DuplicateElementError,
    FrequencyExceededError,
    InvalidMembershipError,
    UnknownElementError,
    UnknownSetError,
)
from apps.motor.services.iterlog import IteratedLogTable
from apps.motor.services.reconstruccion import ReconstruccionMixin
from apps.motor.services.relleno import RellenoMixin
from apps.niveles.services import LevelIndex
from apps.nucleo.conf import dsc_setting
from apps.nucleo.configuracion import Config, parse_cost
from apps.nucleo.estado import (
    ElementState,
    SetState,
    build_set_static,
    is_tight,
    weight_at_level,
)
from apps.nucleo.exceptions import InternalInvariantError
from apps.nucleo.potencias import PowerTable

logger = logging.getLogger("motor")


class DynamicSetCoverEngine(ReconstruccionMixin, RellenoMixin):
    """
    Instancia del motor para un sistema de conjuntos fijo.

    Args:
        config: parámetros validados (Config)
        costs:  {set_id: costo} con costos en [1/C, 1] (texto decimal o número)
    """

    def __init__(self, config: Config, costs: Mapping[int, Union[str, float, Decimal]]):
        self.config = config
        self.powers = PowerTable(config.epsilon, config.cost_ratio, config.max_frequency, config.capacity)

        self.sets: Dict[int, SetState] = {}
        for sid, valor in costs.items():
            costo = parse_cost(sid, valor, config.cost_ratio)
            self.sets[sid] = SetState(static=build_set_static(sid, costo, self.powers))

        self.elements: Dict[int, ElementState] = {}
        self.index = LevelIndex(self.powers, self.sets, config.max_frequency)
        self.iterlog = IteratedLogTable(self.powers, config.max_frequency, config.cost_ratio)
        self.rng = random.Random(config.rng_seed)
        self.stats = EngineStats()

        self.refresh_writes = dsc_setting("REFRESH_WRITES")
        self.check_contracts = config.check_contracts or dsc_setting("CONTRACTS")
        self.tau_rel = dsc_setting("TAU_REL")
        self._refresh_due = set()
        self._eta_previo: Dict[int, Tuple[int, bool]] = {}
        self._scratch = None

        logger.debug(
            f"Motor creado: m={len(self.sets)} L={self.powers.levels} "
            f"gap_bound={self.powers.gap_bound} modo={config.mode}"
        )

    # ========================================================================
    # API PÚBLICA
    # ========================================================================

    def apply_update(
        self,
        u: Update,
        on_dispatched: Optional[Callable[["DynamicSetCoverEngine"], None]] = None,
    ) -> CoverDelta:
        """
        Aplica una inserción o un borrado y restaura los invariantes.

        Args:
            u: Insert(elem, members) o Delete(elem)
            on_dispatched: gancho opcional invocado tras el alta/baja y antes
                de las reconstrucciones (no cuenta en los tiempos)

        Returns:
            CoverDelta con los conjuntos que entraron y salieron de T

        Raises:
            ActualizacionInvalidaError: si la actualización no es válida
        """
        self._validar(u)

        inicio = time.perf_counter_ns()
        self.index.reset_cover_changes()
        if isinstance(u, Insert):
            self.stats.inserts += 1
            self.insert_element(u.elem, u.members)
        else:
            self.stats.deletes += 1
            self.delete_element(u.elem)
        transcurrido = time.perf_counter_ns() - inicio

        if on_dispatched is not None:
            on_dispatched(self)

        inicio = time.perf_counter_ns()
        limite = 64 * (self.powers.levels + 2)
        rondas = 0
        while (k := self.index.find_rebuild_k()) is not None:
            rondas += 1
            if rondas > limite:
                logger.error(f"Bucle de reconstrucción sin progreso tras {limite} rondas (k={k})")
                raise InternalInvariantError(f"Más de {limite} reconstrucciones en una actualización")
            self.rebuild(k)

        self.index.settle()
        self._refrescar_pesos()
        delta = self._delta_cobertura()
        transcurrido += time.perf_counter_ns() - inicio
        self.stats.add_time("apply_update", transcurrido)
        return delta

    def query_cover(self) -> List[int]:
        return sorted(self.index.tight_sets())

    def query_cover_cost(self) -> float:
        return math.fsum(self.sets[sid].cost for sid in self.index.tight_sets())

    def stats_snapshot(self) -> dict:
        return self.stats.to_dict()

    @property
    def live_count(self) -> int:
        return len(self.elements)

    # ========================================================================
    # VALIDACIÓN
    # ========================================================================

    def _validar(self, u: Update):
        if isinstance(u, Delete):
            if u.elem not in self.elements:
                raise UnknownElementError(u.elem)
            return

        if u.elem in self.elements:
            raise DuplicateElementError(u.elem)
        if not u.members:
            raise InvalidMembershipError(u.elem, "lista vacía")
        if len(set(u.members)) != len(u.members):
            raise InvalidMembershipError(u.elem, "conjuntos repetidos")
        for sid in u.members:
            if sid not in self.sets:
                raise UnknownSetError(sid)
        if len(u.members) > self.config.max_frequency:
            raise FrequencyExceededError(u.elem, len(u.members), self.config.max_frequency)
        if len(self.elements) >= self.config.capacity:
            raise CapacityExceededError(self.config.capacity)

    # ========================================================================
    # DELETE / INSERT
    # ========================================================================

    def delete_element(self, eid: int):
        """Quita e; los conjuntos tensos conservan ω* pasando ω(e) a φ."""
        e = self.elements[eid]
        w = self.powers[e.ilev]
        for sid in e.members:
            s = self._vigente(sid)
            tenso = is_tight(s)
            s.discard_member(eid, e.ilev, e.active)
            self._sumar_omega(s, -w)
            if s.is_empty():
                s.omega = 0.0
                self.index.sync_set(s)
            if tenso:
                self._fijar_phi(s, s.phi + w)
        self.index.remove_element(eid)
        del self.elements[eid]
        self._eta_previo.pop(eid, None)

    def insert_element(self, eid: int, members: Iterable[int]):
        """
        Inserta e al nivel intrínseco más bajo posible en [zlev, zlev + gap_bound];
        si ni siquiera zlev + gap_bound cabe, delega en fix_level.
        """
        pw = self.powers
        e = ElementState(elem_id=eid, members=tuple(members), active=False)
        self.elements[eid] = e

        miembros = [self._vigente(sid) for sid in e.members]
        e.zlev = max(s.lev for s in miembros)
        l = e.zlev + pw.gap_bound

        if any(s.omega + pw[l] >= s.cost for s in miembros):
            self.fix_level(e, l)
            return

        brecha = min(s.cost - s.omega for s in miembros)
        h = pw.first_below(brecha, e.zlev, l)
        if h is None:
            raise InternalInvariantError(f"Sin nivel intrínseco válido para el elemento {eid}")
        e.ilev = h
        e.active = h == e.zlev
        for s in miembros:
            s.add_member(eid, h, e.active)
            self._sumar_omega(s, pw[h])
        self.index.sync_element(e)

    # ========================================================================
    # FIX LEVEL
    # ========================================================================

    def fix_level(self, e: ElementState, l: int):
        """
        Lleva e a pasivo con ilev = l (o más alto, manteniendo la brecha
        d = l − zlev(e)) subiendo los conjuntos que violen ω(s, lev+1) < c_s.

        Pre: zlev(e) = lev(e) y lev(e) < l ≤ ilev_old(e) (∞ si e es nuevo).
        """
        fresco = e.ilev is None
        if not fresco and e.ilev == l:
            return

        inicio = time.perf_counter_ns()
        pw = self.powers
        self.stats.fixlevel_calls += 1
        marco = FixLevelFrame(e=e, l=l)
        previos = self._foto_miembros(e) if self.check_contracts else None

        peso_previo = 0.0
        if not fresco:
            if l > e.ilev:
                raise InternalInvariantError(f"fix_level con l={l} > ilev={e.ilev} (elemento {e.elem_id})")
            peso_previo = pw[e.ilev]
            for sid in e.members:
                self.sets[sid].discard_member(e.elem_id, e.ilev, e.active)

        e.ilev = l
        e.active = False
        e.rebuild_hits = 0
        for sid in e.members:
            s = self._vigente(sid)
            self._sumar_omega(s, pw[l] - peso_previo)
            marco.acc[sid] = pw[l]
            if s.omega >= s.cost:
                marco.F.add(sid)
        marco.d = l - e.zlev

        # ── Subida de los conjuntos s ∋ e ──
        for sid in e.members:
            s = self._vigente(sid)
            self._refrescar_aporte(marco, s)

            objetivo = min(s.static.base, e.zlev)
            if s.lev < objetivo and weight_at_level(s, s.lev + 1, pw) >= s.cost:
                self._fijar_phi(s, 0.0)
                self._fijar_nivel(s, objetivo)
                self._activar_pasivos(s, objetivo)

            while weight_at_level(s, s.lev + 1, pw) >= s.cost:
                self._fijar_phi(s, 0.0)
                k = s.lev
                self._fijar_nivel(s, k + 1)
                self._subir_activos(s, k)
                if e.zlev == k:
                    e.zlev = k + 1
                    e.ilev = k + 1 + marco.d
                    self._refrescar_aporte(marco, s)
                self._activar_pasivos(s, k + 1)

            marco.l_s[sid] = e.ilev

        # ── Finalización ──
        for sid in e.members:
            s = self._vigente(sid)
            self._refrescar_aporte(marco, s)
            if sid in marco.F:
                self._fijar_phi(s, s.phi + pw[marco.l_s[sid]] - pw[e.ilev])
            s.add_member(e.elem_id, e.ilev, False)
        self.index.sync_element(e)

        if previos is not None:
            self._verificar_fix_level(e, previos, marco.d)

        self.stats.add_time("fix_level", time.perf_counter_ns() - inicio)

    def _refrescar_aporte(self, marco: FixLevelFrame, s: SetState):
        actual = self.powers[marco.e.ilev]
        previo = marco.acc[s.set_id]
        if actual != previo:
            self._sumar_omega(s, actual - previo)
            marco.acc[s.set_id] = actual

    def _foto_miembros(self, e: ElementState) -> Dict[int, tuple]:
        """(tenso, lev) efectivos de cada s ∋ e, sin materializar nada."""
        foto = {}
        for sid in e.members:
            s = self.sets[sid]
            lev, phi = self.index.peek_set_state(s)
            foto[sid] = (s.omega + phi >= s.static.threshold, lev)
        return foto

    def _verificar_fix_level(self, e: ElementState, previos: Dict[int, tuple], d: int):
        """
        Post-contrato de fix_level sobre los conjuntos de e:
          - ω(s, lev+1) < c_s
          - los conjuntos tensos antes de la llamada siguen tensos
          - con d ≥ log_{1+ε}(2C/ε) ningún conjunto flojo cambia de nivel
        """
        pw = self.powers
        umbral_d = pw.ceil_log(2 * self.config.cost_ratio / self.config.epsilon)
        fallos = []
        for sid, (tenso, lev) in previos.items():
            s = self.sets[sid]
            tolerancia = self.tau_rel * (1 + s.member_count())
            if s.lev + 1 <= pw.top and weight_at_level(s, s.lev + 1, pw) >= s.cost:
                fallos.append(f"conjunto {sid}: ω(s, lev+1) ≥ c_s en lev={s.lev}")
            if tenso and s.omega + s.phi < s.static.threshold - tolerancia:
                fallos.append(f"conjunto {sid}: era tenso y quedó flojo")
            if not tenso and d >= umbral_d and s.lev != lev:
                fallos.append(f"conjunto {sid}: flojo subió de {lev} a {s.lev} con d={d}")
        if fallos:
            logger.error(f"fix_level({e.elem_id}) violó su post-contrato: {'; '.join(fallos)}")
            raise InternalInvariantError(f"Post-contrato de fix_level violado para el elemento {e.elem_id}")

    def _subir_activos(self, s: SetState, k: int):
        """Sube de k a k+1 los elementos de A_k(s); los demás conjuntos compensan con φ."""
        caida = self.powers.drop(k)
        for eid in list(s.active_at(k)):
            e2 = self.elements[eid]
            for sid2 in e2.members:
                s2 = self._vigente(sid2)
                s2.discard_member(eid, k, True)
                s2.add_member(eid, k + 1, True)
                self._sumar_omega(s2, -caida)
                if sid2 != s.set_id:
                    self._fijar_phi(s2, s2.phi + caida)
            e2.ilev = k + 1
            e2.zlev = k + 1
            self.index.sync_element(e2)

    def _activar_pasivos(self, s: SetState, j: int):
        """Activa los elementos de P_j(s): pasan a A_j en todos sus conjuntos."""
        for eid in list(s.passive_at(j)):
            e2 = self.elements[eid]
            for sid2 in e2.members:
                s2 = self.sets[sid2]
                s2.discard_member(eid, j, False)
                s2.add_member(eid, j, True)
            e2.active = True
            e2.rebuild_hits = 0
            self.index.move_element_zlev(e2, j)
            self.stats.activated_elements += 1

    # ========================================================================
    # PRIMITIVAS DE ESTADO
    # ========================================================================

    def _vigente(self, sid: int) -> SetState:
        """Conjunto con la puesta a cero implícita ya materializada."""
        s = self.sets[sid]
        self.index.effective_set_state(s)
        return s

    def _fijar_nivel(self, s: SetState, lev: int):
        self.index.move_set(s, lev)

    def _fijar_phi(self, s: SetState, phi: float):
        self.index.set_phi(s, phi)

    def _sumar_omega(self, s: SetState, delta: float):
        s.omega += delta
        s.writes += 1
        if s.writes >= self.refresh_writes:
            self._refresh_due.add(s.set_id)
        self.index.sync_set(s)

    def _mover_elemento(self, e: ElementState, ilev: int, activo: bool):
        """Cambia la cubeta y el peso de e en todos sus conjuntos."""
        pw = self.powers
        delta = pw[ilev] - pw[e.ilev]
        for sid in e.members:
            s = self._vigente(sid)
            s.discard_member(e.elem_id, e.ilev, e.active)
            s.add_member(e.elem_id, ilev, activo)
            if delta:
                self._sumar_omega(s, delta)
        if activo and not e.active:
            self.stats.activated_elements += 1
            e.rebuild_hits = 0
        e.ilev = ilev
        e.active = activo

    def _resumar(self, s: SetState):
        pw = self.powers
        s.omega = math.fsum(
            len(cubeta) * pw[i]
            for cubetas in (s.buckets_active, s.buckets_passive)
            for i, cubeta in cubetas.items()
        )
        s.writes = 0
        self.index.sync_set(s)

    def _refrescar_pesos(self):
        for sid in self._refresh_due:
            self._resumar(self.sets[sid])
            self.stats.refreshes += 1
        self._refresh_due.clear()

    def _delta_cobertura(self) -> CoverDelta:
        entraron, salieron = [], []
        for sid, antes in self.index.cover_changes().items():
            ahora = self.index.registered_tight(sid)
            if ahora and not antes:
                entraron.append(sid)
            elif antes and not ahora:
                salieron.append(sid)
        return CoverDelta(entered=tuple(sorted(entraron)), left=tuple(sorted(salieron)))
