# apps/motor/services/reconstruccion.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                 RECONSTRUCCIÓN DEL PREFIJO DE NIVELES ≤ k                  ║
╚══════════════════════════════════════════════════════════════════════════════╝

rebuild(k) elimina el peso muerto de los niveles [0, k]:

  1. Parte E_{≤k} en limpios E (ilev ≤ k+1 o activos) y sucios D (pasivos con
     ilev > k+1) y pone a cero implícitamente los niveles [0, k].
  2. Limpios: suben a k+1 como activos junto con todos sus conjuntos (→ S).
  3. Sucios: handle_det o handle_rand, que reducen la brecha ilev − zlev.
  4. Post-proceso: Ê = elementos de E ∪ E′ sin conjunto tenso; los conjuntos
     flojos de S bajan a 0; Ê y Ŝ se llevan a k̂ y se llama a water_filling.

Mixin de DynamicSetCoverEngine: usa sus primitivas (_vigente, _fijar_nivel,
_fijar_phi, _sumar_omega, _mover_elemento, fix_level).
"""

import logging
import time
from itertools import chain

from apps.motor.estadisticas import RebuildScratch
from apps.nucleo.estado import ElementState, is_tight
from apps.nucleo.exceptions import InternalInvariantError

logger = logging.getLogger("motor")


class ReconstruccionMixin:

    # ========================================================================
    # REBUILD
    # ========================================================================

    def rebuild(self, k: int):
        inicio = time.perf_counter_ns()
        self.stats.record_rebuild(k)
        tmp = RebuildScratch(k=k)
        self._scratch = tmp

        for i in range(k + 1):
            for eid in sorted(self.index.elements_at(i)):
                e = self.elements[eid]
                if not e.active and e.ilev > k + 1:
                    tmp.D.append(e)
                else:
                    tmp.E.append(e)

        self.index.implicit_zero_levels(0, k)

        # ── Elementos limpios ──
        for e in tmp.E:
            for sid in e.members:
                s = self._vigente(sid)
                if s.lev < k + 1:
                    self._fijar_nivel(s, k + 1)
                tmp.touch(sid)
            self._mover_elemento(e, k + 1, True)
            self.index.move_element_zlev(e, k + 1)

        # ── Elementos sucios ──
        for e in tmp.D:
            if e.active:
                continue
            brecha_previa = e.ilev - e.zlev
            e.rebuild_hits += 1
            self.stats.dirty_processed += 1

            if self.config.deterministic:
                self.handle_det(e)
                if e.ilev - e.zlev >= brecha_previa:
                    self.stats.gap_violations += 1
            else:
                self.handle_rand(e)

            if e.rebuild_hits > self.powers.gap_bound:
                self.stats.gap_violations += 1

        self._postprocesar(tmp)
        self.index.settle()
        self._scratch = None

        logger.debug(
            f"rebuild(k={k}): limpios={len(tmp.E)} sucios={len(tmp.D)} "
            f"E'={len(tmp.E_prime)} Ê={len(tmp.E_hat)} k̂={tmp.k_hat}"
        )
        self.stats.add_time("rebuild", time.perf_counter_ns() - inicio)

    def _postprocesar(self, tmp: RebuildScratch):
        k = tmp.k
        vistos = set()
        for e in chain(tmp.E, tmp.E_prime):
            if e.elem_id in vistos or e.elem_id not in self.elements:
                continue
            vistos.add(e.elem_id)
            if e.zlev == k + 1 and not self._cubierto(e):
                tmp.E_hat.append(e)

        for sid in tmp.S:
            s = self._vigente(sid)
            if s.lev > 0 and not is_tight(s):
                self._fijar_nivel(s, 0)

        if not tmp.E_hat:
            return

        for e in tmp.E_hat:
            for sid in e.members:
                tmp.S_hat[sid] = None

        eps = self.powers.epsilon
        tmp.k_hat = min(k + 1, self.powers.ceil_log(2 * self.config.cost_ratio * len(tmp.E_hat) / eps))

        for sid in tmp.S_hat:
            s = self._vigente(sid)
            if s.phi != 0.0:
                self._fijar_phi(s, 0.0)
            self._fijar_nivel(s, tmp.k_hat)
        for e in tmp.E_hat:
            self._mover_elemento(e, tmp.k_hat, True)
            self.index.move_element_zlev(e, tmp.k_hat)

        self.water_filling(tmp.k_hat, tmp.S_hat, tmp.E_hat)

    def _cubierto(self, e: ElementState) -> bool:
        return any(is_tight(self._vigente(sid)) for sid in e.members)

    def _elevar(self, sid: int, k: int) -> int:
        """lev(s) ← max{k+1, lev(s)}; devuelve el nivel resultante."""
        s = self._vigente(sid)
        if s.lev < k + 1:
            self._fijar_nivel(s, k + 1)
        return s.lev

    def _asentar_zlev(self, e: ElementState, zlev: int):
        """Fija zlev(e); si alcanza ilev(e) el elemento pasa a activo."""
        if not e.active and zlev == e.ilev:
            self._mover_elemento(e, e.ilev, True)
        self.index.move_element_zlev(e, zlev)

    def _nivel_de_elemento(self, e: ElementState) -> int:
        return max(self._vigente(sid).lev for sid in e.members)

    # ========================================================================
    # HANDLE DET / DEC ILEV
    # ========================================================================

    def handle_det(self, e: ElementState):
        """Si hay un conjunto tenso s ∋ e lo sube a ≥ k+1 y fija zlev(e); si no, dec_ilev."""
        self.stats.handle_det_calls += 1
        k = self._scratch.k
        for sid in e.members:
            if is_tight(self._vigente(sid)):
                self._asentar_zlev(e, self._elevar(sid, k))
                return
        self.dec_ilev(e)

    def dec_ilev(self, e: ElementState):
        """
        Baja ilev(e) todo lo posible sin que ningún s ∋ e alcance c_s, con
        piso l = max{k+1, lev(e)}. Si ningún miembro queda tenso, e entra en
        E′ y sus conjuntos suben a k+1.
        """
        self.stats.dec_ilev_calls += 1
        tmp = self._scratch
        k = tmp.k
        pw = self.powers

        miembros = [self._vigente(sid) for sid in e.members]
        piso = max(k + 1, max(s.lev for s in miembros))
        peso = pw[e.ilev]
        holgura = min(s.cost - (s.omega - peso) for s in miembros)
        h = pw.first_below(holgura, piso, e.ilev)
        if h is None:
            h = e.ilev

        delta = pw[h] - peso
        for s in miembros:
            s.discard_member(e.elem_id, e.ilev, e.active)
            if delta:
                self._sumar_omega(s, delta)
        e.ilev = h

        tensos = [s for s in miembros if is_tight(s)]
        if not tensos:
            tmp.E_prime.append(e)
            for s in miembros:
                if s.lev > k + 1:
                    logger.error(f"dec_ilev: conjunto flojo {s.set_id} en nivel {s.lev} > k+1={k + 1}")
                    raise InternalInvariantError(f"Conjunto flojo {s.set_id} por encima de k+1 durante rebuild({k})")
                if s.lev < k + 1:
                    self._fijar_nivel(s, k + 1)
                tmp.touch(s.set_id)
            e.zlev = k + 1
        else:
            self._elevar(tensos[0].set_id, k)
            e.zlev = max(s.lev for s in miembros)

        activo = h == e.zlev
        if activo and not e.active:
            self.stats.activated_elements += 1
            e.rebuild_hits = 0
        e.active = activo
        for s in miembros:
            s.add_member(e.elem_id, h, activo)
        self.index.sync_element(e)

    # ========================================================================
    # HANDLE RAND
    # ========================================================================

    def _umbral_muestreo(self) -> float:
        if self.config.sampling_gap_floor is not None:
            return self.config.sampling_gap_floor
        eps = self.powers.epsilon
        return max(200 / eps**2, 1 + 2 * self.powers.log(2 * self.config.cost_ratio / eps))

    def handle_rand(self, e: ElementState):
        """
        Versión aleatorizada: busca un testigo por muestreo uniforme entre los
        conjuntos de e; si falla calcula F̂ y reduce la brecha según su tamaño.
        """
        self.stats.handle_rand_calls += 1
        k = self._scratch.k
        eps = self.powers.epsilon
        brecha = e.ilev - k - 1

        if self.config.max_frequency <= 2 * self.config.cost_ratio / eps or brecha <= self._umbral_muestreo():
            self.stats.rand_routed_det += 1
            self.handle_det(e)
            return

        eta = self.iterlog.eta_for_gap(brecha)
        if eta is None:
            self.stats.rand_routed_det += 1
            self.handle_det(e)
            return

        self._controlar_eta(e, eta, brecha)
        self.stats.eta_histogram[eta] += 1
        delta = self.iterlog.probe_weight(eta, k)
        peso = self.powers[e.ilev]

        def testigo(sid: int) -> bool:
            s = self._vigente(sid)
            return s.omega - peso + delta >= s.cost and is_tight(s)

        # ── Muestreo ──
        for _ in range(self.iterlog.sample_budget(eta)):
            self.stats.sample_rounds += 1
            sid = e.members[self.rng.randrange(len(e.members))]
            if testigo(sid):
                self.stats.sample_hits += 1
                self._eta_previo[e.elem_id] = (eta, False)
                self._asentar_zlev(e, self._elevar(sid, k))
                return

        # ── F̂ explícito ──
        f_hat = [sid for sid in e.members if testigo(sid)]
        it = self.iterlog.iterate(eta)

        if not f_hat:
            self.stats.fhat_empty += 1
            self._eta_previo[e.elem_id] = (eta, True)
            self.dec_ilev(e)
        elif len(f_hat) <= it**2:
            self.stats.fhat_small += 1
            self._eta_previo[e.elem_id] = (eta, True)
            for sid in e.members:
                if is_tight(self._vigente(sid)):
                    self._elevar(sid, k)
            self._asentar_zlev(e, self._nivel_de_elemento(e))
            if not e.active:
                self.fix_level(e, min(e.ilev, e.zlev + self.iterlog.small_fhat_gap(eta)))
            self.index.implicit_zero_levels(0, 0)
        else:
            self.stats.fhat_large += 1
            self._eta_previo[e.elem_id] = (eta, False)
            self._asentar_zlev(e, self._elevar(f_hat[0], k))

    def _controlar_eta(self, e: ElementState, eta: int, brecha: int):
        """
        η de un mismo elemento nunca baja entre dos llamadas a handle_rand y,
        justo después de un F̂ vacío o pequeño, sube estrictamente salvo que η
        ya sea el último del tramo decreciente o la brecha haya caído a
        1 + 2·log_{1+ε}(2C/ε) o menos.
        """
        previo = self._eta_previo.get(e.elem_id)
        if previo is None:
            return
        eta_previo, estricto = previo
        fallo = eta < eta_previo
        if (
            not fallo
            and estricto
            and eta == eta_previo
            and eta_previo < self.iterlog.last_eta
            and brecha > 1 + 2 * self.powers.log(2 * self.config.cost_ratio / self.powers.epsilon)
        ):
            fallo = True
        if not fallo:
            return

        self.stats.eta_violations += 1
        if self.check_contracts:
            logger.error(
                f"handle_rand: η no crece para e={e.elem_id} "
                f"(previo={eta_previo}, actual={eta}, brecha={brecha})"
            )
            raise InternalInvariantError(f"η no monótono para el elemento {e.elem_id}")
