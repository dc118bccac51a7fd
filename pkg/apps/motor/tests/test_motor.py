# apps/motor/tests/test_motor.py

"""
Tests del motor: validación de actualizaciones, Delete, Insert, FixLevel,
DecILev, WaterFilling, reconstrucción completa y tabla del logaritmo iterado.

Los escenarios pequeños se construyen a mano sobre el estado interno del
motor; los recorridos largos pasan por apply_update.
"""

from unittest import mock

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.motor.actualizaciones import Delete, Insert
from apps.motor.estadisticas import RebuildScratch
from apps.motor.exceptions import (
    CapacityExceededError,
    DuplicateElementError,
    FrequencyExceededError,
    InvalidMembershipError,
    UnknownElementError,
    UnknownSetError,
)
from apps.motor.services import DynamicSetCoverEngine, IteratedLogTable
from apps.nucleo.configuracion import Config
from apps.nucleo.estado import ElementState, is_tight
from apps.nucleo.exceptions import InternalInvariantError
from apps.nucleo.potencias import PowerTable


def _motor(costos, epsilon=0.5, cost_ratio=1, f=2, capacity=10, **extra):
    config = Config(epsilon=epsilon, cost_ratio=cost_ratio, max_frequency=f, capacity=capacity, **extra)
    return DynamicSetCoverEngine(config, {sid: c for sid, c in enumerate(costos, start=1)})


def _colocar(motor, eid, members, ilev, zlev, activo):
    """Da de alta un elemento directamente en las cubetas (sin algoritmo)."""
    e = ElementState(eid, tuple(members), active=activo, zlev=zlev, ilev=ilev)
    motor.elements[eid] = e
    for sid in members:
        s = motor.sets[sid]
        s.add_member(eid, ilev, activo)
        motor._sumar_omega(s, motor.powers[ilev])
    motor.index.sync_element(e)
    return e


# ============================================================================
# VALIDACIÓN
# ============================================================================

class ValidacionTest(SimpleTestCase):

    def setUp(self):
        self.motor = _motor(["1", "1", "1"], f=2, capacity=2)
        self.motor.apply_update(Insert(1, (1,)))

    def _estado(self):
        return (
            sorted(self.motor.elements),
            [(s.lev, s.omega, s.phi) for s in self.motor.sets.values()],
            self.motor.stats.updates,
        )

    def test_errores_no_tocan_el_estado(self):
        """Test: cada actualización inválida falla con su tipo y sin cambios"""
        antes = self._estado()
        casos = [
            (Delete(99), UnknownElementError),
            (Insert(1, (2,)), DuplicateElementError),
            (Insert(2, ()), InvalidMembershipError),
            (Insert(2, (2, 2)), InvalidMembershipError),
            (Insert(2, (7,)), UnknownSetError),
            (Insert(2, (1, 2, 3)), FrequencyExceededError),
        ]
        for u, error in casos:
            with self.subTest(u=u):
                with self.assertRaises(error):
                    self.motor.apply_update(u)
                self.assertEqual(self._estado(), antes)

    def test_capacidad(self):
        self.motor.apply_update(Insert(2, (2,)))
        with self.assertRaises(CapacityExceededError) as ctx:
            self.motor.apply_update(Insert(3, (3,)))
        self.assertEqual(ctx.exception.kind, "CapacityExceeded")
        self.assertEqual(self.motor.live_count, 2)


# ============================================================================
# DELETE
# ============================================================================

class DeleteTest(SimpleTestCase):

    def test_conjunto_tenso_compensa_con_phi(self):
        """Test: e activo ω(e)=0.25 en s tenso (ω=0.9) → ω=0.65, φ=0.25"""
        motor = _motor(["1"], epsilon=1.0, f=1, capacity=4)
        s = motor.sets[1]
        motor._fijar_nivel(s, 2)
        _colocar(motor, 1, (1,), ilev=2, zlev=2, activo=True)
        _colocar(motor, 2, (1,), ilev=4, zlev=2, activo=False)
        s.omega = 0.9
        motor.index.sync_set(s)

        motor.delete_element(1)

        self.assertAlmostEqual(s.omega, 0.65)
        self.assertAlmostEqual(s.phi, 0.25)
        self.assertTrue(is_tight(s))
        self.assertNotIn(1, motor.elements)
        self.assertEqual(s.member_count(), 1)

    def test_conjunto_flojo_no_cambia_phi(self):
        motor = _motor(["1", "1"], epsilon=1.0, f=1, capacity=4)
        s = motor.sets[1]
        _colocar(motor, 1, (1,), ilev=3, zlev=0, activo=False)
        motor.delete_element(1)
        self.assertEqual(s.phi, 0.0)
        self.assertEqual(s.omega, 0.0)

    def test_borrado_del_unico_elemento(self):
        """Test: tras borrar el único elemento, rebuild(0) deja todo en cero"""
        motor = _motor(["1"], f=1, capacity=1)
        motor.apply_update(Insert(1, (1,)))

        delta = motor.apply_update(Delete(1))

        s = motor.sets[1]
        self.assertEqual((s.lev, s.omega, s.phi), (0, 0.0, 0.0))
        self.assertEqual(motor.query_cover(), [])
        self.assertEqual(motor.query_cover_cost(), 0.0)
        self.assertEqual(delta.left, (1,))
        self.assertEqual(motor.stats.rebuild_count, 1)
        self.assertEqual(motor.stats.rebuild_k_histogram[0], 1)


# ============================================================================
# INSERT
# ============================================================================

class InsertTest(SimpleTestCase):

    def test_busqueda_del_nivel_intrinseco(self):
        """Test: zlev=1, l=5, brecha mínima 0.2 → e pasivo con ilev=4"""
        motor = _motor(["1", "1"], f=2, capacity=10)
        s1, s2 = motor.sets[1], motor.sets[2]
        s1.omega = 0.8
        motor.index.sync_set(s1)
        motor._fijar_nivel(s2, 1)
        s2.omega = 0.2
        motor.index.sync_set(s2)

        motor.insert_element(1, (1, 2))

        e = motor.elements[1]
        self.assertEqual(motor.powers.gap_bound, 4)
        self.assertEqual((e.zlev, e.ilev, e.active), (1, 4, False))
        self.assertAlmostEqual(s1.omega, 0.8 + 1.5**-4)
        self.assertAlmostEqual(s1.omega, 0.9975, places=4)
        self.assertEqual(motor.stats.fixlevel_calls, 0)

    def test_primer_elemento_del_sistema(self):
        """Test: singleton c=1 → T = {s} con costo c_s"""
        motor = _motor(["1"], f=1, capacity=1)

        delta = motor.apply_update(Insert(1, (1,)))

        e = motor.elements[1]
        # la desigualdad estricta ω(s) + ω(e) < c_s descarta h=0
        self.assertEqual(e.ilev, 1)
        self.assertEqual(e.status, "Passive")
        self.assertEqual(motor.query_cover(), [1])
        self.assertEqual(motor.query_cover_cost(), 1.0)
        self.assertEqual(delta.entered, (1,))
        self.assertEqual(delta.recourse, 1)

    def test_frontera_invoca_fix_level(self):
        """Test: ω(s) + (1+ε)^{-l} ≥ c_s → fix_level"""
        motor = _motor(["1"], epsilon=1.0, f=1, capacity=4)
        motor.apply_update(Insert(1, (1,)))
        motor.apply_update(Insert(2, (1,)))
        self.assertEqual(motor.stats.fixlevel_calls, 1)


# ============================================================================
# FIX LEVEL
# ============================================================================

class FixLevelTest(SimpleTestCase):

    def setUp(self):
        # ε=1: todos los pesos son potencias de 2 y las sumas son exactas
        self.motor = _motor(["1"], epsilon=1.0, f=1, capacity=4)
        self.motor.apply_update(Insert(1, (1,)))

    def test_una_iteracion_del_bucle(self):
        """Test: s sube de 0 a 1, el pasivo en P_1 se activa y e conserva d=1"""
        self.motor.apply_update(Insert(2, (1,)))

        s = self.motor.sets[1]
        a, e = self.motor.elements[1], self.motor.elements[2]
        self.assertEqual(s.lev, 1)
        self.assertEqual(s.omega, 0.75)
        self.assertEqual(s.phi, 0.0)
        self.assertEqual((a.ilev, a.zlev, a.active), (1, 1, True))
        self.assertEqual((e.ilev, e.zlev, e.active), (2, 1, False))
        self.assertEqual(self.motor.stats.activated_elements, 1)
        # ω(s, lev+1) < c_s
        self.assertLess(s.omega - s.count_active(1) * self.motor.powers.drop(1), s.cost)
        self.assertEqual(self.motor.query_cover(), [1])

    def test_mismo_nivel_no_hace_nada(self):
        """Test: l = ilev_old no cambia nada"""
        e = self.motor.elements[1]
        omega = self.motor.sets[1].omega
        self.motor.fix_level(e, e.ilev)
        self.assertEqual(self.motor.stats.fixlevel_calls, 0)
        self.assertEqual(self.motor.sets[1].omega, omega)


class FixLevelContratoTest(SimpleTestCase):

    def setUp(self):
        # ε=0.5, C=1, f=2 → gap_bound = ⌈log_{1.5} 4⌉ = 4 = ⌈log_{1.5}(2C/ε)⌉
        self.motor = _motor(["1", "1"], epsilon=0.5, f=2, capacity=10, check_contracts=True)
        _colocar(self.motor, 1, (1,), ilev=3, zlev=0, activo=False)

    def test_brecha_grande_no_sube_conjuntos_flojos(self):
        """Test: e pasivo con d = gap_bound y todos sus conjuntos flojos → niveles intactos"""
        motor = self.motor
        self.assertEqual(motor.powers.gap_bound, 4)
        e = ElementState(2, (1, 2), active=False)
        motor.elements[2] = e

        motor.fix_level(e, e.zlev + motor.powers.gap_bound)

        s1, s2 = motor.sets[1], motor.sets[2]
        self.assertEqual((s1.lev, s2.lev), (0, 0))
        self.assertEqual((e.zlev, e.ilev, e.active), (0, 4, False))
        self.assertAlmostEqual(s1.omega, 1.5**-3 + 1.5**-4)
        self.assertAlmostEqual(s2.omega, 1.5**-4)
        self.assertEqual((s1.phi, s2.phi), (0.0, 0.0))
        self.assertEqual(motor.stats.fixlevel_calls, 1)
        self.assertEqual(motor.stats.activated_elements, 0)

    def test_detecta_conjunto_tenso_que_queda_flojo(self):
        """Test: un conjunto que era tenso y ya no lo es rompe el post-contrato"""
        e = self.motor.elements[1]
        with self.assertRaises(InternalInvariantError):
            self.motor._verificar_fix_level(e, {1: (True, 0)}, 0)

    def test_detecta_conjunto_flojo_elevado(self):
        e = self.motor.elements[1]
        self.motor._fijar_nivel(self.motor.sets[2], 1)
        with self.assertRaises(InternalInvariantError):
            self.motor._verificar_fix_level(e, {2: (False, 0)}, 4)


# ============================================================================
# DEC ILEV / HANDLE DET
# ============================================================================

class DecILevTest(SimpleTestCase):

    def setUp(self):
        self.motor = _motor(["1"], f=1, capacity=10)
        self.motor._scratch = RebuildScratch(k=1)

    def test_busqueda_de_h(self):
        """Test: ω − ω(e) = 0.7, k+1 = 2 → h = 3"""
        e = _colocar(self.motor, 1, (1,), ilev=5, zlev=0, activo=False)
        s = self.motor.sets[1]
        s.omega = 0.7 + self.motor.powers[5]
        self.motor.index.sync_set(s)

        self.motor.dec_ilev(e)

        self.assertEqual(e.ilev, 3)
        self.assertAlmostEqual(s.omega, 0.7 + 1.5**-3)
        self.assertEqual(s.lev, 2)
        self.assertEqual((e.zlev, e.active), (2, False))
        self.assertEqual(self.motor._scratch.E_prime, [])

    def test_todos_flojos_activa_en_k_mas_uno(self):
        """Test: sin conjunto tenso e queda activo en k+1 y entra en E′"""
        e = _colocar(self.motor, 1, (1,), ilev=5, zlev=0, activo=False)
        s = self.motor.sets[1]

        self.motor.dec_ilev(e)

        self.assertEqual((e.ilev, e.zlev, e.active), (2, 2, True))
        self.assertEqual(s.lev, 2)
        self.assertAlmostEqual(s.omega, 1.5**-2)
        self.assertEqual(self.motor._scratch.E_prime, [e])
        self.assertIn(1, self.motor._scratch.S)

    def test_handle_det_con_miembro_tenso(self):
        """Test: miembro tenso en nivel 0 → sube a k+1 y zlev(e) = k+1"""
        e = _colocar(self.motor, 1, (1,), ilev=5, zlev=0, activo=False)
        s = self.motor.sets[1]
        s.omega = 0.7
        self.motor.index.sync_set(s)

        self.motor.handle_det(e)

        self.assertEqual(s.lev, 2)
        self.assertEqual((e.ilev, e.zlev), (5, 2))
        self.assertEqual(self.motor.stats.dec_ilev_calls, 0)


# ============================================================================
# WATER FILLING
# ============================================================================

class WaterFillingTest(SimpleTestCase):

    def setUp(self):
        self.motor = _motor(["1", "1"], f=2, capacity=4, check_contracts=True)

    def test_sin_entradas(self):
        self.motor.water_filling(2, {}, [])
        self.assertEqual(self.motor.stats.water_filling_calls, 0)

    def test_un_conjunto_un_elemento(self):
        """Test: c=1, k̂=2 → se congela en el nivel 1 con ω = 1/1.5"""
        s = self.motor.sets[1]
        self.motor._fijar_nivel(s, 2)
        e = _colocar(self.motor, 1, (1,), ilev=2, zlev=2, activo=True)

        self.motor.water_filling(2, {1: None}, [e])

        self.assertEqual(s.lev, 1)
        self.assertEqual((e.ilev, e.zlev, e.active), (1, 1, True))
        self.assertAlmostEqual(s.omega, 1 / 1.5)
        self.assertTrue(is_tight(s))
        self.assertEqual(self.motor.stats.water_filling_calls, 1)

    def test_conjunto_sin_flotantes_cae_a_cero(self):
        """Test: e compartido se congela con el primer conjunto; el otro cae a 0"""
        for sid in (1, 2):
            self.motor._fijar_nivel(self.motor.sets[sid], 2)
        e = _colocar(self.motor, 1, (1, 2), ilev=2, zlev=2, activo=True)

        self.motor.water_filling(2, {1: None, 2: None}, [e])

        niveles = sorted(s.lev for s in self.motor.sets.values())
        self.assertEqual(niveles, [0, 1])
        self.assertEqual((e.ilev, e.zlev), (1, 1))
        for s in self.motor.sets.values():
            self.assertLess(s.omega, s.cost)
            self.assertEqual(s.phi, 0.0)


# ============================================================================
# HANDLE RAND
# ============================================================================

class HandleRandTest(SimpleTestCase):
    """
    ε=1, C=1, f=3 (> 2C/ε) y piso de muestreo 0.5: con k=0 y brecha 1 se usa
    η=0. Sin rondas de muestreo se decide siempre por F̂.
    """

    def setUp(self):
        self.motor = _motor(
            ["1", "1", "1"], epsilon=1.0, f=3, capacity=10,
            deterministic=False, rng_seed=3, sampling_gap_floor=0.5,
        )
        self.motor._scratch = RebuildScratch(k=0)
        self.e = _colocar(self.motor, 1, (1, 2, 3), ilev=2, zlev=0, activo=False)
        for sid in (1, 2):
            s = self.motor.sets[sid]
            s.omega = 0.95
            self.motor.index.sync_set(s)

    def _handle(self, delta, iterado=None):
        parches = [
            mock.patch.object(IteratedLogTable, "sample_budget", return_value=0),
            mock.patch.object(IteratedLogTable, "probe_weight", return_value=delta),
        ]
        if iterado is not None:
            parches.append(mock.patch.object(IteratedLogTable, "iterate", return_value=iterado))
        for p in parches:
            p.start()
        try:
            self.motor.handle_rand(self.e)
        finally:
            for p in parches:
                p.stop()

    def test_fhat_pequeno_sube_los_tensos(self):
        """Test: |F̂| = 2 ≤ it[0]² = 9 → los dos tensos suben a 1 y zlev(e) = 1"""
        self._handle(0.35)

        stats = self.motor.stats
        self.assertEqual((stats.fhat_small, stats.fhat_large, stats.fhat_empty), (1, 0, 0))
        self.assertEqual([self.motor.sets[sid].lev for sid in (1, 2, 3)], [1, 1, 0])
        self.assertEqual((self.e.ilev, self.e.zlev, self.e.active), (2, 1, False))
        self.assertEqual(stats.eta_histogram[0], 1)
        self.assertEqual(self.motor._eta_previo[1], (0, True))

    def test_fhat_grande_sube_solo_el_primero(self):
        """Test: |F̂| = 2 > it² = 1 → sólo el primer testigo sube"""
        self._handle(0.35, iterado=1.0)

        stats = self.motor.stats
        self.assertEqual((stats.fhat_small, stats.fhat_large, stats.fhat_empty), (0, 1, 0))
        self.assertEqual([self.motor.sets[sid].lev for sid in (1, 2, 3)], [1, 0, 0])
        self.assertEqual(self.e.zlev, 1)
        self.assertEqual(self.motor._eta_previo[1], (0, False))

    def test_fhat_vacio_llama_a_dec_ilev(self):
        """Test: δ = 0 → ningún testigo, dec_ilev deja ilev en 2 y zlev en 1"""
        self._handle(0.0)

        stats = self.motor.stats
        self.assertEqual((stats.fhat_small, stats.fhat_large, stats.fhat_empty), (0, 0, 1))
        self.assertEqual(stats.dec_ilev_calls, 1)
        self.assertEqual((self.e.ilev, self.e.zlev, self.e.active), (2, 1, False))
        self.assertEqual(stats.rand_routed_det, 0)
        self.assertEqual(self.motor._eta_previo[1], (0, True))

    def test_borrado_olvida_eta(self):
        self._handle(0.35)
        self.motor._scratch = None
        self.motor.delete_element(1)
        self.assertNotIn(1, self.motor._eta_previo)


class EtaMonotonoTest(SimpleTestCase):
    """f=1024, ε=0.5: it = 1024, 85.48, 54.85, ... y 1 + 2·log_{1.5}(4) ≈ 7.84"""

    def setUp(self):
        self.motor = _motor(["1"], epsilon=0.5, f=1)
        self.motor.iterlog = IteratedLogTable(PowerTable(0.5, 1, 1024, 10**8), 1024, 1)
        self.e = _colocar(self.motor, 1, (1,), ilev=3, zlev=0, activo=False)

    def test_eta_que_baja_es_un_fallo(self):
        self.motor._eta_previo[1] = (2, False)
        with self.assertRaises(InternalInvariantError):
            self.motor._controlar_eta(self.e, 1, 60)
        self.assertEqual(self.motor.stats.eta_violations, 1)

    def test_tras_fhat_pequeno_debe_subir(self):
        """Test: mismo η tras un F̂ pequeño con brecha 60 → fallo; con brecha 4 no"""
        self.motor._eta_previo[1] = (1, True)
        with self.assertRaises(InternalInvariantError):
            self.motor._controlar_eta(self.e, 1, 60)

        self.motor._controlar_eta(self.e, 1, 4)
        self.motor._controlar_eta(self.e, 2, 60)
        self.assertEqual(self.motor.stats.eta_violations, 1)

    def test_mismo_eta_fuera_de_la_ventana(self):
        self.motor._eta_previo[1] = (1, False)
        self.motor._controlar_eta(self.e, 1, 60)
        self.assertEqual(self.motor.stats.eta_violations, 0)

    def test_sin_contratos_solo_cuenta(self):
        self.motor.check_contracts = False
        self.motor._eta_previo[1] = (2, True)
        self.motor._controlar_eta(self.e, 0, 60)
        self.assertEqual(self.motor.stats.eta_violations, 1)

    def test_ultimo_eta_del_tramo(self):
        tabla = self.motor.iterlog
        self.assertGreaterEqual(tabla.last_eta, 2)
        self.assertLess(tabla.iterate(tabla.last_eta), tabla.iterate(tabla.last_eta - 1))


# ============================================================================
# LOGARITMO ITERADO
# ============================================================================

class IteratedLogTest(SimpleTestCase):

    def setUp(self):
        self.tabla = PowerTable(0.5, 1, 1024, 10**8)
        self.it = IteratedLogTable(self.tabla, 1024, 1)

    def test_iterados(self):
        """Test: f=1024, ε=0.5 → 85.48 y 54.85"""
        self.assertEqual(self.it.iterate(0), 1024.0)
        self.assertAlmostEqual(self.it.iterate(1), 85.48, places=1)
        self.assertAlmostEqual(self.it.iterate(2), 54.85, places=1)

    def test_eta_presupuesto_y_delta(self):
        """Test: brecha 60 → η=1, 600 muestras, δ ≈ 1.872e-8·(1.5)^{-k-1}"""
        self.assertEqual(self.it.eta_for_gap(60), 1)
        self.assertEqual(self.it.sample_budget(1), 600)
        k = 3
        self.assertAlmostEqual(self.it.probe_weight(1, k) / self.tabla[k + 1] * 1e8, 1.872, places=2)
        self.assertEqual(self.it.small_fhat_gap(1), 44)

    def test_brecha_fuera_de_tabla(self):
        self.assertIsNone(self.it.eta_for_gap(-1))
        self.assertIsNone(self.it.eta_for_gap(10**6))


# ============================================================================
# RECORRIDOS ALEATORIOS
# ============================================================================

@st.composite
def trazas(draw, m=6, f=3, capacity=12, largo=60):
    """Secuencias válidas de inserciones y borrados sobre m conjuntos."""
    vivos, siguiente, ops = [], 1, []
    for _ in range(draw(st.integers(min_value=1, max_value=largo))):
        insertar = not vivos or (len(vivos) < capacity and draw(st.booleans()))
        if insertar:
            miembros = draw(st.lists(st.integers(1, m), min_size=1, max_size=f, unique=True))
            ops.append(Insert(siguiente, tuple(miembros)))
            vivos.append(siguiente)
            siguiente += 1
        else:
            eid = vivos.pop(draw(st.integers(0, len(vivos) - 1)))
            ops.append(Delete(eid))
    return ops


class RecorridosTest(SimpleTestCase):

    COSTOS = ["1", "0.5", "0.75", "0.25", "1", "0.6"]

    def _configurado(self, deterministico, semilla):
        if deterministico:
            return _motor(self.COSTOS, epsilon=0.5, cost_ratio=4, f=3, capacity=12, check_contracts=True)
        # f > 2C/ε y un piso bajo para que HandleRand llegue a muestrear
        return _motor(
            ["1"] * 6, epsilon=1.0, cost_ratio=1, f=3, capacity=12,
            deterministic=False, rng_seed=semilla, sampling_gap_floor=0.5, check_contracts=True,
        )

    def _comprobar(self, motor):
        tensos = set(motor.query_cover())
        for e in motor.elements.values():
            self.assertTrue(tensos.intersection(e.members), f"elemento {e.elem_id} sin cubrir")
        for s in motor.sets.values():
            lev, phi = motor.index.peek_set_state(s)
            self.assertLess(s.omega, (1 + motor.powers.epsilon) * s.cost)
            if lev > 0:
                self.assertGreaterEqual(s.omega + phi, s.static.threshold)

    @settings(max_examples=60, deadline=None)
    @given(trazas(), st.booleans())
    def test_cobertura_valida_en_cada_paso(self, ops, deterministico):
        """Test: T cubre el universo y ω(s) < (1+ε)c_s tras cada actualización"""
        motor = self._configurado(deterministico, 7)
        for u in ops:
            motor.apply_update(u)
            self._comprobar(motor)

    @settings(max_examples=20, deadline=None)
    @given(trazas())
    def test_ejecucion_reproducible(self, ops):
        """Test: misma traza y semilla → misma cobertura y contadores"""
        resultados = []
        for _ in range(2):
            motor = self._configurado(False, 11)
            for u in ops:
                motor.apply_update(u)
            stats = motor.stats_snapshot()
            stats.pop("timing")
            resultados.append((motor.query_cover(), stats))
        self.assertEqual(resultados[0], resultados[1])

    @settings(max_examples=40, deadline=None)
    @given(trazas(), st.integers(0, 50))
    def test_rand_sin_muestreo_resuelve_por_fhat(self, ops, semilla):
        """Test: sin rondas de muestreo HandleRand sigue siendo correcto y η no baja"""
        motor = self._configurado(False, semilla)
        with mock.patch.object(IteratedLogTable, "sample_budget", return_value=0):
            for u in ops:
                motor.apply_update(u)
                self._comprobar(motor)
        stats = motor.stats
        self.assertEqual(stats.sample_rounds, 0)
        self.assertEqual(stats.eta_violations, 0)
        self.assertEqual(
            stats.handle_rand_calls - stats.rand_routed_det,
            stats.fhat_small + stats.fhat_large + stats.fhat_empty,
        )
