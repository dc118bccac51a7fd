# apps/niveles/tests/test_indice.py

"""
Tests del índice de niveles: puesta a cero implícita, agregados por nivel,
cadena de niveles no vacíos y búsqueda del prefijo a reconstruir.
"""

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.niveles.services import LevelIndex, TimestampOverflowError
from apps.nucleo.configuracion import U64_MAX
from apps.nucleo.estado import ElementState, SetState, build_set_static
from apps.nucleo.potencias import PowerTable


def _sistema(costos, epsilon=0.5, cost_ratio=1, f=2, capacity=10):
    tabla = PowerTable(epsilon, cost_ratio, f, capacity)
    sets = {
        sid: SetState(static=build_set_static(sid, costo, tabla))
        for sid, costo in enumerate(costos, start=1)
    }
    return tabla, sets, LevelIndex(tabla, sets, f)


# ============================================================================
# PUESTA A CERO IMPLÍCITA
# ============================================================================

class PuestaACeroTest(SimpleTestCase):

    def setUp(self):
        self.tabla, self.sets, self.indice = _sistema([1.0, 1.0, 1.0])

    def test_sistema_recien_creado(self):
        """Test: todo conjunto arranca en (0, 0)"""
        for s in self.sets.values():
            self.assertEqual(self.indice.effective_set_state(s), (0, 0.0))

    def test_escritura_posterior_se_conserva(self):
        """Test: tm > aux[lev] devuelve lo almacenado"""
        s = self.sets[1]
        self.indice.move_set(s, 5)
        self.indice.set_phi(s, 0.2)
        self.assertEqual(self.indice.effective_set_state(s), (5, 0.2))

    def test_marca_anterior_a_la_puesta_a_cero(self):
        """Test: tm=3, aux=10 con (5, 0.2) almacenado → (0, 0)"""
        s = self.sets[1]
        self.indice.move_set(s, 5)
        self.indice.set_phi(s, 0.2)
        s.tm = 3
        self.indice.clock.now = 10
        self.indice.clock.aux[5] = 10
        self.assertEqual(self.indice.effective_set_state(s), (0, 0.0))
        self.assertEqual((s.lev, s.phi), (0, 0.0))
        self.assertIn(1, self.indice.sets_at(0))

    def test_idempotente(self):
        s = self.sets[2]
        self.indice.move_set(s, 3)
        self.indice.implicit_zero_levels(0, 3)
        primero = self.indice.effective_set_state(s)
        tm = s.tm
        self.assertEqual(self.indice.effective_set_state(s), primero)
        self.assertEqual(s.tm, tm)

    def test_cero_en_rango(self):
        """Test: dos conjuntos en nivel 2 con φ 0.1 y 0.3, cero [0,2]"""
        a, b, c = self.sets[1], self.sets[2], self.sets[3]
        for s, phi in ((a, 0.1), (b, 0.3)):
            self.indice.move_set(s, 2)
            self.indice.set_phi(s, phi)
        self.indice.move_set(c, 5)
        self.indice.set_phi(c, 0.4)

        self.indice.implicit_zero_levels(0, 2)

        self.assertEqual(self.indice.peek_set_state(a), (0, 0.0))
        self.assertEqual(self.indice.peek_set_state(b), (0, 0.0))
        self.assertEqual(sum(self.indice.phi_i[:3]), 0.0)
        # fuera del rango no cambia
        self.assertEqual(self.indice.peek_set_state(c), (5, 0.4))

        self.indice.settle()
        self.assertEqual(self.indice.sets_at(0), {1, 2})
        self.assertEqual(self.indice.sets_at(5), {3})

    def test_cero_solo_nivel_cero(self):
        """Test: i_lo = i_hi = 0 limpia φ en el nivel 0"""
        a = self.sets[1]
        self.indice.set_phi(a, 0.5)
        self.indice.implicit_zero_levels(0, 0)
        self.assertEqual(a.phi, 0.0)
        self.assertEqual(self.indice.phi_i[0], 0.0)

    def test_desborde_del_reloj(self):
        self.indice.clock.now = U64_MAX
        with self.assertRaises(TimestampOverflowError):
            self.indice.implicit_zero_levels(0, 0)


# ============================================================================
# AGREGADOS Y CADENA
# ============================================================================

class AgregadosTest(SimpleTestCase):

    def test_mover_a_su_mismo_nivel(self):
        """Test: move_set de i a i no altera agregados"""
        tabla, sets, indice = _sistema([1.0])
        s = sets[1]
        s.omega = 0.9
        indice.sync_set(s)
        antes = list(indice.cost_T_i)
        indice.move_set(s, 0)
        self.assertEqual(indice.cost_T_i, antes)

    def test_mover_conjunto_tenso(self):
        """Test: conjunto tenso c=0.5 del nivel 2 al 3"""
        tabla, sets, indice = _sistema([0.5], cost_ratio=2)
        s = sets[1]
        s.omega = 0.5
        indice.move_set(s, 2)
        self.assertEqual(indice.cost_T_i[2], 0.5)
        indice.move_set(s, 3)
        self.assertEqual(indice.cost_T_i[2], 0.0)
        self.assertEqual(indice.cost_T_i[3], 0.5)
        self.assertEqual(indice.tight_at(3), {1})

    def test_mover_elemento(self):
        """Test: elemento con ω=0.25 de zlev 0 a 4"""
        tabla, sets, indice = _sistema([1.0], epsilon=1.0)
        e = ElementState(1, (1,), zlev=0, ilev=2)
        indice.sync_element(e)
        self.assertEqual(indice.omega_E_i[0], 0.25)
        indice.move_element_zlev(e, 4)
        self.assertEqual(indice.omega_E_i[0], 0.0)
        self.assertEqual(indice.omega_E_i[4], 0.25)
        self.assertEqual(indice.linked_levels(), [4])

        indice.remove_element(1)
        self.assertEqual(indice.linked_levels(), [])

    def test_cadena_ordenada_con_huecos(self):
        """Test: enlazar fuera de orden deja la cadena ordenada y con prev coherente"""
        tabla, sets, indice = _sistema([1.0], epsilon=0.5, capacity=10**4)
        lo, hi = indice.low_cutoff + 1, indice.niveles - 1
        self.assertGreaterEqual(hi - lo, 4)
        orden = [hi, lo, (lo + hi) // 2, lo + 1]
        for eid, nivel in enumerate(orden, start=1):
            indice.sync_element(ElementState(eid, (1,), zlev=nivel, ilev=hi))

        esperados = sorted(set(orden))
        self.assertEqual(indice.linked_levels(), esperados)
        previos = [indice.low_cutoff] + esperados[:-1]
        self.assertEqual([indice._prev[i] for i in esperados], previos)

        indice.remove_element(3)
        esperados.remove((lo + hi) // 2)
        self.assertEqual(indice.linked_levels(), esperados)
        self.assertEqual(indice._prev[hi], esperados[-2])

    def test_cambios_de_tension(self):
        """Test: el registro de cambios guarda la tensión inicial"""
        tabla, sets, indice = _sistema([1.0])
        s = sets[1]
        s.omega = 0.9
        indice.sync_set(s)
        s.omega = 0.95
        indice.sync_set(s)
        self.assertEqual(indice.cover_changes(), {1: False})
        indice.reset_cover_changes()
        self.assertEqual(indice.cover_changes(), {})


# ============================================================================
# find_rebuild_k
# ============================================================================

class FindRebuildKTest(SimpleTestCase):

    def setUp(self):
        self.tabla, self.sets, self.indice = _sistema([1.0, 1.0])
        e = ElementState(1, (1,), zlev=0, ilev=6)
        self.indice.sync_element(e)

    def test_sin_peso_muerto(self):
        self.assertIsNone(self.indice.find_rebuild_k())

    def test_viola_en_nivel_cero(self):
        """Test: 0.9 > 0.5·(1 + 2·ω(e)) → k=0"""
        self.indice.set_phi(self.sets[1], 0.9)
        self.assertEqual(self.indice.find_rebuild_k(), 0)

    def test_viola_en_nivel_uno(self):
        """Test: el prefijo ≤ 0 cumple, el prefijo ≤ 1 no"""
        s1 = self.sets[1]
        s1.omega = 0.2
        self.indice.sync_set(s1)
        self.indice.set_phi(self.sets[1], 0.5)
        s2 = self.sets[2]
        self.indice.move_set(s2, 1)
        self.indice.set_phi(s2, 0.7)
        self.assertEqual(self.indice.find_rebuild_k(), 1)


# ============================================================================
# PROPIEDADES
# ============================================================================

_OPERACION = st.tuples(
    st.sampled_from(["lev", "phi", "omega", "zero", "elem"]),
    st.integers(min_value=0, max_value=7),
    st.integers(min_value=0, max_value=7),
    st.integers(min_value=0, max_value=8),
)


def _fuerza_bruta(indice, tabla, sets, elementos, epsilon, f):
    phi = costo = omega = 0.0
    for i in range(indice.niveles):
        for s in sets.values():
            lev, ph = indice.peek_set_state(s)
            if lev != i:
                continue
            phi += ph
            if s.omega + ph >= s.static.threshold:
                costo += s.cost
        for e in elementos:
            if e.zlev == i:
                omega += tabla[e.ilev]
        if phi > epsilon * (costo + f * omega):
            return i
    return None


class IndicePropiedadesTest(SimpleTestCase):

    # ε=1 deja todas las cantidades en fracciones diádicas: sumas exactas
    @settings(max_examples=150, deadline=None)
    @given(st.lists(_OPERACION, max_size=40))
    def test_coincide_con_recalculo(self, operaciones):
        """Test: agregados, cadena y find_rebuild_k contra recálculo completo"""
        tabla, sets, indice = _sistema([1.0, 0.5, 1.0, 0.5], epsilon=1.0, cost_ratio=2, capacity=4)
        elementos = [ElementState(i, (1,), zlev=0, ilev=0) for i in range(3)]
        for e in elementos:
            indice.sync_element(e)

        for tipo, a, b, x in operaciones:
            s = sets[1 + a % len(sets)]
            # por encima de low_cutoff un conjunto con φ > 0 siempre es tenso
            if tipo == "lev":
                indice.effective_set_state(s)
                if b > indice.low_cutoff and s.phi > 0:
                    s.omega = max(s.omega, s.cost)
                indice.move_set(s, b)
            elif tipo == "phi":
                indice.effective_set_state(s)
                if s.lev > indice.low_cutoff and x > 0:
                    s.omega = max(s.omega, s.cost)
                indice.set_phi(s, x / 8)
            elif tipo == "omega":
                indice.effective_set_state(s)
                valor = x / 8
                if s.lev > indice.low_cutoff and s.phi > 0:
                    valor = max(valor, s.cost)
                s.omega = valor
                indice.sync_set(s)
            elif tipo == "zero":
                indice.implicit_zero_levels(min(a, b), max(a, b))
            else:
                e = elementos[a % len(elementos)]
                e.ilev = b
                indice.move_element_zlev(e, x % indice.niveles)

        indice.settle()

        for i in range(indice.niveles):
            en_nivel = [s for s in sets.values() if s.lev == i]
            self.assertEqual(indice.sets_at(i), {s.set_id for s in en_nivel})
            self.assertEqual(indice.phi_i[i], sum(s.phi for s in en_nivel))
            tensos = [s for s in en_nivel if s.omega + s.phi >= s.static.threshold]
            self.assertEqual(indice.tight_at(i), {s.set_id for s in tensos})
            self.assertEqual(indice.cost_T_i[i], sum(s.cost for s in tensos))
            self.assertEqual(
                indice.omega_E_i[i],
                sum(tabla[e.ilev] for e in elementos if e.zlev == i),
            )

        esperados = [
            i for i in range(indice.low_cutoff + 1, indice.niveles)
            if indice.tight_at(i) or indice.elements_at(i)
        ]
        self.assertEqual(indice.linked_levels(), esperados)
        self.assertEqual(
            indice.find_rebuild_k(),
            _fuerza_bruta(indice, tabla, sets, elementos, 1.0, 2),
        )
