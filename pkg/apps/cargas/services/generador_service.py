# apps/cargas/services/generador_service.py
"""
Generadores de cargas de trabajo deterministas (todo sale de la semilla).

- random: altas i.i.d. con listas de miembros distintas de tamaño ≤ f,
          intercaladas con bajas de un elemento vivo uniforme.
- window: flujo de altas con baja FIFO; el universo vivo oscila en W.
- churn:  fases que llenan hasta la capacidad y luego borran en masa los
          elementos de nivel más bajo según un motor det que sigue la traza.
"""

import logging
import math
import random
from collections import deque
from decimal import Decimal
from typing import Dict, List

from apps.cargas.services.traza_service import TraceParams, UpdateTrace
from apps.motor.actualizaciones import Delete, Insert
from apps.motor.services import DynamicSetCoverEngine

logger = logging.getLogger("cargas")

ESCALA_COSTO = 10**6


class _Vivos:
    """Arreglo con borrado por intercambio: muestreo uniforme y baja en O(1)."""

    def __init__(self):
        self._items: List[int] = []
        self._pos: Dict[int, int] = {}

    def __len__(self):
        return len(self._items)

    def add(self, eid: int):
        self._pos[eid] = len(self._items)
        self._items.append(eid)

    def pop_random(self, rng: random.Random) -> int:
        i = rng.randrange(len(self._items))
        eid = self._items[i]
        ultimo = self._items.pop()
        if ultimo != eid:
            self._items[i] = ultimo
            self._pos[ultimo] = i
        del self._pos[eid]
        return eid


class _Generador:
    def __init__(self, opciones: dict):
        self.m = opciones["sets"]
        self.f = opciones["freq"]
        self.total = opciones["updates"]
        self.capacity = opciones["capacity"]
        self.fija = opciones.get("fixed_frequency", False)
        self.rng = random.Random(opciones.get("seed", 0))

        C = opciones.get("cost_ratio", 1)
        self.traza = UpdateTrace(
            params=TraceParams(
                epsilon=Decimal(str(opciones.get("epsilon", "0.2"))).normalize(),
                cost_ratio=C,
                max_frequency=self.f,
                capacity=self.capacity,
            )
        )
        minimo = math.ceil(ESCALA_COSTO / C)
        for sid in range(1, self.m + 1):
            costo = Decimal(self.rng.randint(minimo, ESCALA_COSTO)) / ESCALA_COSTO
            self.traza.sets[sid] = costo.normalize()

        self._siguiente = 1

    @property
    def lleno(self) -> bool:
        return len(self.traza.updates) >= self.total

    def alta(self) -> int:
        tam = self.f if self.fija else self.rng.randint(1, self.f)
        miembros = tuple(sorted(self.rng.sample(range(1, self.m + 1), tam)))
        eid = self._siguiente
        self._siguiente += 1
        self.traza.updates.append(Insert(eid, miembros))
        return eid

    def baja(self, eid: int):
        self.traza.updates.append(Delete(eid))


def _random(g: _Generador):
    vivos = _Vivos()
    while not g.lleno:
        if len(vivos) == 0 or (len(vivos) < g.capacity and g.rng.random() < 0.5):
            vivos.add(g.alta())
        else:
            g.baja(vivos.pop_random(g.rng))


def _window(g: _Generador, ventana: int):
    cola = deque()
    while not g.lleno:
        if len(cola) < ventana:
            cola.append(g.alta())
        else:
            g.baja(cola.popleft())


def _churn(g: _Generador):
    """
    Llena hasta la capacidad y borra la mitad de los vivos con menor zlev en
    un motor det que sigue la traza; los empates se rompen al azar.
    """
    config = g.traza.params.to_config(deterministic=True, check_contracts=False)
    motor = DynamicSetCoverEngine(config, g.traza.costs)
    while not g.lleno:
        while motor.live_count < g.capacity and not g.lleno:
            g.alta()
            motor.apply_update(g.traza.updates[-1])

        vivos = sorted(motor.elements)
        g.rng.shuffle(vivos)
        vivos.sort(key=lambda eid: motor.elements[eid].zlev)
        for eid in vivos[: max(1, len(vivos) // 2)]:
            if g.lleno:
                break
            g.baja(eid)
            motor.apply_update(g.traza.updates[-1])


class GeneradorService:
    @staticmethod
    def gen_workload(kind: str, opciones: dict, seed: int = None) -> UpdateTrace:
        """
        Args:
            kind: "random", "window" o "churn"
            opciones: datos validados por OpcionesGeneradorSerializer
            seed: reemplaza opciones["seed"] si se indica
        """
        if seed is not None:
            opciones = {**opciones, "seed": seed}
        g = _Generador(opciones)

        if kind == "random":
            _random(g)
        elif kind == "window":
            _window(g, opciones.get("window") or g.capacity)
        elif kind == "churn":
            _churn(g)
        else:
            raise ValueError(f"Tipo de carga desconocido: {kind}")

        logger.debug(f"gen_workload({kind}): {len(g.traza.updates)} actualizaciones, m={g.m}, f={g.f}")
        return g.traza
