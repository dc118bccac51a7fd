# apps/cargas/services/traza_service.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                       FORMATO DE TRAZA (texto, por líneas)                 ║
╚══════════════════════════════════════════════════════════════════════════════╝

    DSC 1
    params epsilon=0.2 C=4 f=8 capacity=200
    set 1 0.75
    set 2 0.5
    begin
    + 1 1 2
    - 1
    end

Las líneas que empiezan con # y las vacías se ignoran. La carga valida la
traza completa (conjuntos declarados, elementos vivos, f y capacidad) con
diagnósticos que citan el número de línea.
"""

import logging
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Dict, List, Tuple, Union

from apps.cargas.exceptions import TraceSyntaxError, TraceValidationError
from apps.cargas.serializers import ParametrosTrazaSerializer
from apps.motor.actualizaciones import Delete, Insert, Update
from apps.nucleo.configuracion import Config, parse_cost
from apps.nucleo.exceptions import CostoFueraDeRangoError

logger = logging.getLogger("cargas")

VERSION = 1


@dataclass(frozen=True)
class TraceParams:
    epsilon: Decimal
    cost_ratio: int
    max_frequency: int
    capacity: int

    def to_config(self, **extra) -> Config:
        return Config(
            epsilon=float(self.epsilon),
            cost_ratio=self.cost_ratio,
            max_frequency=self.max_frequency,
            capacity=self.capacity,
            **extra,
        )

    def to_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "C": self.cost_ratio,
            "f": self.max_frequency,
            "capacity": self.capacity,
        }


@dataclass
class UpdateTrace:
    params: TraceParams
    # {set_id: costo decimal}, en orden de declaración
    sets: Dict[int, Decimal] = field(default_factory=dict)
    updates: List[Update] = field(default_factory=list)
    version: int = VERSION

    @property
    def costs(self) -> Dict[int, str]:
        return {sid: str(c) for sid, c in self.sets.items()}


# ============================================================================
# PARSE
# ============================================================================


def _entero(texto: str, n: int, que: str) -> int:
    try:
        valor = int(texto)
    except ValueError:
        raise TraceSyntaxError(n, f"{que} no es un entero: {texto!r}")
    if valor < 0:
        raise TraceSyntaxError(n, f"{que} negativo: {valor}")
    return valor


def _lineas(texto: str):
    for n, cruda in enumerate(texto.splitlines(), start=1):
        linea = cruda.strip()
        if linea and not linea.startswith("#"):
            yield n, linea.split()


def _parsear_params(tokens: List[str], n: int) -> TraceParams:
    if tokens[0] != "params":
        raise TraceSyntaxError(n, f"se esperaba 'params', se encontró {tokens[0]!r}")
    crudos = {}
    for token in tokens[1:]:
        clave, sep, valor = token.partition("=")
        if not sep:
            raise TraceSyntaxError(n, f"parámetro mal formado: {token!r}")
        crudos[clave] = valor

    serializer = ParametrosTrazaSerializer(data=crudos)
    if not serializer.is_valid():
        raise TraceValidationError("BadParams", n, str(dict(serializer.errors)))
    datos = serializer.validated_data
    return TraceParams(
        epsilon=Decimal(crudos["epsilon"]),
        cost_ratio=datos["C"],
        max_frequency=datos["f"],
        capacity=datos["capacity"],
    )


def _validar_insercion(eid: int, miembros: Tuple[int, ...], vivos: set, traza: UpdateTrace, n: int):
    """Mismo orden de comprobaciones que DynamicSetCoverEngine.apply_update."""
    p = traza.params
    if eid in vivos:
        raise TraceValidationError("DuplicateElement", n, f"el elemento {eid} ya está vivo")
    if not miembros:
        raise TraceValidationError("InvalidMembership", n, "lista de conjuntos vacía")
    if len(set(miembros)) != len(miembros):
        raise TraceValidationError("InvalidMembership", n, "conjuntos repetidos")
    for sid in miembros:
        if sid not in traza.sets:
            raise TraceValidationError("UnknownSet", n, f"el conjunto {sid} no está declarado")
    if len(miembros) > p.max_frequency:
        raise TraceValidationError(
            "FrequencyExceeded", n, f"{len(miembros)} conjuntos, máximo f={p.max_frequency}"
        )
    if len(vivos) >= p.capacity:
        raise TraceValidationError("CapacityExceeded", n, f"capacidad N={p.capacity} alcanzada")


class TrazaService:
    """Lectura, validación y escritura de trazas DSC 1."""

    @staticmethod
    def render_trace(trace: UpdateTrace) -> str:
        p = trace.params
        lineas = [
            f"DSC {trace.version}",
            f"params epsilon={p.epsilon} C={p.cost_ratio} f={p.max_frequency} capacity={p.capacity}",
        ]
        lineas += [f"set {sid} {costo}" for sid, costo in trace.sets.items()]
        lineas.append("begin")
        for u in trace.updates:
            if isinstance(u, Insert):
                lineas.append(f"+ {u.elem} " + " ".join(str(s) for s in u.members))
            else:
                lineas.append(f"- {u.elem}")
        lineas.append("end")
        return "\n".join(lineas) + "\n"

    @staticmethod
    def parse_trace(texto: str) -> UpdateTrace:
        """
        Parsea y valida una traza completa.

        Raises:
            TraceSyntaxError: línea mal formada o secciones fuera de orden
            TraceValidationError: traza bien formada que viola una precondición
        """
        lineas = _lineas(texto)
        ultima = 0

        def siguiente(que: str) -> Tuple[int, List[str]]:
            nonlocal ultima
            try:
                n, tokens = next(lineas)
            except StopIteration:
                raise TraceSyntaxError(ultima + 1, f"fin de archivo inesperado, falta {que}")
            ultima = n
            return n, tokens

        # ── Cabecera ──
        n, tokens = siguiente("la cabecera 'DSC 1'")
        if len(tokens) != 2 or tokens[0] != "DSC":
            raise TraceSyntaxError(n, "la primera línea debe ser 'DSC <versión>'")
        version = _entero(tokens[1], n, "versión")
        if version != VERSION:
            raise TraceValidationError("UnsupportedVersion", n, f"versión {version} no soportada")

        n, tokens = siguiente("la línea 'params'")
        traza = UpdateTrace(params=_parsear_params(tokens, n), version=version)
        p = traza.params

        # ── Conjuntos ──
        while True:
            n, tokens = siguiente("'begin'")
            if tokens == ["begin"]:
                break
            if tokens[0] != "set" or len(tokens) != 3:
                raise TraceSyntaxError(n, "se esperaba 'set <id> <costo>' o 'begin'")
            sid = _entero(tokens[1], n, "id de conjunto")
            if sid in traza.sets:
                raise TraceValidationError("DuplicateSet", n, f"conjunto {sid} declarado dos veces")
            try:
                costo = Decimal(tokens[2])
                parse_cost(sid, costo, p.cost_ratio)
            except (InvalidOperation, CostoFueraDeRangoError):
                raise TraceValidationError("BadCost", n, f"costo {tokens[2]!r} fuera de [1/C, 1]")
            traza.sets[sid] = costo

        # ── Actualizaciones ──
        vivos = set()
        while True:
            n, tokens = siguiente("'end'")
            if tokens == ["end"]:
                break
            if tokens[0] == "-" and len(tokens) == 2:
                eid = _entero(tokens[1], n, "id de elemento")
                if eid not in vivos:
                    raise TraceValidationError("UnknownElement", n, f"el elemento {eid} no está vivo")
                vivos.discard(eid)
                traza.updates.append(Delete(eid))
            elif tokens[0] == "+" and len(tokens) >= 2:
                eid = _entero(tokens[1], n, "id de elemento")
                miembros = tuple(_entero(t, n, "id de conjunto") for t in tokens[2:])
                _validar_insercion(eid, miembros, vivos, traza, n)
                vivos.add(eid)
                traza.updates.append(Insert(eid, miembros))
            else:
                raise TraceSyntaxError(n, f"actualización mal formada: {' '.join(tokens)!r}")

        try:
            n, tokens = next(lineas)
        except StopIteration:
            return traza
        raise TraceSyntaxError(n, "contenido después de 'end'")

    @staticmethod
    def load_trace(ruta: Union[str, Path]) -> UpdateTrace:
        """
        Lee y parsea una traza; los OSError se propagan al llamador.

        Raises:
            TraceSyntaxError: también si el archivo no es UTF-8 válido
        """
        crudo = Path(ruta).read_bytes()
        try:
            texto = crudo.decode("utf-8")
        except UnicodeDecodeError as exc:
            linea = crudo.count(b"\n", 0, exc.start) + 1
            raise TraceSyntaxError(linea, f"UTF-8 inválido en el byte {exc.start}")
        traza = TrazaService.parse_trace(texto)
        logger.info(f"Traza {ruta}: {len(traza.sets)} conjuntos, {len(traza.updates)} actualizaciones")
        return traza

    @staticmethod
    def save_trace(traza: UpdateTrace, ruta: Union[str, Path]):
        Path(ruta).write_text(TrazaService.render_trace(traza), encoding="utf-8")
