# apps/verificador/services/auditoria_service.py
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                  AUDITORÍA COMPLETA DE UNA INSTANCIA QUIESCENTE            ║
╚══════════════════════════════════════════════════════════════════════════════╝

Recalcula desde cero, sin escribir nada en el motor (todo pasa por
peek_set_state):

- ω(s) como suma de ω(e) de los elementos vivos y la deriva respecto del
  valor incremental;
- lev(e) = máximo nivel de sus conjuntos;
- los tres apartados del Invariante 1, la validez de la cobertura, el tope
  ω(s) < (1+ε)c_s y la legalidad de cada elemento;
- los registros y agregados del índice de niveles.

Cada comprobación acumula los ids que fallan en AuditReport.fallos.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from apps.nucleo.conf import dsc_setting
from apps.nucleo.estado import weight_at_level

logger = logging.getLogger("verificador")

COMPROBACIONES = (
    "cover",
    "inv1_weight",
    "inv1_tight",
    "inv1_dead_weight",
    "weight_cap",
    "element_legality",
    "buckets",
    "drift",
    "tightness",
    "registry",
)


@dataclass
class AuditReport:
    """
    Resultado de una auditoría.

    fallos[nombre] lista los ids (o descripciones) que violan la comprobación
    `nombre`; una lista vacía es un "pass".
    """

    fallos: Dict[str, List] = field(default_factory=lambda: {c: [] for c in COMPROBACIONES})
    max_drift: float = 0.0
    ratio: Optional[float] = None
    dual_ratio: Optional[float] = None

    @property
    def cover_valid(self) -> bool:
        return not self.fallos["cover"]

    @property
    def ok(self) -> bool:
        return not any(self.fallos.values())

    def fallar(self, nombre: str, detalle):
        self.fallos[nombre].append(detalle)

    def to_dict(self) -> dict:
        datos = {
            "ok": self.ok,
            "cover_valid": self.cover_valid,
            "max_drift": self.max_drift,
            "failures": {k: list(v) for k, v in self.fallos.items() if v},
        }
        if self.ratio is not None:
            datos["ratio"] = self.ratio
        if self.dual_ratio is not None:
            datos["dual_ratio"] = self.dual_ratio
        return datos


class AuditoriaService:
    @staticmethod
    def audit(engine) -> AuditReport:
        """Audita el estado completo de `engine` (debe estar quiescente)."""
        reporte = AuditReport()
        pw = engine.powers
        idx = engine.index
        eps = pw.epsilon
        tau_rel = dsc_setting("TAU_REL")
        tau_abs = dsc_setting("TAU_ABS")

        efectivos = {sid: idx.peek_set_state(s) for sid, s in engine.sets.items()}

        def nivel(sid):
            return efectivos[sid][0]

        # ── Pesos recalculados ──
        omega_rec = defaultdict(list)
        for e in engine.elements.values():
            for sid in e.members:
                omega_rec[sid].append(pw[e.ilev])

        tensos = set()
        for sid, s in engine.sets.items():
            lev, phi = efectivos[sid]
            tam = s.member_count()
            recalculado = math.fsum(omega_rec.get(sid, ()))
            deriva = abs(s.omega - recalculado) / (1 + tam)
            reporte.max_drift = max(reporte.max_drift, deriva)
            if deriva > tau_rel:
                reporte.fallar("drift", sid)
            if s.omega + phi >= s.static.threshold:
                tensos.add(sid)
            if abs(recalculado + phi - s.static.threshold) > tau_rel * (1 + tam) and (
                (recalculado + phi >= s.static.threshold) != (sid in tensos)
            ):
                reporte.fallar("tightness", sid)
            if s.omega >= (1 + eps) * s.cost:
                reporte.fallar("weight_cap", sid)

        # ── Legalidad de elementos y cubetas ──
        omega_universo = 0.0
        for eid, e in engine.elements.items():
            omega_universo += pw[e.ilev]
            lev_e = max(nivel(sid) for sid in e.members)
            if e.active:
                legal = e.ilev == e.zlev == lev_e
            else:
                legal = e.zlev <= lev_e < e.ilev <= e.zlev + pw.gap_bound
            if not legal:
                reporte.fallar("element_legality", eid)

            for sid in e.members:
                s = engine.sets[sid]
                cubeta = s.active_at(e.ilev) if e.active else s.passive_at(e.ilev)
                if eid not in cubeta:
                    reporte.fallar("buckets", (sid, eid))

            if not tensos.intersection(e.members):
                reporte.fallar("cover", eid)

        for sid, s in engine.sets.items():
            if s.member_count() != len(omega_rec.get(sid, ())):
                reporte.fallar("buckets", (sid, None))

        # ── Invariante 1 ──
        def vista(s):
            for eid, ilev, _activo in s.iter_members():
                e = engine.elements[eid]
                otros = [nivel(o) for o in e.members if o != s.set_id]
                yield pw[ilev], max(otros, default=0)

        phi_total = 0.0
        costo_T = 0.0
        for sid, s in engine.sets.items():
            lev, phi = efectivos[sid]
            phi_total += phi
            if sid in tensos:
                costo_T += s.cost
            tolerancia = tau_rel * (1 + s.member_count())
            if lev + 1 <= pw.top and weight_at_level(s, lev + 1, pw, vista) >= s.cost + tolerancia:
                reporte.fallar("inv1_weight", sid)
            if lev >= 1 and sid not in tensos:
                reporte.fallar("inv1_tight", sid)

        f = engine.config.max_frequency
        if phi_total > eps * (costo_T + f * omega_universo) + tau_abs:
            reporte.fallar("inv1_dead_weight", round(phi_total, 12))
        if omega_universo > 0:
            reporte.dual_ratio = costo_T / (omega_universo / (1 + eps))

        _auditar_registros(engine, efectivos, tensos, reporte, tau_rel)

        if not reporte.ok:
            logger.warning(
                f"Auditoría con fallos: "
                f"{ {k: len(v) for k, v in reporte.fallos.items() if v} }"
            )
        return reporte


def _auditar_registros(engine, efectivos, tensos, reporte: AuditReport, tau_rel: float):
    """Compara S_i, T_i, E_i, sus agregados y la cadena con el recálculo."""
    idx = engine.index
    pw = engine.powers

    sets_por_nivel = defaultdict(set)
    for sid, (lev, _phi) in efectivos.items():
        sets_por_nivel[lev].add(sid)
    elems_por_nivel = defaultdict(set)
    for eid, e in engine.elements.items():
        elems_por_nivel[e.zlev].add(eid)

    for i in range(idx.niveles):
        en_nivel = sets_por_nivel.get(i, set())
        tensos_i = en_nivel & tensos
        elems_i = elems_por_nivel.get(i, set())

        if idx.sets_at(i) != en_nivel:
            reporte.fallar("registry", f"S_{i}")
        if idx.tight_at(i) != tensos_i:
            reporte.fallar("registry", f"T_{i}")
        if idx.elements_at(i) != elems_i:
            reporte.fallar("registry", f"E_{i}")

        esperado = (
            ("phi", idx.phi_i[i], math.fsum(efectivos[sid][1] for sid in en_nivel), len(en_nivel)),
            ("cost_T", idx.cost_T_i[i], math.fsum(engine.sets[sid].cost for sid in tensos_i), len(tensos_i)),
            ("omega_E", idx.omega_E_i[i], math.fsum(pw[engine.elements[eid].ilev] for eid in elems_i), len(elems_i)),
        )
        for nombre, valor, recalculado, n in esperado:
            if abs(valor - recalculado) > tau_rel * (1 + n):
                reporte.fallar("registry", f"{nombre}_{i}")

    enlazados = [
        i for i in range(idx.low_cutoff + 1, idx.niveles)
        if (sets_por_nivel.get(i, set()) & tensos) or elems_por_nivel.get(i)
    ]
    if idx.linked_levels() != enlazados:
        reporte.fallar("registry", "chain")
