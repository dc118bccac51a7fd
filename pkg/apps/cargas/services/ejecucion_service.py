# apps/cargas/services/ejecucion_service.py
"""
Ejecución de una traza sobre el motor con auditorías opcionales.

Niveles de verificación:
    none → solo se aplica la traza.
    fast → auditoría cada FAST_AUDIT_EVERY actualizaciones, tras cada
           actualización que reconstruyó y al final.
    full → auditoría tras cada actualización, potenciales no negativos, cota
           de potencial de cada borrado, contratos internos activos y
           comprobación de aproximación mientras haya ≤ APPROX_CHECK_CAP
           conjuntos ocupados.

La ejecución se detiene en el primer fallo.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from apps.cargas.services.traza_service import UpdateTrace
from apps.motor.actualizaciones import Delete
from apps.motor.services import DynamicSetCoverEngine
from apps.nucleo.conf import dsc_setting
from apps.verificador.exceptions import TooLargeError
from apps.verificador.services import (
    AuditoriaService,
    DeletionPotentialProbe,
    OraculoService,
    PotencialService,
)

logger = logging.getLogger("cargas")

NIVELES = ("none", "fast", "full")


@dataclass
class ResultadoEjecucion:
    engine: DynamicSetCoverEngine
    report: dict
    failure: Optional[str] = None
    n_live_max: int = 0
    audits: int = 0

    @property
    def ok(self) -> bool:
        return self.failure is None


def _ocupados(engine) -> int:
    return sum(1 for s in engine.sets.values() if not s.is_empty())


class EjecucionService:
    @staticmethod
    def run_trace(
        traza: UpdateTrace,
        mode: str = "det",
        seed: int = 0,
        check_level: str = "none",
    ) -> ResultadoEjecucion:
        if check_level not in NIVELES:
            raise ValueError(f"Nivel de verificación desconocido: {check_level}")

        full = check_level == "full"
        config = traza.params.to_config(
            deterministic=mode == "det",
            rng_seed=seed,
            check_contracts=full or dsc_setting("CONTRACTS"),
        )
        engine = DynamicSetCoverEngine(config, traza.costs)
        resultado = ResultadoEjecucion(engine=engine, report={})

        cada = dsc_setting("FAST_AUDIT_EVERY")
        tope_aprox = dsc_setting("APPROX_CHECK_CAP")
        sonda = DeletionPotentialProbe(engine) if full else None
        ultimo_reporte = None
        ratios = []

        for paso, u in enumerate(traza.updates, start=1):
            reconstrucciones = engine.stats.rebuild_count
            if sonda is not None and isinstance(u, Delete):
                sonda.antes()
            engine.apply_update(u, on_dispatched=sonda)
            resultado.n_live_max = max(resultado.n_live_max, engine.live_count)

            if check_level == "none":
                continue
            if not full and paso % cada and engine.stats.rebuild_count == reconstrucciones:
                continue

            ultimo_reporte = AuditoriaService.audit(engine)
            resultado.audits += 1
            fallo = _fallo_de_auditoria(ultimo_reporte)

            if full and not fallo:
                if not PotencialService.potentials(engine).non_negative:
                    fallo = "potencial negativo"
                elif sonda.violations:
                    fallo = "cota de potencial del borrado"
                elif engine.elements and _ocupados(engine) <= tope_aprox:
                    aprox = OraculoService.approximation_check(engine)
                    ratios.append(aprox.ratio)
                    if not aprox.ratio_ok:
                        fallo = f"razón {aprox.ratio:.4f} > {aprox.bound:.4f}"
                    elif not aprox.dual_ok(config.epsilon, dsc_setting("TAU_ABS")):
                        fallo = "ω(𝒰) > (1+ε)·OPT"

            if fallo:
                resultado.failure = f"actualización {paso}: {fallo}"
                logger.warning(f"Ejecución detenida en la actualización {paso}: {fallo}")
                break

        if check_level != "none" and resultado.ok:
            ultimo_reporte = AuditoriaService.audit(engine)
            resultado.audits += 1
            fallo = _fallo_de_auditoria(ultimo_reporte)
            if fallo:
                resultado.failure = f"estado final: {fallo}"

        if full and resultado.ok and engine.elements:
            try:
                final = OraculoService.approximation_check(engine)
                ultimo_reporte.ratio = final.ratio
                if not final.ratio_ok:
                    resultado.failure = f"estado final: razón {final.ratio:.4f} > {final.bound:.4f}"
            except TooLargeError:
                pass

        resultado.report = _armar_reporte(traza, mode, seed, check_level, resultado, ultimo_reporte, sonda, ratios)
        logger.info(
            f"Traza ejecutada: modo={mode} actualizaciones={engine.stats.updates} "
            f"c(T)={resultado.report['final_cover_cost']:.6f} auditorías={resultado.audits} "
            f"{'OK' if resultado.ok else 'FALLO'}"
        )
        return resultado


def _fallo_de_auditoria(reporte) -> Optional[str]:
    if reporte.ok:
        return None
    return "auditoría: " + ", ".join(k for k, v in reporte.fallos.items() if v)


def _armar_reporte(traza, mode, seed, check_level, resultado, reporte_auditoria, sonda, ratios) -> dict:
    engine = resultado.engine
    reporte = {
        "params": {
            **traza.params.to_dict(),
            "mode": mode,
            "seed": seed,
            "check_level": check_level,
            "sets": len(traza.sets),
            "updates": len(traza.updates),
        },
        "stats": engine.stats_snapshot(),
        "final_cover_cost": engine.query_cover_cost(),
        "tight_set_count": len(engine.query_cover()),
    }
    if reporte_auditoria is not None:
        auditoria = reporte_auditoria.to_dict()
        auditoria["audits_run"] = resultado.audits
        auditoria["failure"] = resultado.failure
        if sonda is not None:
            auditoria["deletion_checks"] = sonda.checked
            auditoria["deletion_violations"] = sonda.violations
        if ratios:
            auditoria["max_snapshot_ratio"] = max(ratios)
        reporte["audit"] = auditoria
        if reporte_auditoria.ratio is not None:
            reporte["ratio"] = reporte_auditoria.ratio
    return reporte
