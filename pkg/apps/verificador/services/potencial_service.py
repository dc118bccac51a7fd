# apps/verificador/services/potencial_service.py
"""
Contable de potenciales (diagnóstico).

    Φ_up      = Σ_s max{ω(s) − c_s, 0} · α_{lev(s)}
    Φ_down    = Σ_s φ(s) · β_{lev(s)}
    Φ_lift    = Σ_s (L − max{lev(s), base(s)})
    Φ_passive = f · #elementos pasivos
    Φ_clean   = (1/ε² + log₂C/ε) · #conjuntos con φ(s) ≠ 0

    α_i = 2f(3/ε³ + log₂C/ε²)(1+ε)^{i+1}
    β_i = (2/ε²)(1+ε)^{i+1}

Se calculan desde cero y sin escribir en el motor (peek_set_state).
"""

import logging
import math
from dataclasses import dataclass, asdict

from apps.nucleo.conf import dsc_setting

logger = logging.getLogger("verificador")


@dataclass(frozen=True)
class PotentialSnapshot:
    phi_up: float
    phi_down: float
    phi_lift: float
    phi_passive: float
    phi_clean: float

    @property
    def total(self) -> float:
        return math.fsum((self.phi_up, self.phi_down, self.phi_lift, self.phi_passive, self.phi_clean))

    @property
    def non_negative(self) -> bool:
        return min(self.phi_up, self.phi_down, self.phi_lift, self.phi_passive, self.phi_clean) >= 0

    def to_dict(self) -> dict:
        return {**asdict(self), "total": self.total}


class PotencialService:
    @staticmethod
    def alpha(i: int, epsilon: float, cost_ratio: int, max_frequency: int) -> float:
        return (
            2 * max_frequency
            * (3 / epsilon**3 + math.log2(cost_ratio) / epsilon**2)
            * (1 + epsilon) ** (i + 1)
        )

    @staticmethod
    def beta(i: int, epsilon: float) -> float:
        return (2 / epsilon**2) * (1 + epsilon) ** (i + 1)

    @staticmethod
    def clean_unit(epsilon: float, cost_ratio: int) -> float:
        return 1 / epsilon**2 + math.log2(cost_ratio) / epsilon

    @staticmethod
    def potentials(engine) -> PotentialSnapshot:
        cfg = engine.config
        eps = cfg.epsilon
        L = engine.powers.levels
        idx = engine.index

        up, down = [], []
        lift = 0
        con_phi = 0
        for s in engine.sets.values():
            lev, phi = idx.peek_set_state(s)
            if s.omega > s.cost:
                up.append((s.omega - s.cost) * PotencialService.alpha(lev, eps, cfg.cost_ratio, cfg.max_frequency))
            if phi != 0.0:
                con_phi += 1
                down.append(phi * PotencialService.beta(lev, eps))
            lift += L - max(lev, s.static.base)

        pasivos = sum(1 for e in engine.elements.values() if not e.active)

        return PotentialSnapshot(
            phi_up=math.fsum(up),
            phi_down=math.fsum(down),
            phi_lift=float(lift),
            phi_passive=float(cfg.max_frequency * pasivos),
            phi_clean=PotencialService.clean_unit(eps, cfg.cost_ratio) * con_phi,
        )

    @staticmethod
    def deletion_bound(epsilon: float, cost_ratio: int, max_frequency: int) -> float:
        """f·(2(1+ε)/ε² + 1/ε² + log₂C/ε)."""
        return max_frequency * (2 * (1 + epsilon) / epsilon**2 + PotencialService.clean_unit(epsilon, cost_ratio))

    @staticmethod
    def deletion_potential_bound_check(
        before: PotentialSnapshot,
        after: PotentialSnapshot,
        epsilon: float,
        cost_ratio: int,
        max_frequency: int,
    ) -> bool:
        """
        Comprueba los hechos de signo y la cota de ΔΦ_down + ΔΦ_clean para un
        delete_element aislado (sin las reconstrucciones que le siguen).
        """
        tau_abs = dsc_setting("TAU_ABS")
        tau_rel = dsc_setting("TAU_REL")
        holgura = tau_abs + tau_rel * max(before.phi_down, after.phi_down)

        fallos = []
        if after.phi_up - before.phi_up > holgura:
            fallos.append(f"ΔΦ_up={after.phi_up - before.phi_up}")
        if after.phi_lift != before.phi_lift:
            fallos.append(f"ΔΦ_lift={after.phi_lift - before.phi_lift}")
        if after.phi_passive > before.phi_passive:
            fallos.append(f"ΔΦ_passive={after.phi_passive - before.phi_passive}")

        incremento = (after.phi_down - before.phi_down) + (after.phi_clean - before.phi_clean)
        cota = PotencialService.deletion_bound(epsilon, cost_ratio, max_frequency)
        if incremento > cota + holgura:
            fallos.append(f"ΔΦ_down+ΔΦ_clean={incremento} > {cota}")

        if fallos:
            logger.warning(f"Cota de potencial del borrado violada: {'; '.join(fallos)}")
            return False
        return True


class DeletionPotentialProbe:
    """
    Gancho para apply_update: toma la instantánea previa antes de aplicar un
    Delete y compara con la posterior al borrado, antes de reconstruir.

        sonda = DeletionPotentialProbe(engine)
        sonda.antes()
        engine.apply_update(Delete(e), on_dispatched=sonda)
    """

    def __init__(self, engine):
        self.engine = engine
        self._previa = None
        self.violations = 0
        self.checked = 0

    def antes(self):
        self._previa = PotencialService.potentials(self.engine)

    def __call__(self, engine):
        if self._previa is None:
            return
        cfg = engine.config
        posterior = PotencialService.potentials(engine)
        self.checked += 1
        if not PotencialService.deletion_potential_bound_check(
            self._previa, posterior, cfg.epsilon, cfg.cost_ratio, cfg.max_frequency
        ):
            self.violations += 1
        self._previa = None
