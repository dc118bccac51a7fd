from .auditoria_service import AuditoriaService, AuditReport
from .oraculo_service import Aproximacion, OraculoService
from .potencial_service import DeletionPotentialProbe, PotencialService, PotentialSnapshot

__all__ = [
    "AuditoriaService",
    "AuditReport",
    "Aproximacion",
    "OraculoService",
    "DeletionPotentialProbe",
    "PotencialService",
    "PotentialSnapshot",
]
