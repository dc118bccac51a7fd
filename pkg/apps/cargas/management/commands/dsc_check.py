from django.core.management.base import BaseCommand, CommandError

from apps.cargas.management.commands._comun import (
    EXIT_FALLO,
    MODOS,
    cargar_traza,
    ejecutar,
    logger,
    semilla,
)


class Command(BaseCommand):
    help = 'Ejecuta una traza con verificación completa; sale con 1 ante cualquier fallo'

    def add_arguments(self, parser):
        parser.add_argument('--trace', required=True)
        parser.add_argument('--mode', choices=MODOS, default='det')
        parser.add_argument('--seed', type=int, default=0)

    def handle(self, *args, **options):
        traza = cargar_traza(options['trace'])
        resultado = ejecutar(traza, mode=options['mode'], seed=semilla(options['seed']), check_level='full')
        reporte = resultado.report

        if not resultado.ok:
            raise CommandError(f"❌ {resultado.failure}", returncode=EXIT_FALLO)

        auditoria = reporte['audit']
        linea = (
            f"✅ {reporte['params']['updates']} actualizaciones, "
            f"{auditoria['audits_run']} auditorías, "
            f"borrados verificados={auditoria.get('deletion_checks', 0)}, "
            f"c(T)={reporte['final_cover_cost']:.6f}, |T|={reporte['tight_set_count']}"
        )
        if 'ratio' in reporte:
            linea += f", razón={reporte['ratio']:.4f}"
        self.stdout.write(self.style.SUCCESS(linea))
        logger.info(f"dsc_check {options['trace']} ({options['mode']}): OK")
