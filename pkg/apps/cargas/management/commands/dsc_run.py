from django.core.management.base import BaseCommand, CommandError

from apps.cargas.management.commands._comun import (
    EXIT_FALLO,
    MODOS,
    cargar_traza,
    ejecutar,
    escribir,
    logger,
    reporte_json,
    semilla,
)
from apps.cargas.services.ejecucion_service import NIVELES
from apps.nucleo.conf import dsc_setting


class Command(BaseCommand):
    help = 'Ejecuta una traza y emite el informe JSON (costo final, |T|, estadísticas)'

    def add_arguments(self, parser):
        parser.add_argument('--trace', required=True, help='Archivo de traza')
        parser.add_argument('--mode', choices=MODOS, default='det')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--check-level', choices=NIVELES, default=None,
                            help='none | fast | full (por defecto DSC["CHECK_LEVEL"])')
        parser.add_argument('--out', default=None, help='Archivo de salida del informe (por defecto stdout)')

    def handle(self, *args, **options):
        nivel = options['check_level'] or dsc_setting('CHECK_LEVEL')
        traza = cargar_traza(options['trace'])

        resultado = ejecutar(
            traza, mode=options['mode'], seed=semilla(options['seed']), check_level=nivel,
        )
        escribir(reporte_json(resultado.report) + "\n", options['out'], self.stdout)

        if not resultado.ok:
            raise CommandError(f"Verificación fallida: {resultado.failure}", returncode=EXIT_FALLO)

        logger.info(f"dsc_run {options['trace']}: OK")
        if options['out']:
            self.stdout.write(self.style.SUCCESS(f"✅ Informe escrito en {options['out']}"))
