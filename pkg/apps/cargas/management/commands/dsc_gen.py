from django.core.management.base import BaseCommand, CommandError

from apps.cargas.management.commands._comun import EXIT_USO, escribir, logger
from apps.cargas.serializers import OpcionesGeneradorSerializer
from apps.cargas.serializers.write import KINDS
from apps.cargas.services import GeneradorService, TrazaService


class Command(BaseCommand):
    help = 'Genera una traza de carga (random, window o churn) determinada por la semilla'

    def add_arguments(self, parser):
        parser.add_argument('--kind', choices=KINDS, required=True)
        parser.add_argument('--sets', type=int, required=True)
        parser.add_argument('--freq', type=int, required=True)
        parser.add_argument('--updates', type=int, required=True)
        parser.add_argument('--epsilon', default='0.2')
        parser.add_argument('--cost-ratio', type=int, default=1)
        parser.add_argument('--capacity', type=int, required=True)
        parser.add_argument('--window', type=int, default=None, help='Solo para --kind window (por defecto la capacidad)')
        parser.add_argument('--fixed-frequency', action='store_true', help='Cada alta pertenece exactamente a f conjuntos')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--out', default=None)

    def handle(self, *args, **options):
        serializer = OpcionesGeneradorSerializer(data={
            'kind': options['kind'],
            'sets': options['sets'],
            'freq': options['freq'],
            'updates': options['updates'],
            'epsilon': options['epsilon'],
            'cost_ratio': options['cost_ratio'],
            'capacity': options['capacity'],
            'window': options['window'],
            'seed': options['seed'],
            'fixed_frequency': options['fixed_frequency'],
        })
        if not serializer.is_valid():
            raise CommandError(f"Opciones inválidas: {dict(serializer.errors)}", returncode=EXIT_USO)

        datos = serializer.validated_data
        traza = GeneradorService.gen_workload(datos['kind'], datos)
        escribir(TrazaService.render_trace(traza), options['out'], self.stdout)

        logger.info(f"dsc_gen {datos['kind']}: {len(traza.updates)} actualizaciones")
        if options['out']:
            self.stdout.write(self.style.SUCCESS(
                f"✅ Traza {datos['kind']} con {len(traza.updates)} actualizaciones → {options['out']}"
            ))
