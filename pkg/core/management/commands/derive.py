from django.core.management.base import BaseCommand, CommandError

from core.management.base import EXIT_ERROR, EXIT_FAILURE
from core.serializers import OdeSystemSerializer, render_json
from structures.derivation import derive_ode, dphi_components_text
from structures.exceptions import SingularSystem
from structures.reference import reference_bc_equal_system, reference_system


class Command(BaseCommand):
    help = 'Deriva o sistema de EDOs a partir de dPhi = 0'

    def add_arguments(self, parser):
        parser.add_argument(
            '--check',
            action='store_true',
            help='Sai com 0 sse o sistema derivado coincide com o de referência'
        )
        parser.add_argument(
            '--bc-equal',
            action='store_true',
            help='Especializa para B = C'
        )
        parser.add_argument(
            '--show-dphi',
            action='store_true',
            help='Mostra as componentes não nulas de dPhi antes de resolver'
        )
        parser.add_argument(
            '--format',
            choices=['text', 'json'],
            default='text',
            help='Formato da saída'
        )

    def handle(self, *args, **options):
        bc_equal = options['bc_equal']

        if options['show_dphi']:
            components = dphi_components_text()
            self.stdout.write(f'dPhi ({len(components)} componentes de grau 5):')
            for line in components:
                self.stdout.write(f'  {line}')
            self.stdout.write('')

        try:
            system = derive_ode(bc_equal=bc_equal)
        except SingularSystem as e:
            raise CommandError(f'Sistema linear degenerado: {e}', returncode=EXIT_ERROR)

        matches = None
        if options['check']:
            reference = reference_bc_equal_system() if bc_equal else reference_system()
            mismatches = system.mismatches(reference)
            matches = not mismatches

        if options['format'] == 'json':
            data = OdeSystemSerializer({'name': system.name, 'system': system, 'matches_reference': matches}).data
            self.stdout.write(render_json(data))
        else:
            self.stdout.write(system.to_text())

        if matches is None:
            return
        if matches:
            self.stderr.write(self.style.SUCCESS('✓ Sistema derivado idêntico ao de referência'))
            return
        for name, difference in mismatches.items():
            self.stderr.write(self.style.ERROR(f'✗ {name}: diferença {difference}'))
        raise CommandError(f'Sistema derivado difere em {", ".join(mismatches)}', returncode=EXIT_FAILURE)
