from django.core.management.base import BaseCommand, CommandError

from core.exceptions import ConfigError
from core.management.base import EXIT_ERROR, EXIT_FAILURE
from core.serializers import VerificationSerializer, render_json
from core.verification import CheckFactory, VerificationManager


class Command(BaseCommand):
    help = 'Executa as suítes de verificação exata'

    def add_arguments(self, parser):
        parser.add_argument(
            '--suite',
            action='append',
            help=f'Suíte a executar (repetível): {", ".join(CheckFactory.suites())}'
        )
        parser.add_argument(
            '--format',
            choices=['json', 'text'],
            default='json',
            help='json: veredito por suíte na saída padrão'
        )

    def handle(self, *args, **options):
        try:
            manager = VerificationManager(options['suite'])
        except ConfigError as e:
            raise CommandError(str(e), returncode=EXIT_ERROR)

        report = manager.run()

        if options['format'] == 'json':
            self.stdout.write(render_json(VerificationSerializer(report.as_dict()).data))
        else:
            for result in report.results:
                if result.passed:
                    self.stdout.write(self.style.SUCCESS(f'✓ {result.suite}: {result.detail}'))
                else:
                    self.stdout.write(self.style.ERROR(f'✗ {result.suite}: {result.detail}'))

        self.stderr.write('\n' + '=' * 50)
        self.stderr.write('RESUMO DA VERIFICAÇÃO:')
        self.stderr.write(f'Suítes executadas: {len(report.results)}')
        self.stderr.write(f'Falhas: {len(report.failed)}')

        if report.passed:
            self.stderr.write(self.style.SUCCESS('\nTodas as suítes passaram!'))
            return
        for result in report.failed:
            self.stderr.write(self.style.ERROR(f'✗ {result.name}: {result.residual}'))
        names = ', '.join(result.name for result in report.failed)
        raise CommandError(f'Verificação falhou: {names}', returncode=EXIT_FAILURE)
