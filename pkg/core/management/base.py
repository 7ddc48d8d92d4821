"""
Base comum dos comandos: opções de saída, montagem do RunConfig e
códigos de saída (0 sucesso, 1 falha de verificação, 2 erro de execução).
"""
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, TextIO

from django.core.management.base import BaseCommand, CommandError

from core.config import RunConfig, parse_float_list, parse_r_range
from core.exceptions import ConfigError
from core.serializers import render_json

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_ERROR = 2


class Spin7Command(BaseCommand):
    """Comando com RunConfig; subclasses implementam run(config, options)"""

    command_name = ''

    def add_arguments(self, parser):
        parser.add_argument(
            '--config',
            type=str,
            help='Arquivo de configuração com linhas chave = valor'
        )
        parser.add_argument(
            '--output',
            dest='output_path',
            type=str,
            help='Arquivo CSV de saída (padrão: saída padrão)'
        )
        parser.add_argument(
            '--format',
            choices=['csv', 'json'],
            help='csv: dados na saída padrão; json: relatório na saída padrão'
        )
        parser.add_argument(
            '--plot-script',
            type=str,
            help='Grava um script gnuplot para o CSV de --output'
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def add_grid_arguments(self, parser):
        parser.add_argument('--alpha', type=float, help='Um único valor de alpha')
        parser.add_argument('--alpha-grid', type=parse_float_list, help='Lista de alphas separados por vírgula')
        parser.add_argument('--threads', type=int, help='Máximo de threads (padrão: SPIN7_THREADS)')

    def add_r_range_argument(self, parser):
        parser.add_argument('--r-range', type=parse_r_range, help='min,max,amostras,linear|log')

    def add_integration_arguments(self, parser):
        parser.add_argument('--rel-tol', type=float, help='Tolerância relativa do integrador')
        parser.add_argument('--epsilon', type=float, help='Afastamento da semente em t = 0')
        parser.add_argument('--t-end', type=float, help='Tempo final')

    # ------------------------------------------------------------------

    def handle(self, *args, **options):
        try:
            config = RunConfig.build(self.command_name, options)
            if options.get('plot_script') and not config.output_path:
                raise ConfigError('--plot-script exige --output')
        except ConfigError as e:
            self.fail(str(e), EXIT_ERROR)
        self.run(config, options)

    def run(self, config: RunConfig, options: Dict[str, Any]):
        raise NotImplementedError

    def fail(self, message: str, code: int):
        logger.error(message)
        raise CommandError(message, returncode=code)

    @contextmanager
    def csv_stream(self, config: RunConfig) -> Iterator[Optional[TextIO]]:
        """Destino do CSV: --output, ou a saída padrão no formato csv, ou nenhum"""
        if config.output_path:
            with open(config.output_path, 'w', encoding='utf-8', newline='') as stream:
                yield stream
            self.stderr.write(self.style.SUCCESS(f'✓ CSV gravado em {config.output_path}'))
        elif config.format == 'csv':
            yield self.stdout
        else:
            yield None

    def emit_json(self, data):
        self.stdout.write(render_json(data))
