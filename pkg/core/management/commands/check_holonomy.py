from pathlib import Path

from calabi.exceptions import DomainError
from calabi.holonomy import SP2_LABEL, SU4_LABEL, holonomy_evidence
from core.config import RunConfig
from core.management.base import EXIT_ERROR, Spin7Command
from core.parallel import run_parallel
from core.serializers import HolonomyEvidenceSerializer, render_json


class Command(Spin7Command):
    help = 'Evidência de holonomia (Sp(2) ou SU(4)) por alpha, via fechamento das 2-formas de Kähler'
    command_name = 'check_holonomy'

    def add_command_arguments(self, parser):
        self.add_grid_arguments(parser)

    def run(self, config: RunConfig, options):
        alphas = config.alphas()
        try:
            evidence = run_parallel(holonomy_evidence, alphas, config.threads)
        except DomainError as e:
            self.fail(f'Domínio inválido: {e}', EXIT_ERROR)

        data = HolonomyEvidenceSerializer([item.as_dict() for item in evidence], many=True).data
        if config.output_path:
            Path(config.output_path).write_text(render_json(data) + '\n', encoding='utf-8')
            self.stderr.write(self.style.SUCCESS(f'✓ JSON gravado em {config.output_path}'))
        else:
            self.emit_json(data)

        for item in evidence:
            if item.label in (SP2_LABEL, SU4_LABEL):
                self.stderr.write(self.style.SUCCESS(f'✓ alpha = {item.alpha}: {item.label}'))
            else:
                self.stderr.write(self.style.WARNING(f'? alpha = {item.alpha}: {item.label}'))
