import logging

import numpy as np
from django.conf import settings

from calabi.exceptions import DomainError
from calabi.family import residuals, residuals_extended, sample
from calabi.holonomy import holonomy_evidence
from calabi.limits import smoothness_limits
from core.config import RunConfig
from core.management.base import EXIT_ERROR, EXIT_FAILURE, Spin7Command
from core.parallel import run_parallel
from core.reports import FAMILY_HEADER, CsvReport, write_plot_script
from core.serializers import FamilySummarySerializer

logger = logging.getLogger(__name__)


def family_row(cell) -> tuple:
    alpha, r = cell
    s = sample(alpha, r)
    return (alpha, r, s.t_of_r_derivative, s.A1, s.A2, s.A3, s.B, s.C, *residuals(alpha, r).tolist())


class Command(Spin7Command):
    help = 'Resíduos da família explícita no sistema geral, por (alpha, r)'
    command_name = 'family'

    def add_command_arguments(self, parser):
        self.add_grid_arguments(parser)
        self.add_r_range_argument(parser)

    def run(self, config: RunConfig, options):
        alphas = config.alphas()
        radii = config.r_values()
        tolerance = settings.SPIN7_SETTINGS['RESIDUAL_TOL']
        summaries = []

        with self.csv_stream(config) as stream:
            report = CsvReport(stream, FAMILY_HEADER) if stream is not None else None
            for alpha in alphas:
                try:
                    rows = run_parallel(family_row, [(alpha, r) for r in radii], config.threads)
                except DomainError as e:
                    if report is not None:
                        report.write_error(str(e))
                        report.flush()
                    self.fail(f'Domínio inválido: {e}', EXIT_ERROR)
                if report is not None:
                    report.write_rows(rows)
                worst = float(np.max(np.abs(np.array([row[-5:] for row in rows]))))
                summaries.append({'alpha': alpha, 'samples': len(rows), 'max_residual': worst,
                                  'passed': worst < tolerance})
                logger.info(f"alpha = {alpha}: max |resíduo| = {worst:.3e}")

        if options.get('plot_script'):
            write_plot_script(options['plot_script'], config.output_path, 'r',
                              ['res1', 'res2', 'res3', 'res4', 'res5'], FAMILY_HEADER, logscale_x=True)

        if config.format == 'json':
            for summary in summaries:
                alpha = summary['alpha']
                summary['max_residual_extended'] = float(max(
                    np.max(np.abs(residuals_extended(alpha, r))) for r in radii
                ))
                if alpha < 1:
                    limits = smoothness_limits(alpha)
                    summary['limits'] = {**limits.as_dict(), 'passed': limits.passed}
                else:
                    summary['limits'] = None
                summary['holonomy'] = holonomy_evidence(alpha).as_dict()
            self.emit_json(FamilySummarySerializer(summaries, many=True).data)

        for summary in summaries:
            mark = self.style.SUCCESS('✓') if summary['passed'] else self.style.ERROR('✗')
            self.stderr.write(f"{mark} alpha = {summary['alpha']}: max |resíduo| = {summary['max_residual']:.3e}")

        failed = [summary['alpha'] for summary in summaries if not summary['passed']]
        if failed:
            self.fail(f'Resíduos acima de {tolerance} para alpha em {failed}', EXIT_FAILURE)
