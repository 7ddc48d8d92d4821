"""
Exploração do comportamento ALC: integra o sistema B = C a partir da
semente bc_equal(a, b). O sistema é simétrico em A1, A2, A3; no limite
ALC dois coeficientes crescem linearmente junto com B = C e o terceiro
(a direção do círculo) se estabiliza. A estabilização é medida na janela
[t_end / 2, t_end] para o coeficiente de menor |valor| no instante final.
"""
import logging
from typing import Dict

from core.config import RunConfig
from core.management.base import EXIT_ERROR, Spin7Command
from core.reports import write_plot_script, write_trajectory
from core.serializers import AlcStatisticsSerializer
from flows.exceptions import FlowError
from flows.integrators import integrate
from flows.seeds import seed
from flows.state import CSV_HEADER, SeedSpec, Trajectory
from structures.reference import reference_bc_equal_system

logger = logging.getLogger(__name__)

COEFFICIENTS = ('A1', 'A2', 'A3')
# limites do diagnóstico ALC
BOUNDED_MAX = 10.0
GROWTH_MIN = 20.0
STABLE_CHANGE = 0.05


def alc_statistics(trajectory: Trajectory, t_end: float) -> Dict[str, object]:
    window_start = t_end / 2
    final = trajectory.final
    start = trajectory.at_or_after(window_start) or final
    bounded = min(COEFFICIENTS, key=lambda name: abs(getattr(final, name)))
    growing = [abs(getattr(final, name)) for name in COEFFICIENTS if name != bounded]
    bounded_final = getattr(final, bounded)
    relative_change = abs(bounded_final - getattr(start, bounded)) / abs(bounded_final)
    max_abs_bounded = max(abs(getattr(state, bounded)) for state in trajectory)
    min_growth = min(*growing, final.B)
    return {
        't_end': t_end,
        'reached_t_end': final.t >= t_end,
        'bounded': bounded,
        'bounded_final': bounded_final,
        'bounded_window_start': getattr(start, bounded),
        'bounded_relative_change': relative_change,
        'max_abs_bounded': max_abs_bounded,
        'min_growth': min_growth,
        'alc_like': (final.t >= t_end and max_abs_bounded < BOUNDED_MAX and min_growth > GROWTH_MIN
                     and relative_change < STABLE_CHANGE),
        'window': [window_start, t_end],
        'diagnostics': trajectory.diagnostics(),
    }


class Command(Spin7Command):
    help = 'Explora o limite ALC do sistema B = C a partir da semente bc_equal(a, b)'
    command_name = 'explore_alc'

    def add_command_arguments(self, parser):
        parser.add_argument('--a', type=float, default=0.5, help='-A2(0) = A3(0)')
        parser.add_argument('--b', type=float, default=1.0, help='B(0) = C(0)')
        self.add_integration_arguments(parser)

    def run(self, config: RunConfig, options):
        a, b = options['a'], options['b']
        config.ic = SeedSpec.bc_equal(a, b, epsilon=config.epsilon)
        system = reference_bc_equal_system()

        error = None
        try:
            trajectory = integrate(seed(config.ic), system, config.t_end, rel_tol=config.rel_tol)
        except FlowError as e:
            error = e
            trajectory = e.trajectory

        with self.csv_stream(config) as stream:
            if stream is not None and trajectory is not None:
                write_trajectory(stream, trajectory, f'{type(error).__name__}: {error}' if error else None)

        if options.get('plot_script'):
            write_plot_script(options['plot_script'], config.output_path, 't', ['A1', 'A2', 'A3', 'B'], CSV_HEADER)

        if error is not None:
            self.fail(f'Integração interrompida: {type(error).__name__}: {error}', EXIT_ERROR)

        statistics = {'a': a, 'b': b, **alc_statistics(trajectory, config.t_end)}
        logger.info(f"ALC a = {a}, b = {b}: {statistics['bounded']} limitado, "
                    f"variação relativa = {statistics['bounded_relative_change']:.3e}")

        if config.format == 'json':
            self.emit_json(AlcStatisticsSerializer(statistics).data)

        self.stderr.write('\n' + '=' * 50)
        self.stderr.write('RESUMO DA EXPLORAÇÃO ALC:')
        name = statistics['bounded']
        self.stderr.write(f"Coeficiente limitado: {name}")
        self.stderr.write(f"{name}({statistics['window'][0]:g}) = {statistics['bounded_window_start']:.6g}")
        self.stderr.write(f"{name}({config.t_end:g}) = {statistics['bounded_final']:.6g}")
        self.stderr.write(f"Variação relativa de {name}: {statistics['bounded_relative_change']:.3e}")
        self.stderr.write(f"Menor crescimento (demais coeficientes e B): {statistics['min_growth']:.6g}")
        if statistics['alc_like']:
            self.stderr.write(self.style.SUCCESS('✓ Comportamento ALC'))
        else:
            self.stderr.write(self.style.WARNING('? Sem evidência de comportamento ALC até t_end'))
