import logging

from calabi.exceptions import DomainError
from calabi.family import sample
from core.config import RunConfig
from core.management.base import EXIT_ERROR, Spin7Command
from core.reports import write_plot_script, write_trajectory
from core.serializers import IntegrationReportSerializer
from flows.exceptions import FlowError
from flows.integrators import integrate, until_abs_a2
from flows.monitors import ansatz_projection, monitor
from flows.seeds import seed
from flows.state import CSV_HEADER, SeedSpec, State
from structures.reference import reference_bc_equal_system, reference_system

logger = logging.getLogger(__name__)

SEEDS = ('symmetric', 'bc-equal', 'family')
SYSTEMS = ('general', 'bc-equal')


class Command(Spin7Command):
    help = 'Integra o sistema de EDOs a partir de uma semente ou de um ponto da família'
    command_name = 'integrate'

    def add_command_arguments(self, parser):
        parser.add_argument('--seed', choices=SEEDS, default='symmetric', help='Tipo de condição inicial')
        parser.add_argument('--alpha', type=float, help='alpha da semente simétrica ou da família')
        parser.add_argument('--a', type=float, default=0.5, help='-A2(0) = A3(0) da semente bc-equal')
        parser.add_argument('--b', type=float, default=1.0, help='B(0) = C(0) da semente bc-equal')
        parser.add_argument('--r', type=float, default=1.01, help='Raio do ponto inicial com --seed family')
        parser.add_argument('--scale', type=float, default=1.0, help='Fator de homotetia da semente simétrica')
        parser.add_argument('--until-a2', type=float, help='Para quando |A2| atingir este valor')
        parser.add_argument('--system', choices=SYSTEMS, help='Sistema integrado (padrão: conforme a semente)')
        parser.add_argument('--project-ansatz', action='store_true',
                            help='Projeta cada passo na variedade do ansatz (sementes symmetric e family)')
        self.add_integration_arguments(parser)

    def initial_condition(self, config: RunConfig, options) -> State:
        kind = options['seed']
        alpha = config.alpha if config.alpha is not None else 0.0
        if kind == 'family':
            config.ic = sample(alpha, options['r']).as_state()
            return config.ic
        if kind == 'bc-equal':
            config.ic = SeedSpec.bc_equal(options['a'], options['b'], epsilon=config.epsilon)
        else:
            config.ic = SeedSpec.symmetric(alpha, epsilon=config.epsilon, scale=options['scale'])
        return seed(config.ic)

    def run(self, config: RunConfig, options):
        system_name = options.get('system') or ('bc-equal' if options['seed'] == 'bc-equal' else 'general')
        system = reference_bc_equal_system() if system_name == 'bc-equal' else reference_system()
        event = until_abs_a2(options['until_a2']) if options.get('until_a2') is not None else None

        try:
            initial = self.initial_condition(config, options)
            projection = ansatz_projection(initial) if options.get('project_ansatz') else None
        except (DomainError, FlowError) as e:
            self.fail(f'Condição inicial inválida: {e}', EXIT_ERROR)

        t_end = initial.t + config.t_end if options['seed'] == 'family' else config.t_end
        error = None
        try:
            trajectory = integrate(initial, system, t_end, rel_tol=config.rel_tol, event=event,
                                   projection=projection)
        except FlowError as e:
            error = e
            trajectory = e.trajectory

        with self.csv_stream(config) as stream:
            if stream is not None and trajectory is not None:
                write_trajectory(stream, trajectory, f'{type(error).__name__}: {error}' if error else None)

        if options.get('plot_script'):
            write_plot_script(options['plot_script'], config.output_path, 't',
                              ['A1', 'A2', 'A3', 'B', 'C'], CSV_HEADER)

        if error is not None:
            self.fail(f'Integração interrompida: {type(error).__name__}: {error}', EXIT_ERROR)

        drift = monitor(trajectory)
        if config.format == 'json':
            self.emit_json(IntegrationReportSerializer({
                'system': system.name,
                'initial': list(trajectory.initial.row()),
                'final': list(trajectory.final.row()),
                'diagnostics': trajectory.diagnostics(),
                'drift': drift.as_dict(),
            }).data)

        self.stderr.write('\n' + '=' * 50)
        self.stderr.write('RESUMO DA INTEGRAÇÃO:')
        self.stderr.write(f'Sistema: {system.name}')
        self.stderr.write(f'Amostras: {len(trajectory)} ({trajectory.accepted} passos aceitos, '
                          f'{trajectory.rejected} rejeitados)')
        self.stderr.write(f'Estado final: {trajectory.final}')
        self.stderr.write(f'Deriva máxima dos monitores: {drift.max_drift():.3e}')
        self.stderr.write(self.style.SUCCESS(f'✓ Integração concluída ({trajectory.status})'))
