import json
import os
import tempfile
from io import StringIO
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from coframe.horizontal import PRODUCT_TABLE, HorizontalSymbol as H
from core.config import RunConfig, read_config_file
from core.exceptions import ConfigError
from core.parallel import run_parallel
from core.reports import ERROR_PREFIX, CsvReport, format_value, plot_script
from core.verification import BaseCheck, CheckFactory, VerificationManager
from flows.exceptions import StepUnderflow
from flows.state import CSV_HEADER, State, Trajectory
from structures.reference import reference_system
from symexpr.symbols import Symbol


def run_command(name, *args):
    """Executa o comando e devolve (stdout, stderr)"""
    out, err = StringIO(), StringIO()
    call_command(name, *args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


class RunConfigTest(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write_config(self, text):
        path = os.path.join(self.tmp.name, 'run.conf')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        return path

    def test_defaults(self):
        config = RunConfig.build('family', {})
        self.assertEqual(config.rel_tol, 1e-10)
        self.assertEqual(config.epsilon, 1e-4)
        self.assertEqual(config.r_range, (1.001, 50.0, 200, 'log'))

    def test_precedence(self):
        path = self.write_config('# comentário\nrel_tol = 1e-8\nepsilon = 1e-3  # semente\n')
        config = RunConfig.build('integrate', {'config': path, 'rel_tol': 1e-9, 'epsilon': None})
        self.assertEqual(config.rel_tol, 1e-9)
        self.assertEqual(config.epsilon, 1e-3)
        self.assertEqual(config.t_end, 100.0)

    def test_file_parsing(self):
        path = self.write_config('alpha_grid = 0, 0.5, 1\nr_range = 1.01, 10, 5, linear\n')
        values = read_config_file(path)
        self.assertEqual(values['alpha_grid'], [0.0, 0.5, 1.0])
        self.assertEqual(values['r_range'], (1.01, 10.0, 5, 'linear'))

    def test_unknown_key(self):
        path = self.write_config('tolerance = 1e-8\n')
        with self.assertRaises(ConfigError):
            RunConfig.build('family', {'config': path})

    def test_invalid_values(self):
        with self.assertRaises(ConfigError):
            RunConfig.build('integrate', {'rel_tol': 1e-3})
        with self.assertRaises(ConfigError):
            RunConfig.build('family', {'r_range': (1.0, 2.0, 10, 'cubic')})
        with self.assertRaises(ConfigError):
            RunConfig.build('family', {'r_range': (0.5, 2.0, 10, 'log')})
        with self.assertRaises(ConfigError):
            RunConfig.build('serve', {})

    def test_settings_keys(self):
        self.assertEqual(set(settings.SPIN7_SETTINGS), {
            'REL_TOL', 'EPSILON', 'R_RANGE', 'ALPHA_GRID', 'HOLONOMY_R_GRID',
            'CLOSED_TOL', 'OPEN_TOL', 'RESIDUAL_TOL', 'T_END', 'THREADS',
        })

    def test_single_alpha_precedence(self):
        path = self.write_config('alpha = 0.5\n')
        self.assertEqual(RunConfig.build('family', {'config': path}).alphas(), [0.5])
        self.assertEqual(RunConfig.build('family', {'config': path, 'alpha': 0.9}).alphas(), [0.9])
        grid = RunConfig.build('family', {'config': path, 'alpha_grid': [0.0, 0.3]})
        self.assertEqual(grid.alphas(), [0.0, 0.3])
        self.assertEqual(RunConfig.build('family', {}).alphas(), [0.0, 0.3, 0.6, 0.9, 0.99, 1.0])

    def test_r_values(self):
        config = RunConfig.build('family', {'r_range': (1.0, 100.0, 3, 'log')})
        values = config.r_values()
        self.assertEqual(len(values), 3)
        self.assertAlmostEqual(values[1], 10.0, places=12)
        linear = RunConfig.build('family', {'r_range': (1.0, 3.0, 3, 'linear')}).r_values()
        self.assertEqual(linear, [1.0, 2.0, 3.0])


class ReportsTest(SimpleTestCase):

    def test_float_format(self):
        self.assertEqual(format_value(0.1), '0.10000000000000001')
        self.assertEqual(float(format_value(1 / 3)), 1 / 3)
        self.assertEqual(format_value(5), '5')

    def test_error_trailer(self):
        stream = StringIO()
        report = CsvReport(stream, ('a', 'b'))
        report.write_row((1.5, 2.0))
        report.write_error('DomainError: r <= alpha')
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines, ['a,b', '1.5,2', ERROR_PREFIX + 'DomainError: r <= alpha'])

    def test_plot_script(self):
        script = plot_script('out.csv', 't', ['A2', 'B'], CSV_HEADER)
        self.assertIn("'out.csv' using 1:3", script)
        self.assertIn("'out.csv' using 1:5", script)
        self.assertIn("set datafile separator ','", script)
        self.assertNotIn('logscale', script)


class ParallelTest(SimpleTestCase):

    def test_order(self):
        self.assertEqual(run_parallel(lambda x: x * x, range(20), threads=4), [x * x for x in range(20)])

    def test_sequential(self):
        self.assertEqual(run_parallel(str, [3, 1, 2], threads=1), ['3', '1', '2'])

    def test_exception(self):
        def fail(x):
            if x == 3:
                raise ValueError('três')
            return x

        with self.assertRaises(ValueError):
            run_parallel(fail, range(6), threads=3)


class VerificationTest(SimpleTestCase):

    def test_unknown_suite(self):
        with self.assertRaises(ConfigError):
            CheckFactory.create_check('lemma2')

    def test_default_runs_every_suite(self):
        manager = VerificationManager()
        self.assertEqual([check.suite for check in manager.checks], CheckFactory.suites())
        self.assertEqual(len(manager.checks), 9)

    def test_exception_becomes_failure(self):
        class BrokenCheck(BaseCheck):
            suite = 'broken'
            name = 'quebrada'

            def check(self):
                raise ZeroDivisionError('divisão por zero')

        result = BrokenCheck().run()
        self.assertFalse(result.passed)
        self.assertEqual(result.detail, 'ZeroDivisionError')


class DeriveCommandTest(SimpleTestCase):

    def test_check(self):
        out, err = run_command('derive', '--check')
        self.assertIn("A1' = ", out)
        self.assertIn('✓', err)

    def test_check_mismatch(self):
        perturbed = reference_system().perturbed(Symbol.dB)
        with mock.patch('core.management.commands.derive.reference_system', return_value=perturbed):
            with self.assertRaises(CommandError) as ctx:
                run_command('derive', '--check')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('dB', str(ctx.exception))

    def test_bc_equal_json(self):
        out, _ = run_command('derive', '--bc-equal', '--check', '--format', 'json')
        data = json.loads(out)
        self.assertTrue(data['matches_reference'])
        self.assertEqual(len(data['rhs']), 5)

    def test_show_dphi(self):
        out, _ = run_command('derive', '--show-dphi')
        self.assertIn('grau 5', out)


class VerifyCommandTest(SimpleTestCase):

    def test_single_suite(self):
        out, _ = run_command('verify', '--suite', 'f-identity')
        data = json.loads(out)
        self.assertTrue(data['passed'])
        self.assertEqual([result['suite'] for result in data['results']], ['f-identity'])

    def test_table_corruption(self):
        with mock.patch.dict(PRODUCT_TABLE, {(H.W1, H.W1): (8, H.VOL)}):
            with self.assertRaises(CommandError) as ctx:
                run_command('verify', '--suite', 'horizontal-table')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('horizontal table', str(ctx.exception))

    def test_unknown_suite(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('verify', '--suite', 'lemma2')
        self.assertEqual(ctx.exception.returncode, 2)


class FamilyCommandTest(SimpleTestCase):

    def test_summary(self):
        out, _ = run_command('family', '--alpha', '0.5', '--r-range', '1.001,50,20,log', '--format', 'json')
        [summary] = json.loads(out)
        self.assertTrue(summary['passed'])
        self.assertLess(summary['max_residual'], 1e-10)
        self.assertLessEqual(summary['max_residual_extended'], summary['max_residual'])
        self.assertEqual(summary['samples'], 20)
        self.assertTrue(summary['limits']['passed'])
        self.assertEqual(summary['holonomy']['label'], 'SU(4) evidence')

    def test_alpha_from_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'family.conf')
            with open(path, 'w', encoding='utf-8') as f:
                f.write('alpha = 0.5\n')
            out, _ = run_command('family', '--config', path, '--r-range', '1.01,2,3,linear', '--format', 'json')
        [summary] = json.loads(out)
        self.assertEqual(summary['alpha'], 0.5)
        self.assertEqual(summary['samples'], 3)

    def test_csv_is_deterministic(self):
        args = ('family', '--alpha-grid', '0,0.9', '--r-range', '1.01,5,7,linear', '--threads', '3')
        first, _ = run_command(*args)
        second, _ = run_command(*args)
        self.assertEqual(first, second)
        lines = first.splitlines()
        self.assertEqual(lines[0], ','.join(('alpha', 'r', 't_deriv', 'A1', 'A2', 'A3', 'B', 'C',
                                             'res1', 'res2', 'res3', 'res4', 'res5')))
        self.assertEqual(len(lines), 15)

    def test_domain_error_trailer(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'family.csv')
            with self.assertRaises(CommandError) as ctx:
                run_command('family', '--alpha-grid', '0.5,1.5', '--r-range', '1.01,2,4,linear', '--output', path)
            with open(path, encoding='utf-8') as f:
                lines = f.read().splitlines()
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(len(lines), 6)
        self.assertTrue(lines[-1].startswith(ERROR_PREFIX))

    def test_plot_script_requires_output(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('family', '--alpha', '0', '--plot-script', 'family.gp')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_plot_script(self):
        with tempfile.TemporaryDirectory() as tmp:
            csv_path, gp_path = os.path.join(tmp, 'family.csv'), os.path.join(tmp, 'family.gp')
            run_command('family', '--alpha', '0', '--r-range', '1.01,2,3,log',
                        '--output', csv_path, '--plot-script', gp_path)
            with open(gp_path, encoding='utf-8') as f:
                script = f.read()
        self.assertIn('set logscale x', script)
        self.assertIn(f"'{csv_path}' using 2:9", script)


class CheckHolonomyCommandTest(SimpleTestCase):

    def test_sp2(self):
        out, _ = run_command('check_holonomy', '--alpha', '1')
        [evidence] = json.loads(out)
        self.assertEqual(evidence['label'], 'Sp(2) evidence')
        self.assertEqual(evidence['alpha'], 1.0)

    def test_alpha_from_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'holonomy.conf')
            with open(path, 'w', encoding='utf-8') as f:
                f.write('alpha = 1\n')
            out, _ = run_command('check_holonomy', '--config', path)
        [evidence] = json.loads(out)
        self.assertEqual(evidence['label'], 'Sp(2) evidence')


class IntegrateCommandTest(SimpleTestCase):

    def test_family_until_a2(self):
        out, _ = run_command('integrate', '--seed', 'family', '--alpha', '0.3', '--r', '1.1',
                             '--until-a2', '2', '--format', 'json')
        data = json.loads(out)
        self.assertEqual(data['diagnostics']['status'], 'event')
        self.assertAlmostEqual(abs(data['final'][2]), 2.0, places=8)
        self.assertLess(data['drift']['ansatz_sum_drift'], 1e-8)
        self.assertTrue(data['drift']['sign_ok'])

    def test_csv_output(self):
        out, _ = run_command('integrate', '--seed', 'bc-equal', '--t-end', '0.5')
        lines = out.splitlines()
        self.assertEqual(lines[0], 't,A1,A2,A3,B,C')
        self.assertEqual(float(lines[1].split(',')[0]), 1e-4)
        self.assertEqual(float(lines[-1].split(',')[0]), 0.5)

    def test_project_ansatz(self):
        out, _ = run_command('integrate', '--seed', 'symmetric', '--alpha', '0.3', '--t-end', '10',
                             '--project-ansatz', '--format', 'json')
        drift = json.loads(out)['drift']
        self.assertEqual(drift['a_sum_drift'], 0.0)
        self.assertLess(drift['ansatz_sum_drift'], 1e-8)
        self.assertLess(drift['bc_difference_drift'], 1e-8)
        with self.assertRaises(CommandError) as ctx:
            run_command('integrate', '--seed', 'bc-equal', '--project-ansatz')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invalid_seed(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('integrate', '--seed', 'bc-equal', '--a', '2', '--b', '1')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_partial_trajectory(self):
        trajectory = Trajectory()
        trajectory.append(State(1e-4, -4e-4, -1.0, 1.0, 1.0, 1.0))
        trajectory.append(State(2e-4, -8e-4, -1.0, 1.0, 1.0, 1.0))
        error = StepUnderflow('passo abaixo de 1e-14 * t', trajectory=trajectory)
        with mock.patch('core.management.commands.integrate.integrate', side_effect=error):
            with tempfile.TemporaryDirectory() as tmp:
                path = os.path.join(tmp, 'trajectory.csv')
                with self.assertRaises(CommandError) as ctx:
                    run_command('integrate', '--seed', 'bc-equal', '--output', path)
                with open(path, encoding='utf-8') as f:
                    lines = f.read().splitlines()
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[-1], ERROR_PREFIX + 'StepUnderflow: passo abaixo de 1e-14 * t')


class ExploreAlcCommandTest(SimpleTestCase):

    def test_statistics(self):
        out, _ = run_command('explore_alc', '--a', '0.5', '--b', '1', '--t-end', '4', '--format', 'json')
        data = json.loads(out)
        self.assertTrue(data['reached_t_end'])
        self.assertEqual(data['window'], [2.0, 4.0])
        self.assertIn(data['bounded'], ('A1', 'A2', 'A3'))
        self.assertGreaterEqual(data['bounded_relative_change'], 0.0)
        self.assertGreater(data['min_growth'], 0.0)
        self.assertFalse(data['alc_like'])

    def test_circle_direction_stabilizes_by_t100(self):
        out, err = run_command('explore_alc', '--a', '0.5', '--b', '1', '--t-end', '100', '--format', 'json')
        data = json.loads(out)
        self.assertTrue(data['reached_t_end'])
        self.assertEqual(data['bounded'], 'A3')
        self.assertLess(data['max_abs_bounded'], 10.0)
        self.assertGreater(data['min_growth'], 20.0)
        self.assertLess(data['bounded_relative_change'], 0.05)
        self.assertTrue(data['alc_like'])
        self.assertIn('Comportamento ALC', err)

    def test_invalid_seed(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('explore_alc', '--a', '1', '--b', '1')
        self.assertEqual(ctx.exception.returncode, 2)
