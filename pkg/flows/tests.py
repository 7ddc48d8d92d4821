import math

import numpy as np
from django.test import SimpleTestCase

from calabi.family import sample
from flows.exceptions import InvalidSpec, SingularDenominator, StepUnderflow
from flows.integrators import MAX_SINGULAR_REJECTIONS, DormandPrince54, integrate, rhs_eval, until_abs_a2
from flows.monitors import ansatz_projection, monitor
from flows.seeds import bc_equal_slope, seed
from flows.state import SeedSpec, State, Trajectory
from structures.reference import reference_bc_equal_system, reference_system
from structures.system import OdeSystem
from symexpr.poly import Poly
from symexpr.symbols import Symbol


class WallSolver(DormandPrince54):
    """Estágios além de t = wall caem numa singularidade"""

    wall = 0.5

    def rhs(self, t, y):
        if t > self.wall:
            raise SingularDenominator(f"estágio em t = {t} além da parede")
        return super().rhs(t, y)


class NanSolver(DormandPrince54):

    def rhs(self, t, y):
        if t > 0.0:
            return np.full(y.size, np.nan)
        return super().rhs(t, y)


class SingularEventSolver(DormandPrince54):

    def _locate_event(self, *args):
        raise SingularDenominator("estágio singular na localização do evento")


def drift_system() -> OdeSystem:
    return OdeSystem({Symbol.dA1: 0, Symbol.dA2: 0, Symbol.dA3: 0, Symbol.dB: 1, Symbol.dC: 0}, 'deriva')


def relative_error(state: State, alpha: float) -> float:
    """Distância relativa até o membro da família com o mesmo |A2|"""
    expected = sample(alpha, abs(state.A2)).values
    return float(np.max(np.abs(state.values - expected) / np.abs(expected)))


class RhsEvalTest(SimpleTestCase):

    def test_family_point(self):
        derivatives = rhs_eval(sample(0.0, 2.0).as_state(), reference_system())
        self.assertAlmostEqual(derivatives[0], -1.01171875, places=13)
        self.assertAlmostEqual(derivatives[3], math.sqrt(255) / 16, places=13)

    def test_ansatz_point(self):
        a2, alpha = -1.7, 0.4
        state = State(0.0, -0.6, a2, -a2, math.sqrt(a2 * a2 + alpha * alpha), math.sqrt(a2 * a2 - alpha * alpha))
        derivatives = rhs_eval(state, reference_system())
        self.assertAlmostEqual(derivatives[1] + derivatives[2], 0.0, places=13)

    def test_singular_denominator(self):
        with self.assertRaises(SingularDenominator):
            rhs_eval(State(1.0, -0.5, -1.0, 1.0, 1e-15, 1.0), reference_system())


class SeedTest(SimpleTestCase):

    def test_symmetric(self):
        state = seed(SeedSpec.symmetric(0.0, epsilon=1e-4))
        self.assertEqual(state.t, 1e-4)
        self.assertAlmostEqual(state.A1, -4e-4, places=15)
        self.assertAlmostEqual(state.A2, -1.00000002, places=14)
        self.assertAlmostEqual(state.B, 1.00000002, places=14)
        self.assertEqual(state.B, state.C)
        self.assertEqual(state.A2, -state.A3)

    def test_symmetric_homothety(self):
        unit = seed(SeedSpec.symmetric(0.3, epsilon=5e-5))
        scaled = seed(SeedSpec.symmetric(0.3, epsilon=1e-4, scale=2.0))
        np.testing.assert_allclose(scaled.values, 2.0 * unit.values, rtol=1e-15)

    def test_first_derivative_of_A1(self):
        for epsilon in (1e-3, 1e-4, 1e-5):
            self.assertAlmostEqual(seed(SeedSpec.symmetric(0.5, epsilon)).A1 / epsilon, -4.0, places=12)
            self.assertAlmostEqual(seed(SeedSpec.bc_equal(0.5, 1.0, epsilon)).A1 / epsilon, -4.0, places=12)

    def test_bc_equal_slope(self):
        self.assertEqual(bc_equal_slope(0.5, 1.0), -0.75)
        state = seed(SeedSpec.bc_equal(0.5, 1.0, epsilon=1e-4))
        self.assertEqual(state.B, state.C)
        self.assertAlmostEqual(state.A2, -0.5 - 0.75e-4, places=15)
        self.assertAlmostEqual(state.A3, 0.5 - 0.75e-4, places=15)

    def test_bc_equal_seed_is_consistent(self):
        state = seed(SeedSpec.bc_equal(0.5, 1.0, epsilon=1e-5))
        derivatives = rhs_eval(state, reference_bc_equal_system())
        np.testing.assert_allclose(derivatives, [-4.0, -0.75, -0.75, 0.0, 0.0], atol=1e-3)

    def test_invalid_specs(self):
        invalid = [
            SeedSpec.symmetric(0.3, epsilon=0.0),
            SeedSpec.symmetric(0.3, epsilon=2e-2),
            SeedSpec.symmetric(1.0),
            SeedSpec.symmetric(0.3, scale=0.0),
            SeedSpec.bc_equal(1.0, 0.5),
            SeedSpec.bc_equal(0.0, 1.0),
            SeedSpec('helical'),
        ]
        for spec in invalid:
            with self.assertRaises(InvalidSpec, msg=str(spec)):
                seed(spec)


class IntegrateTest(SimpleTestCase):

    def test_zero_length(self):
        initial = sample(0.3, 1.5).as_state(2.0)
        trajectory = integrate(initial, reference_system(), t_end=2.0)
        self.assertEqual(len(trajectory), 1)
        self.assertEqual(trajectory.final, initial)
        self.assertEqual(trajectory.status, 'complete')

    def test_tolerance_range(self):
        initial = sample(0.3, 1.5).as_state()
        for rel_tol in (1e-14, 1e-5):
            with self.assertRaises(InvalidSpec):
                integrate(initial, reference_system(), 1.0, rel_tol=rel_tol)

    def test_matches_family(self):
        initial = sample(0.3, 1.1).as_state(0.0)
        trajectory = integrate(initial, reference_system(), 100.0, rel_tol=1e-10, event=until_abs_a2(5.0))
        self.assertEqual(trajectory.status, 'event')
        self.assertAlmostEqual(abs(trajectory.final.A2), 5.0, places=9)
        self.assertLess(relative_error(trajectory.final, 0.3), 1e-6)

        drift = monitor(trajectory)
        self.assertLess(drift.bc_difference, 1e-8)
        self.assertLess(drift.ansatz_sum, 1e-8)
        self.assertTrue(drift.sign_ok)
        self.assertTrue(all(s.sign_ok() for s in trajectory))
        times = [s.t for s in trajectory]
        self.assertTrue(all(a < b for a, b in zip(times, times[1:])))

    def test_symmetric_seed_stays_on_ansatz_to_t100(self):
        initial = seed(SeedSpec.symmetric(0.3))
        trajectory = integrate(initial, reference_system(), 100.0, projection=ansatz_projection(initial))
        self.assertEqual(trajectory.status, 'complete')
        self.assertEqual(trajectory.final.t, 100.0)
        drift = monitor(trajectory)
        self.assertIsNotNone(drift.ansatz_sum)
        self.assertIsNotNone(drift.a_sum)
        for name, value in drift.as_dict().items():
            if name != 'sign_ok':
                self.assertLessEqual(value, 1e-8, msg=name)
        self.assertTrue(drift.sign_ok)
        self.assertLess(relative_error(trajectory.final, 0.3), 1e-6)

    def test_projection_requires_ansatz_state(self):
        with self.assertRaises(InvalidSpec):
            ansatz_projection(State(1.0, -1.0, -1.0, 1.0, 2.0, 1.0))

    def test_seed_and_family_point_agree(self):
        event = until_abs_a2(2.0)
        from_seed = integrate(seed(SeedSpec.symmetric(0.3, epsilon=1e-4)), reference_system(), 100.0, event=event)
        from_family = integrate(sample(0.3, 1.01).as_state(0.0), reference_system(), 100.0, event=event)
        for trajectory in (from_seed, from_family):
            self.assertEqual(trajectory.status, 'event')
            self.assertLess(relative_error(trajectory.final, 0.3), 1e-5)
        np.testing.assert_allclose(from_seed.final.values, from_family.final.values, rtol=1e-5)

    def test_order_of_convergence(self):
        initial = sample(0.3, 1.2).as_state(0.0)
        reference = integrate(initial, reference_system(), 2.0, rel_tol=1e-13).final.values
        errors = [
            np.max(np.abs(integrate(initial, reference_system(), 2.0, rel_tol=tol).final.values - reference))
            for tol in (1e-6, 1e-8)
        ]
        ratio = errors[0] / errors[1]
        self.assertGreater(ratio, 100 / 4)
        self.assertLess(ratio, 100 * 4)

    def test_bc_equal_flow(self):
        initial = seed(SeedSpec.bc_equal(0.5, 1.0))
        trajectory = integrate(initial, reference_bc_equal_system(), 5.0)
        self.assertEqual(trajectory.status, 'complete')
        self.assertTrue(all(s.B == s.C for s in trajectory))
        self.assertEqual(monitor(trajectory).bc_difference, 0.0)
        self.assertGreater(trajectory.final.B, initial.B)

    def test_generic_data_drifts(self):
        initial = State(1.0, -0.8, -1.2, 1.0, 1.3, 0.9)
        trajectory = integrate(initial, reference_system(), 1.2)
        drift = monitor(trajectory)
        self.assertGreater(drift.bc_difference, 1e-3)
        self.assertIsNone(drift.a_sum)
        self.assertIsNone(drift.ansatz_sum)

    def test_singular_initial_state(self):
        initial = State(0.0, 0.0, -1.0, 1.0, 1.0, 1.0)
        with self.assertRaises(SingularDenominator) as ctx:
            integrate(initial, reference_system(), 1.0)
        self.assertEqual(len(ctx.exception.trajectory), 1)
        self.assertEqual(ctx.exception.trajectory.status, 'error')

    def test_step_underflow_keeps_partial_trajectory(self):
        B = Poly.symbol(Symbol.B)
        blowup = OdeSystem({Symbol.dA1: 0, Symbol.dA2: 0, Symbol.dA3: 0, Symbol.dB: B ** 2, Symbol.dC: 0}, 'explosão')
        with self.assertRaises(StepUnderflow) as ctx:
            integrate(State(0.0, -1.0, -1.0, 1.0, 1.0, 1.0), blowup, 2.0, rel_tol=1e-6)
        partial = ctx.exception.trajectory
        self.assertGreater(len(partial), 10)
        self.assertLess(partial.final.t, 1.0)
        self.assertGreater(partial.final.B, 1e6)

    def test_singular_stages_stop_with_partial_trajectory(self):
        with self.assertRaises(SingularDenominator) as ctx:
            WallSolver(drift_system(), rel_tol=1e-8).integrate(State(0.0, -1.0, -1.0, 1.0, 1.0, 1.0), 1.0)
        partial = ctx.exception.trajectory
        self.assertIsNotNone(partial)
        self.assertEqual(partial.status, 'error')
        self.assertGreater(len(partial), 1)
        self.assertLessEqual(partial.final.t, 0.5)
        self.assertGreater(partial.final.t, 0.49)

    def test_repeated_singular_stages_at_same_time(self):
        solver = WallSolver(drift_system(), rel_tol=1e-8)
        solver.wall = 0.0
        with self.assertRaises(SingularDenominator) as ctx:
            solver.integrate(State(0.0, -1.0, -1.0, 1.0, 1.0, 1.0), 1.0)
        partial = ctx.exception.trajectory
        self.assertIn('rejeições seguidas', str(ctx.exception))
        self.assertEqual(len(partial), 1)
        self.assertEqual(partial.rejected, MAX_SINGULAR_REJECTIONS)

    def test_singular_event_location_keeps_trajectory(self):
        solver = SingularEventSolver(drift_system(), rel_tol=1e-8)
        with self.assertRaises(SingularDenominator) as ctx:
            solver.integrate(State(0.0, -1.0, -1.0, 1.0, 1.0, 1.0), 2.0, event=lambda state: state.B - 1.5)
        partial = ctx.exception.trajectory
        self.assertIsNotNone(partial)
        self.assertEqual(partial.status, 'error')
        self.assertLess(partial.final.B, 1.5)

    def test_underflow_at_time_zero(self):
        with self.assertRaises(StepUnderflow) as ctx:
            NanSolver(drift_system(), rel_tol=1e-8).integrate(State(0.0, -1.0, -1.0, 1.0, 1.0, 1.0), 1.0)
        partial = ctx.exception.trajectory
        self.assertEqual(len(partial), 1)
        self.assertLess(partial.rejected, 30)
        self.assertIn('abaixo de 1e-14', str(ctx.exception))


class TrajectoryTest(SimpleTestCase):

    def test_times_strictly_increase(self):
        trajectory = Trajectory()
        trajectory.append(State(1.0, -1, -1, 1, 1, 1))
        with self.assertRaises(ValueError):
            trajectory.append(State(1.0, -1, -1, 1, 1, 1))

    def test_diagnostics(self):
        trajectory = integrate(sample(0.6, 1.5).as_state(0.0), reference_system(), 1.0)
        data = trajectory.diagnostics()
        self.assertEqual(data['status'], 'complete')
        self.assertEqual(data['samples'], len(trajectory))
        self.assertGreater(data['accepted'], 0)
        self.assertLessEqual(data['max_error'], 1.0)
        self.assertEqual(trajectory.final.t, 1.0)
