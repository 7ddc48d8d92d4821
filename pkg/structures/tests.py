import math
import random
from fractions import Fraction

from django.test import SimpleTestCase

from coframe.forms import BasisElement
from coframe.horizontal import HorizontalSymbol
from structures.ansatz import reduce_ansatz, verify_kahler_on_ansatz
from structures.cayley import build_omega_bar, build_phi, dphi
from structures.closure import closure_report
from structures.derivation import derive_ode, linear_equations, verify_lemma1
from structures.exceptions import ReductionFailure, SingularSystem
from structures.frame import cayley_deviation, kahler_deviation, self_wedge_volume
from structures.linsolve import det_bareiss, rank_fraction, solve_cramer
from structures.reference import reference_bc_equal_system, reference_system
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.symbols import DERIVATIVES, Symbol

H = HorizontalSymbol
A1, A2, A3, B, C = (Poly.symbol(s) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C))


def ansatz_point(a1: float, a2: float, alpha: float):
    return {
        Symbol.A1: a1,
        Symbol.A2: a2,
        Symbol.A3: -a2,
        Symbol.B: math.sqrt(a2 * a2 + alpha * alpha),
        Symbol.C: math.sqrt(a2 * a2 - alpha * alpha),
    }


class BareissTest(SimpleTestCase):

    def test_integer_determinant(self):
        matrix = [[Poly.constant(x) for x in row] for row in [[2, 3, 1], [4, 1, -3], [0, 5, 7]]]
        # 2(7 + 15) - 3(28 - 0) + 1(20 - 0) = -20
        self.assertEqual(det_bareiss(matrix), Poly.constant(-20))

    def test_row_swap_sign(self):
        matrix = [[Poly.zero(), Poly.one()], [Poly.one(), Poly.zero()]]
        self.assertEqual(det_bareiss(matrix), Poly.constant(-1))
        matrix3 = [
            [Poly.zero(), Poly.one(), Poly.zero()],
            [Poly.one(), Poly.zero(), Poly.zero()],
            [Poly.zero(), Poly.zero(), A1],
        ]
        self.assertEqual(det_bareiss(matrix3), -A1)

    def test_polynomial_determinant(self):
        matrix = [[A1, B, Poly.zero()], [C, A2, B], [Poly.one(), A3, C]]
        expected = A1 * (A2 * C - B * A3) - B * (C * C - B)
        self.assertEqual(det_bareiss(matrix), expected)

    def test_cramer(self):
        matrix = [[A1, Poly.zero()], [B, A2]]
        x = solve_cramer(matrix, [A3, C])
        self.assertEqual(x[0], RatFunc(A3, A1))
        self.assertEqual(x[1], RatFunc(A1 * C - B * A3, A1 * A2))

    def test_singular(self):
        matrix = [[A1, B], [A1 * 2, B * 2]]
        with self.assertRaises(SingularSystem):
            solve_cramer(matrix, [A2, A3])

    def test_rank_selection(self):
        rows = [[1, 2], [2, 4], [0, 1]]
        self.assertEqual(rank_fraction(rows), [0, 2])


class CayleyFormTest(SimpleTestCase):

    def test_phi_components(self):
        phi = build_phi()
        self.assertEqual(len(phi), 10)
        self.assertEqual(phi.degree, 4)
        self.assertEqual(phi[BasisElement.of('dt', 'e1', 'e2', 'e3')], RatFunc(A1 * A2 * A3))
        self.assertEqual(phi[BasisElement.of(horizontal=H.VOL)], RatFunc(B ** 2 * C ** 2))
        self.assertEqual(
            phi[BasisElement.of('dt', 'e1', horizontal=H.W1)],
            RatFunc(A1 * (B ** 2 + C ** 2) * Fraction(1, 4)),
        )

    def test_omega_bar_components(self):
        omega2 = build_omega_bar(2)
        self.assertEqual(omega2.degree, 2)
        self.assertEqual(omega2[BasisElement.of('dt', 'e2')], RatFunc(A2))
        self.assertEqual(omega2[BasisElement.of(horizontal=H.W2)], RatFunc(-B * C * Fraction(1, 2)))
        omega1 = build_omega_bar(1)
        self.assertEqual(omega1[BasisElement.of(horizontal=H.W)], RatFunc((B ** 2 - C ** 2) * Fraction(1, 4)))

    def test_dphi_is_affine_in_derivatives(self):
        equations = linear_equations()
        self.assertEqual(len(equations), len(dphi()))
        self.assertTrue(all(eq.has_derivatives() for eq in equations))
        self.assertTrue(all(b.degree == 5 for b, _ in dphi().items()))


class OrthonormalFrameTest(SimpleTestCase):

    def test_cayley_standard_form(self):
        rng = random.Random(5)
        for _ in range(10):
            point = {s: rng.choice([-1, 1]) * rng.uniform(0.2, 3.0) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C)}
            self.assertLess(cayley_deviation(point), 1e-12)
            self.assertAlmostEqual(self_wedge_volume(point), 14.0, places=10)
            for k in (1, 2, 3):
                self.assertLess(kahler_deviation(point, k), 1e-12)


class DerivationTest(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.derived = derive_ode()

    def test_matches_reference(self):
        reference = reference_system()
        for symbol in DERIVATIVES:
            self.assertEqual(self.derived[symbol], reference[symbol], msg=symbol.name)
        self.assertTrue(self.derived.has_monomial_denominators())

    def test_first_and_fourth_lines(self):
        expected_a1 = RatFunc((A2 - A3) ** 2 - A1 ** 2, A2 * A3) + RatFunc(A1 ** 2 * (B ** 2 + C ** 2), B ** 2 * C ** 2)
        expected_b = (
            -RatFunc(C * A1 + B * A2 + B * A3, B * C)
            - RatFunc((C ** 2 - B ** 2) * (A2 + A3), 2 * A2 * A3 * C)
        )
        self.assertEqual(self.derived[Symbol.dA1], expected_a1)
        self.assertEqual(self.derived[Symbol.dB], expected_b)

    def test_exact_values(self):
        point = {Symbol.A1: 1, Symbol.A2: 2, Symbol.A3: 3, Symbol.B: 1, Symbol.C: 2}
        values = self.derived.evaluate_exact(point)
        expected = [Fraction(5, 4), Fraction(7, 2), Fraction(9, 2), Fraction(-33, 8), Fraction(-17, 4)]
        self.assertEqual([values[s] for s in DERIVATIVES], expected)

    def test_bc_equal_specialization(self):
        bc_equal = derive_ode(bc_equal=True)
        self.assertTrue(bc_equal.equals(reference_bc_equal_system()))
        self.assertEqual(
            bc_equal[Symbol.dA1],
            RatFunc(2 * A1 ** 2, B ** 2) + RatFunc((A2 - A3) ** 2 - A1 ** 2, A2 * A3),
        )

    def test_verify_lemma1(self):
        self.assertTrue(verify_lemma1(reference_system()))
        self.assertTrue(verify_lemma1(self.derived))

    def test_single_component_perturbations_fail(self):
        for symbol in DERIVATIVES:
            self.assertFalse(verify_lemma1(reference_system().perturbed(symbol)), msg=symbol.name)

    def test_text_output(self):
        data = self.derived.to_dict()
        self.assertEqual(list(data), ['dA1', 'dA2', 'dA3', 'dB', 'dC'])
        self.assertEqual(self.derived.to_text(), derive_ode().to_text())


class AnsatzTest(SimpleTestCase):

    def test_reduction_items(self):
        report = reduce_ansatz(reference_system())
        self.assertTrue(report.passed)
        self.assertEqual([item.name for item in report.items], ['i', 'ii.a', 'ii.b', 'iii.a', 'iii.b'])
        self.assertTrue(all(item.residual == '0' for item in report.items))

    def test_reduction_failure_names_item(self):
        with self.assertRaises(ReductionFailure) as ctx:
            reduce_ansatz(reference_system().perturbed(Symbol.dA2))
        self.assertEqual(ctx.exception.item, 'i')
        with self.assertRaises(ReductionFailure) as ctx:
            reduce_ansatz(reference_system().perturbed(Symbol.dA1))
        self.assertEqual(ctx.exception.item, 'iii.a')

    def test_kahler_form_closed_on_ansatz(self):
        self.assertTrue(verify_kahler_on_ansatz(reference_system()))
        self.assertFalse(verify_kahler_on_ansatz(reference_system().perturbed(Symbol.dB)))


class ClosureTest(SimpleTestCase):

    def test_phi_closed_at_any_point(self):
        point = {Symbol.A1: -0.7, Symbol.A2: -1.3, Symbol.A3: 2.1, Symbol.B: 0.9, Symbol.C: 1.7}
        report = closure_report(point, reference_system())
        self.assertEqual(report.phi, 0.0)
        self.assertGreater(report.omega1, 0.1)

    def test_kahler_closed_on_ansatz_points(self):
        rng = random.Random(17)
        for _ in range(10):
            alpha = rng.uniform(0.0, 0.9)
            point = ansatz_point(-rng.uniform(0.1, 3.0), -rng.uniform(1.0, 5.0), alpha)
            report = closure_report(point, reference_system())
            self.assertLess(report.phi, 1e-12)
            self.assertLess(report.omega1, 1e-12)

    def test_report_fields(self):
        report = closure_report(ansatz_point(-0.5, -1.2, 0.3), reference_system())
        self.assertEqual(set(report.as_dict()), {'phi', 'omega1', 'omega2', 'omega3'})
        self.assertTrue(all(v >= 0 for v in report.as_dict().values()))
        self.assertIn('dt^w2', report.components['omega2'])
