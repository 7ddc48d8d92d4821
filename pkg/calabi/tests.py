import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from calabi.exceptions import DomainError
from calabi.family import (
    F_of_r, N, homothety_class, residuals, residuals_bc_equal, residuals_extended, sample, sample_residuals,
)
from calabi.holonomy import SP2_LABEL, SU4_LABEL, holonomy_evidence
from calabi.identities import F_symbolic, verify_alpha0_identity, verify_F_identity, verify_root_normalization
from calabi.limits import neville_at_zero, smoothness_limits
from flows.exceptions import InvalidSpec
from structures.closure import closure_report
from structures.reference import reference_system
from symexpr.symbols import Symbol

FAMILY_ALPHAS = (0.0, 0.3, 0.6, 0.9, 0.99)
RADII = np.geomspace(1.001, 50.0, 200)


class FamilyValueTest(SimpleTestCase):

    def test_exact_values(self):
        self.assertEqual(F_of_r(0, 2), Fraction(255, 64))
        self.assertEqual(F_of_r(1, 2), Fraction(15, 4))
        for r in (Fraction(3, 2), Fraction(3), Fraction(7, 5)):
            self.assertEqual(F_of_r(1, r), (r ** 4 - 1) / r ** 2)

    def test_root_at_one(self):
        for alpha in FAMILY_ALPHAS:
            self.assertEqual(F_of_r(alpha, 1), 0)
        self.assertEqual(F_of_r(Fraction(1, 2), 1), 0)

    def test_domain(self):
        with self.assertRaises(DomainError):
            F_of_r(0.5, 0.5)
        with self.assertRaises(DomainError):
            sample(0.3, 0.99)
        with self.assertRaises(DomainError):
            sample(1.2, 2.0)

    def test_samples(self):
        s = sample(0.0, 2.0)
        self.assertAlmostEqual(s.A1, -math.sqrt(255) / 8, places=14)
        self.assertEqual((s.A2, s.A3, s.B, s.C), (-2.0, 2.0, 2.0, 2.0))
        s = sample(1.0, 2.0)
        self.assertAlmostEqual(s.B, math.sqrt(5), places=14)
        self.assertAlmostEqual(s.C, math.sqrt(3), places=14)
        self.assertAlmostEqual(s.A1, -math.sqrt(15) / 2, places=14)

    def test_coordinate_singularity(self):
        s = sample(0.3, 1.0)
        self.assertTrue(s.coordinate_singularity)
        self.assertEqual(s.t_of_r_derivative, math.inf)
        self.assertEqual((s.A2, s.A3), (-1.0, 1.0))
        boundary = sample(1.0, 1.0)
        self.assertTrue(boundary.coordinate_singularity)
        self.assertEqual(boundary.C, 0.0)
        self.assertFalse(sample(0.3, 1.5).coordinate_singularity)

    def test_asymptotically_conical(self):
        for alpha in (0.0, 0.5, 1.0):
            s = sample(alpha, 1e6)
            for value in (s.A1, s.A2, s.B, s.C):
                self.assertAlmostEqual(abs(value) / s.r, 1.0, places=9)
            self.assertAlmostEqual(s.t_of_r_derivative, 1.0, places=9)

    def test_conserved_quantities(self):
        for alpha in FAMILY_ALPHAS + (1.0,):
            for r in RADII[::10]:
                s = sample(alpha, float(r))
                scale = r * r
                self.assertAlmostEqual((s.B ** 2 - s.C ** 2) / scale, 2 * alpha ** 2 / scale, places=13)
                self.assertAlmostEqual((s.B ** 2 + s.C ** 2 - 2 * s.A2 ** 2) / scale, 0.0, places=13)
                if alpha < 1:
                    defining = s.A1 ** 2 * r * r * (r ** 4 - alpha ** 4)
                    self.assertAlmostEqual(defining / N(alpha, r), 1.0, places=11)
                    self.assertGreater(N(alpha, r), 0)
                    self.assertGreater(F_of_r(alpha, r), 0)

    def test_members_are_distinct(self):
        for r in (1.05, 2.0, 10.0):
            samples = [sample(alpha, r) for alpha in FAMILY_ALPHAS + (1.0,)]
            for left, right in zip(samples, samples[1:]):
                self.assertLess(right.C, left.C)
                self.assertGreater(right.B, left.B)


class ResidualTest(SimpleTestCase):

    def test_family_solves_general_system(self):
        for alpha in FAMILY_ALPHAS:
            worst = max(np.max(np.abs(residuals(alpha, float(r)))) for r in RADII)
            self.assertLess(worst, 1e-10, msg=f'alpha = {alpha}')

    def test_extended_precision_not_worse(self):
        for alpha in FAMILY_ALPHAS + (1.0,):
            extended = [residuals_extended(alpha, float(r)) for r in RADII]
            self.assertEqual(extended[0].dtype, np.longdouble)
            worst_double = max(np.max(np.abs(residuals(alpha, float(r)))) for r in RADII)
            worst_extended = max(np.max(np.abs(values)) for values in extended)
            self.assertLessEqual(worst_extended, worst_double, msg=f'alpha = {alpha}')

    def test_double_path_unchanged(self):
        self.assertEqual(residuals(0.5, 1.5).dtype, np.float64)
        np.testing.assert_allclose(
            residuals(0.5, 1.5), sample_residuals(sample(0.5, 1.5), reference_system()), rtol=0, atol=1e-13,
        )

    def test_alpha_zero_identity_exact(self):
        self.assertTrue(verify_alpha0_identity())

    def test_single_point(self):
        self.assertLess(np.max(np.abs(residuals(0.5, 1.5))), 1e-10)
        self.assertLess(np.max(np.abs(residuals(0.0, 2.0))), 1e-12)

    def test_wrong_branch_fails(self):
        s = sample(0.5, 1.5)
        flipped = replace(s, A3=-s.A3)
        self.assertGreaterEqual(np.max(np.abs(sample_residuals(flipped, reference_system()))), 0.1)

    def test_root_rejected(self):
        with self.assertRaises(DomainError):
            residuals(0.3, 1.0)

    def test_bc_equal_member(self):
        for r in (1.01, 1.5, 3.0, 20.0):
            self.assertLess(np.max(np.abs(residuals_bc_equal(r))), 1e-10)


class IdentityTest(SimpleTestCase):

    def test_linear_equation_for_F(self):
        self.assertTrue(verify_F_identity())

    def test_mutated_identity_fails(self):
        self.assertFalse(verify_F_identity(drop_middle=True))

    def test_root_normalization(self):
        self.assertTrue(verify_root_normalization())

    def test_matches_radial_form(self):
        alpha = Fraction(1, 2)
        point = {Symbol.rho: 4, Symbol.alpha: alpha, Symbol.beta: 2 * alpha ** 4 - 1}
        self.assertEqual(F_symbolic().evaluate(point), F_of_r(alpha, 2))


class LimitTest(SimpleTestCase):

    def test_neville(self):
        self.assertAlmostEqual(neville_at_zero([1.0, 2.0, 3.0], [6.0, 11.0, 18.0]), 3.0, places=12)

    def test_smooth_at_root(self):
        for alpha in FAMILY_ALPHAS:
            report = smoothness_limits(alpha)
            self.assertTrue(report.passed, msg=f'alpha = {alpha}: {report.checks()}')

    def test_documented_limits(self):
        report = smoothness_limits(0.5)
        self.assertAlmostEqual(report.abs_dA1, 4.0, delta=1e-6)
        report = smoothness_limits(0.0)
        self.assertLess(abs(report.dB), 1e-8)
        self.assertEqual(report.A2_at_root, -1.0)
        self.assertEqual(report.A3_at_root, 1.0)

    def test_boundary_member_rejected(self):
        with self.assertRaises(DomainError):
            smoothness_limits(1.0)


class HolonomyTest(SimpleTestCase):

    def test_labels(self):
        self.assertEqual(holonomy_evidence(1.0).label, SP2_LABEL)
        self.assertEqual(holonomy_evidence(0.5).label, SU4_LABEL)
        self.assertEqual(holonomy_evidence(0.0).label, SU4_LABEL)

    def test_cayley_and_kahler_closed_along_family(self):
        for alpha in FAMILY_ALPHAS + (1.0,):
            evidence = holonomy_evidence(alpha)
            self.assertLess(evidence.maxima['phi'], 1e-10)
            self.assertLess(evidence.maxima['omega1'], 1e-10)

    def test_second_kahler_form_open(self):
        report = closure_report(sample(0.5, 1.05).as_point(), reference_system())
        self.assertGreaterEqual(report.components['omega2']['dt^w2'], 0.3)

    def test_evidence_document(self):
        data = holonomy_evidence(1.0, radii=[1.5, 2.0]).as_dict()
        self.assertEqual([row['r'] for row in data['per_r']], [1.5, 2.0])
        self.assertEqual(set(data['maxima']), {'phi', 'omega1', 'omega2', 'omega3'})


class HomothetyTest(SimpleTestCase):

    def test_unit_member(self):
        s = sample(0.3, 1.0)
        alpha, scale = homothety_class(s.A3, s.B, s.C)
        self.assertAlmostEqual(alpha, 0.3, places=12)
        self.assertEqual(scale, 1.0)

    def test_rescaled_member(self):
        s = sample(0.6, 1.0)
        alpha, scale = homothety_class(2.5 * s.A3, 2.5 * s.B, 2.5 * s.C)
        self.assertAlmostEqual(alpha, 0.6, places=12)
        self.assertEqual(scale, 2.5)

    def test_constraint_violated(self):
        with self.assertRaises(InvalidSpec):
            homothety_class(1.0, 1.0, 0.5)
        with self.assertRaises(InvalidSpec):
            homothety_class(1.0, 0.5, math.sqrt(1.75))
