import random
from fractions import Fraction

from django.test import SimpleTestCase

from symexpr.exceptions import DivisionByZero, InexactDivision, NonTerminating
from symexpr.numeric import CompiledRatFuncs
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.rewrite import RewriteRule, rewrite
from symexpr.symbols import Symbol

A1, A2, A3, B, C = (Poly.symbol(s) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C))
ALPHA = Poly.symbol(Symbol.alpha)
RHO = Poly.symbol(Symbol.rho)

ANSATZ = [
    RewriteRule(Symbol.A3, 1, -A2),
    RewriteRule(Symbol.B, 2, A2 ** 2 + ALPHA ** 2),
    RewriteRule(Symbol.C, 2, A2 ** 2 - ALPHA ** 2),
]

BASE = (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C)


def random_poly(rng: random.Random, terms: int = 3, degree: int = 2) -> Poly:
    poly = Poly.zero()
    for _ in range(terms):
        monomial = Poly.constant(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        for _ in range(rng.randint(0, degree)):
            monomial = monomial * Poly.symbol(rng.choice(BASE))
        poly = poly + monomial
    return poly


def random_point(rng: random.Random):
    return {s: Fraction(rng.randint(1, 40), rng.randint(1, 7)) for s in BASE}


class PolyArithmeticTest(SimpleTestCase):
    """Operações exatas sobre Poly"""

    def test_additive_inverse(self):
        self.assertTrue((A1 + (-A1)).is_zero())

    def test_difference_of_squares(self):
        self.assertEqual((A2 + A3) * (A2 - A3), A2 ** 2 - A3 ** 2)

    def test_constraint_polynomial(self):
        result = (B ** 2 + C ** 2) - 2 * A2 ** 2
        self.assertEqual(len(result), 3)
        self.assertEqual(result.coefficient(Symbol.A2, 2), Poly.constant(-2))

    def test_ring_axioms_on_random_triples(self):
        rng = random.Random(20240611)
        for _ in range(1000):
            a, b, c = (random_poly(rng) for _ in range(3))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)

    def test_power_by_squaring(self):
        p = A1 + 2 * B
        self.assertEqual(p ** 5, p * p * p * p * p)
        self.assertEqual(p ** 0, Poly.one())

    def test_exact_division(self):
        divisor = A2 ** 2 - ALPHA ** 2
        product = divisor * (A1 * B + 3)
        self.assertEqual(product.exact_div(divisor), A1 * B + 3)
        with self.assertRaises(InexactDivision):
            (product + 1).exact_div(divisor)

    def test_content_and_monomial_gcd(self):
        p = Poly.constant(Fraction(2, 3)) * A1 ** 2 * B + Poly.constant(Fraction(4, 9)) * A1 * B ** 3
        self.assertEqual(p.content(), Fraction(2, 9))
        self.assertEqual(Poly.monomial(p.monomial_gcd()), A1 * B)

    def test_text_is_deterministic(self):
        p = 3 * A1 ** 2 - A2 * B + Fraction(1, 2)
        q = Fraction(1, 2) + 3 * A1 ** 2 - B * A2
        self.assertEqual(p.to_text(), q.to_text())
        self.assertEqual(p.to_text(), '3*A1^2 - A2*B + 1/2')


class PartialDerivativeTest(SimpleTestCase):

    def test_power_rule(self):
        self.assertEqual((A1 ** 2 * B).partial(Symbol.A1), 2 * A1 * B)

    def test_independent_symbol(self):
        self.assertTrue(C.partial(Symbol.A1).is_zero())

    def test_against_finite_differences(self):
        # diferença central é exata para polinômios quadráticos em B
        p = B ** 2 * C ** 2
        derivative = p.partial(Symbol.B)
        self.assertEqual(derivative, 2 * B * C ** 2)
        rng = random.Random(7)
        h = Fraction(1, 1000)
        for _ in range(20):
            point = random_point(rng)
            ahead = dict(point)
            behind = dict(point)
            ahead[Symbol.B] = point[Symbol.B] + h
            behind[Symbol.B] = point[Symbol.B] - h
            central = (p.evaluate(ahead) - p.evaluate(behind)) / (2 * h)
            self.assertEqual(central, derivative.evaluate(point))


class RatFuncEvalTest(SimpleTestCase):

    def test_reciprocal(self):
        f = RatFunc(1, RHO)
        self.assertEqual(f.evaluate({Symbol.rho: 4}), Fraction(1, 4))

    def test_integrating_multiplier_sum(self):
        a2 = ALPHA ** 2
        g = RatFunc(1, RHO) + RatFunc(1, RHO - a2) + RatFunc(1, RHO + a2)
        value = g.evaluate({Symbol.rho: 2, Symbol.alpha: 1})
        self.assertEqual(value, Fraction(11, 6))

    def test_zero_numerator(self):
        f = RatFunc(A1, A3)
        self.assertEqual(f.evaluate({Symbol.A1: 0, Symbol.A3: 1}), 0)

    def test_float_evaluation(self):
        f = RatFunc(A1, A3)
        self.assertAlmostEqual(f.evaluate({Symbol.A1: 1.0, Symbol.A3: 4.0}), 0.25)

    def test_division_by_zero(self):
        f = RatFunc(A1, A2 - A3)
        with self.assertRaises(DivisionByZero):
            f.evaluate({Symbol.A1: 1, Symbol.A2: 2, Symbol.A3: 2})
        with self.assertRaises(DivisionByZero):
            f.evaluate({Symbol.A1: 1.0, Symbol.A2: 2.0, Symbol.A3: 2.0})
        with self.assertRaises(DivisionByZero):
            RatFunc(A1, Poly.zero())

    def test_normal_form(self):
        f = RatFunc(-2 * A1 * B, -6 * A1 * A2)
        self.assertEqual(f.num, B)
        self.assertEqual(f.den, 3 * A2)
        g = RatFunc((A2 ** 2 - ALPHA ** 2) * A1, A2 ** 2 - ALPHA ** 2)
        self.assertEqual(g.den, Poly.one())

    def test_normal_form_is_integral(self):
        f = RatFunc(
            A1.scale(Fraction(1, 2)) + B.scale(Fraction(2, 3)),
            A2.scale(Fraction(3, 4)) - C.scale(Fraction(1, 6)),
        )
        self.assertEqual(f.num, 6 * A1 + 8 * B)
        self.assertEqual(f.den, 9 * A2 - 2 * C)
        for _, coeff in list(f.num.items()) + list(f.den.items()):
            self.assertEqual(coeff.denominator, 1)
        g = RatFunc(B.scale(Fraction(-1, 2)), -A2)
        self.assertEqual(g.num, B)
        self.assertEqual(g.den, 2 * A2)
        self.assertEqual((RatFunc(A1, 2 * B) + RatFunc(A1, 3 * C)).den, 6 * B * C)
        self.assertEqual(RatFunc(A1.scale(Fraction(1, 4))).as_poly(), A1.scale(Fraction(1, 4)))

    def test_cross_multiplication_agrees_with_evaluation(self):
        rng = random.Random(99)
        f = RatFunc(A1 ** 2 - A2 ** 2, A2 * B) + RatFunc(A1, A3)
        g = RatFunc((A1 ** 2 - A2 ** 2) * A3 + A1 * A2 * B, A2 * A3 * B)
        h = g + RatFunc(1, C)
        self.assertEqual(f, g)
        self.assertNotEqual(f, h)
        for _ in range(20):
            point = random_point(rng)
            self.assertEqual(f.evaluate(point), g.evaluate(point))
            self.assertNotEqual(f.evaluate(point), h.evaluate(point))

    def test_quotient_rule(self):
        f = RatFunc(A1, B)
        self.assertEqual(f.partial(Symbol.B), RatFunc(-A1, B ** 2))

    def test_substitute(self):
        f = RatFunc(A1 * B, C)
        g = f.substitute({Symbol.B: RatFunc(1, A2), Symbol.C: RatFunc(A3)})
        self.assertEqual(g, RatFunc(A1, A2 * A3))

    def test_compiled_matches_exact(self):
        funcs = [RatFunc(A1 ** 2 - A2 * A3, A2 * A3), RatFunc(B * C + 1, B)]
        compiled = CompiledRatFuncs(funcs)
        point = {Symbol.A1: 0.5, Symbol.A2: -1.5, Symbol.A3: 2.0, Symbol.B: 3.0, Symbol.C: 0.25}
        values = compiled.evaluate(point)
        for value, f in zip(values, funcs):
            self.assertAlmostEqual(value, f.evaluate(point), places=14)


class RewriteTest(SimpleTestCase):

    def test_sum_vanishes_on_ansatz(self):
        self.assertTrue(rewrite(RatFunc(A2 + A3), ANSATZ[:1]).is_zero())

    def test_constraint_vanishes(self):
        self.assertTrue(rewrite(RatFunc(B ** 2 + C ** 2 - 2 * A2 ** 2), ANSATZ).is_zero())

    def test_reduced_first_equation_term(self):
        f = RatFunc(A1 ** 2 * (B ** 2 + C ** 2), B ** 2 * C ** 2)
        expected = RatFunc(2 * A1 ** 2 * A2 ** 2, A2 ** 4 - ALPHA ** 4)
        self.assertEqual(rewrite(f, ANSATZ), expected)

    def test_odd_powers_keep_one_factor(self):
        result = rewrite(RatFunc(B ** 3 * C), ANSATZ)
        self.assertEqual(result.num.degree_in(Symbol.B), 1)
        self.assertEqual(result, RatFunc((A2 ** 2 + ALPHA ** 2) * B * C))

    def test_idempotent(self):
        rng = random.Random(3)
        for _ in range(50):
            f = RatFunc(random_poly(rng, degree=4)) + RatFunc(1, B * C)
            once = rewrite(f, ANSATZ)
            self.assertEqual(rewrite(once, ANSATZ), once)
            self.assertFalse(once.contains(Symbol.A3))

    def test_cyclic_rules(self):
        rules = [RewriteRule(Symbol.A2, 1, A3), RewriteRule(Symbol.A3, 1, A2)]
        with self.assertRaises(NonTerminating):
            rewrite(RatFunc(A2 * B), rules)
