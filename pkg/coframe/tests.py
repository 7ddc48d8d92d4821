import random
from fractions import Fraction

from django.test import SimpleTestCase

from coframe.exceptions import DegreeOverflow, DerivativeSymbolPresent
from coframe.forms import ALL_BASIS, BasisElement, Form, eval_numeric, ext_d, wedge
from coframe.horizontal import PRODUCT_TABLE, HorizontalSymbol, horizontal_oracle, table_mismatches
from coframe.raw import RawForm, blade_sign
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.symbols import FUNCTIONS, Symbol

H = HorizontalSymbol
A1 = Poly.symbol(Symbol.A1)


def eta(i: int) -> Form:
    return Form.basis(f'e{i}')


def omega(symbol: HorizontalSymbol) -> Form:
    return Form.basis(horizontal=symbol)


def random_monomial_form(rng: random.Random, max_degree: int) -> Form:
    candidates = [b for b in ALL_BASIS if b.degree <= max_degree]
    basis = rng.choice(candidates)
    coeff = Poly.constant(rng.randint(1, 5))
    for _ in range(rng.randint(0, 3)):
        coeff = coeff * Poly.symbol(rng.choice(FUNCTIONS))
    return Form({basis: coeff}, basis.degree)


class RawAlgebraTest(SimpleTestCase):

    def test_blade_sign(self):
        self.assertEqual(blade_sign(0b0010, 0b0001), -1)
        self.assertEqual(blade_sign(0b0011, 0b1100), 1)
        self.assertEqual(blade_sign(0b0101, 0b0010), -1)

    def test_anticommuting_generators(self):
        g0, g1 = RawForm.generator(0), RawForm.generator(1)
        self.assertEqual(g0.wedge(g1), -g1.wedge(g0))
        self.assertTrue(g0.wedge(g0).is_zero())


class HorizontalTableTest(SimpleTestCase):

    def test_table_matches_oracle(self):
        oracle = horizontal_oracle()
        self.assertEqual(set(oracle), set(PRODUCT_TABLE))
        for key, value in oracle.items():
            self.assertEqual(PRODUCT_TABLE[key], value, msg=f'entrada {key}')
        self.assertEqual(table_mismatches(), {})

    def test_oracle_entries(self):
        oracle = horizontal_oracle()
        self.assertEqual(oracle[(H.W2, H.W2)], (-8, H.VOL))
        self.assertIsNone(oracle[(H.W2, H.W3)])
        self.assertEqual(oracle[(H.UNIT, H.W)], (1, H.W))
        self.assertEqual(oracle[(H.W, H.W)], (8, H.VOL))


class WedgeTest(SimpleTestCase):

    def test_repeated_one_form(self):
        self.assertTrue(wedge(eta(1), eta(1)).is_zero())

    def test_horizontal_squares(self):
        self.assertEqual(wedge(omega(H.W1), omega(H.W1)), omega(H.VOL) * -8)
        self.assertEqual(wedge(omega(H.W), omega(H.W)), omega(H.VOL) * 8)
        self.assertTrue(wedge(omega(H.W), omega(H.W1)).is_zero())

    def test_ordered_interleaving(self):
        left = Form.basis('dt', 'e1')
        right = Form.basis('e2', 'e3')
        self.assertEqual(wedge(left, right), Form.basis('dt', 'e1', 'e2', 'e3'))

    def test_transposition_sign(self):
        self.assertEqual(wedge(eta(2), eta(1)), Form.basis('e1', 'e2') * -1)

    def test_graded_anticommutativity_on_all_pairs(self):
        for a in ALL_BASIS:
            for b in ALL_BASIS:
                if a.degree + b.degree > 8:
                    continue
                fa, fb = Form({a: 1}), Form({b: 1})
                sign = (-1) ** (a.degree * b.degree)
                self.assertEqual(wedge(fa, fb), wedge(fb, fa) * sign, msg=f'{a} ^ {b}')

    def test_degree_overflow(self):
        top = Form.basis('dt', 'e1', 'e2', 'e3', horizontal=H.VOL)
        with self.assertRaises(DegreeOverflow):
            wedge(top, eta(1))


class ExteriorDerivativeTest(SimpleTestCase):

    def test_d_of_dt(self):
        self.assertTrue(ext_d(Form.basis('dt')).is_zero())

    def test_d_of_eta1(self):
        expected = omega(H.W1) - Form.basis('e2', 'e3') * 2
        self.assertEqual(ext_d(eta(1)), expected)

    def test_d_with_function_coefficient(self):
        form = Form.basis('e1', coeff=RatFunc(A1))
        expected = (
            Form.basis('dt', 'e1', coeff=RatFunc.symbol(Symbol.dA1))
            + Form.basis(horizontal=H.W1, coeff=RatFunc(A1))
            - Form.basis('e2', 'e3', coeff=RatFunc(2 * A1))
        )
        self.assertEqual(ext_d(form), expected)

    def test_d_of_w1(self):
        expected = (
            wedge(omega(H.W2), eta(3)) * 2
            - wedge(eta(2), omega(H.W3)) * 2
        )
        self.assertEqual(ext_d(omega(H.W1)), expected)

    def test_closed_horizontal_forms(self):
        self.assertTrue(ext_d(omega(H.W)).is_zero())
        self.assertTrue(ext_d(omega(H.VOL)).is_zero())

    def test_d_squared_on_generators(self):
        for form in [eta(1), eta(2), eta(3), omega(H.W1), omega(H.W2), omega(H.W3)]:
            self.assertTrue(ext_d(ext_d(form)).is_zero(), msg=str(form))

    def test_d_squared_on_all_basis_elements(self):
        for basis in ALL_BASIS:
            if basis.degree >= 7:
                continue
            self.assertTrue(ext_d(ext_d(Form({basis: 1}))).is_zero(), msg=basis.label)

    def test_second_derivative_rejected(self):
        first = ext_d(Form.basis('e1', coeff=RatFunc(A1)))
        with self.assertRaises(DerivativeSymbolPresent):
            ext_d(first)

    def test_leibniz_rule(self):
        rng = random.Random(11)
        checked = 0
        while checked < 200:
            a = random_monomial_form(rng, 4)
            b = random_monomial_form(rng, 7 - a.degree)
            left = ext_d(wedge(a, b))
            right = wedge(ext_d(a), b) + wedge(a, ext_d(b)) * (-1) ** a.degree
            self.assertEqual(left, right, msg=f'{a!r} {b!r}')
            checked += 1


class EvalNumericTest(SimpleTestCase):

    def test_zero_coefficient_value(self):
        values = eval_numeric(Form.basis('e1', coeff=RatFunc(A1)), {Symbol.A1: 0.0})
        self.assertTrue(all(v == 0 for v in values.values()))

    def test_volume_component(self):
        B, C = Poly.symbol(Symbol.B), Poly.symbol(Symbol.C)
        form = Form.basis(horizontal=H.VOL, coeff=RatFunc(B ** 2 * C ** 2))
        values = eval_numeric(form, {Symbol.B: 2.0, Symbol.C: 1.0})
        self.assertEqual(values[BasisElement(0, H.VOL)], 4.0)

    def test_exact_values(self):
        form = Form.basis('dt', coeff=RatFunc(A1, Poly.symbol(Symbol.B)))
        values = eval_numeric(form, {Symbol.A1: 1, Symbol.B: 3})
        self.assertEqual(values[BasisElement.of('dt')], Fraction(1, 3))
