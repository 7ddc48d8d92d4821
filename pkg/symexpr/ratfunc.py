"""
Funções racionais num/den sobre Poly.

Forma normal: fatores monomiais comuns cancelados, num e den com
coeficientes inteiros sem fator comum, termo líder de den positivo. Não há MDC polinomial; a igualdade é decidida por
multiplicação cruzada.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Mapping

from symexpr.exceptions import DivisionByZero, InexactDivision, SymExprError
from symexpr.poly import Poly, Scalar
from symexpr.symbols import Symbol

# abaixo disso um denominador em ponto flutuante é tratado como nulo
FLOAT_ZERO = 1e-300


def _is_zero_value(value: Any) -> bool:
    if isinstance(value, float):
        return abs(value) < FLOAT_ZERO
    return value == 0


class RatFunc:
    """Função racional imutável"""

    __slots__ = ('num', 'den')

    def __init__(self, num: Any, den: Any = 1):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero():
            raise DivisionByZero(f"Denominador nulo (numerador {num})")
        num, den = self._normalize(num, den)
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc é imutável")

    @staticmethod
    def _normalize(num: Poly, den: Poly):
        if num.is_zero():
            return Poly.zero(), Poly.one()
        common = tuple(min(a, b) for a, b in zip(num.monomial_gcd(), den.monomial_gcd()))
        if any(common):
            num = num.divide_monomial(common)
            den = den.divide_monomial(common)
        if not den.is_monomial() and num.degree() >= den.degree():
            try:
                num, den = num.exact_div(den), Poly.one()
            except InexactDivision:
                pass
        # num e den inteiros, sem conteúdo comum
        num_content, den_content = num.content(), den.content()
        scale = Fraction(
            gcd(num_content.numerator, den_content.numerator),
            lcm(num_content.denominator, den_content.denominator),
        )
        if den.leading_term()[1] < 0:
            scale = -scale
        if scale != 1:
            num = num.scale(1 / scale)
            den = den.scale(1 / scale)
        return num, den

    # ------------------------------------------------------------------
    # Construtores
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar) -> 'RatFunc':
        return cls(Poly.constant(value))

    @classmethod
    def symbol(cls, symbol: Symbol, power: int = 1) -> 'RatFunc':
        return cls(Poly.symbol(symbol, power))

    @classmethod
    def coerce(cls, value: Any) -> 'RatFunc':
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction, Poly)):
            return cls(value)
        raise TypeError(f"Não é possível converter {type(value).__name__} em RatFunc")

    # ------------------------------------------------------------------
    # Inspeção
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise SymExprError(f"Não é polinômio: {self}")
        return self.num.scale(1 / self.den.constant_value())

    def has_monomial_denominator(self) -> bool:
        return self.den.is_monomial()

    def symbols(self) -> frozenset:
        return self.num.symbols() | self.den.symbols()

    def contains(self, symbol: Symbol) -> bool:
        return self.num.contains(symbol) or self.den.contains(symbol)

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------

    def __add__(self, other: Any) -> 'RatFunc':
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_monomial() and other.den.is_monomial():
            (e1, c1), = self.den.items()
            (e2, c2), = other.den.items()
            common = tuple(max(a, b) for a, b in zip(e1, e2))
            left = self.num.shift(tuple(c - a for c, a in zip(common, e1))).scale(c2)
            right = other.num.shift(tuple(c - b for c, b in zip(common, e2))).scale(c1)
            return RatFunc(left + right, Poly.monomial(common, c1 * c2))
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> 'RatFunc':
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Any) -> 'RatFunc':
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'RatFunc':
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> 'RatFunc':
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den)
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(Poly.zero())
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'RatFunc':
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"Divisão de {self} por zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> 'RatFunc':
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, power: int) -> 'RatFunc':
        if not isinstance(power, int):
            raise SymExprError(f"Expoente inválido para RatFunc: {power!r}")
        if power < 0:
            if self.is_zero():
                raise DivisionByZero("Potência negativa de zero")
            return RatFunc(self.den ** -power, self.num ** -power)
        return RatFunc(self.num ** power, self.den ** power)

    def __eq__(self, other: Any) -> bool:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    # ------------------------------------------------------------------
    # Cálculo, avaliação e substituição
    # ------------------------------------------------------------------

    def partial(self, symbol: Symbol) -> 'RatFunc':
        dnum = self.num.partial(symbol)
        dden = self.den.partial(symbol)
        if dden.is_zero():
            return RatFunc(dnum, self.den)
        return RatFunc(dnum * self.den - self.num * dden, self.den * self.den)

    def evaluate(self, point: Mapping[Symbol, Any]) -> Any:
        """
        Valor exato com entradas racionais, double com entradas double.
        Levanta DivisionByZero se o denominador se anula no ponto.
        """
        den = self.den.evaluate(point)
        if _is_zero_value(den):
            raise DivisionByZero(f"Denominador {self.den} se anula no ponto")
        num = self.num.evaluate(point)
        if isinstance(num, int) and isinstance(den, int):
            return Fraction(num, den)
        return num / den

    def substitute(self, mapping: Mapping[Symbol, Any]) -> 'RatFunc':
        """Troca símbolos por funções racionais (ou constantes)"""
        involved = self.symbols()
        point = {s: RatFunc.coerce(v) for s, v in mapping.items() if s in involved}
        if not point:
            return self
        for s in involved:
            point.setdefault(s, RatFunc.symbol(s))
        num = RatFunc.coerce(self.num.evaluate(point))
        den = RatFunc.coerce(self.den.evaluate(point))
        return num / den

    # ------------------------------------------------------------------
    # Texto
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        if self.den == Poly.one():
            return self.num.to_text()
        num = self.num.to_text()
        den = self.den.to_text()
        if len(self.num) > 1:
            num = f'({num})'
        if '*' in den or ' ' in den:
            den = f'({den})'
        return f'{num}/{den}'

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'RatFunc({self.to_text()})'
