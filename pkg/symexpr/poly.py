"""
Polinômios esparsos multivariados com coeficientes racionais exatos.

Os termos ficam num dicionário {vetor de expoentes: Fraction}; o vetor tem
uma entrada por Symbol. Coeficientes nulos nunca são armazenados.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple, Union

from symexpr.exceptions import InexactDivision, SymExprError
from symexpr.symbols import NSYMBOLS, Symbol

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]

ZERO_EXPONENTS: Exponents = (0,) * NSYMBOLS


def _unit_exponents(symbol: Symbol, power: int = 1) -> Exponents:
    exps = [0] * NSYMBOLS
    exps[int(symbol)] = power
    return tuple(exps)


def _add_exponents(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Exponents, b: Exponents) -> bool:
    """True se o monômio a divide o monômio b"""
    return all(x <= y for x, y in zip(a, b))


class Poly:
    """Polinômio imutável em Symbol com coeficientes Fraction"""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Exponents, Scalar]] = None):
        cleaned: Dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != NSYMBOLS:
                    raise SymExprError(f"Vetor de expoentes com tamanho {len(exps)}")
                if coeff:
                    cleaned[tuple(exps)] = Fraction(coeff)
        self._terms = cleaned

    @classmethod
    def _raw(cls, terms: Dict[Exponents, Fraction]) -> 'Poly':
        # termos já limpos (sem zeros, Fraction)
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    # ------------------------------------------------------------------
    # Construtores
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> 'Poly':
        return cls._raw({})

    @classmethod
    def one(cls) -> 'Poly':
        return cls.constant(1)

    @classmethod
    def constant(cls, value: Scalar) -> 'Poly':
        value = Fraction(value)
        return cls._raw({ZERO_EXPONENTS: value} if value else {})

    @classmethod
    def symbol(cls, symbol: Symbol, power: int = 1) -> 'Poly':
        if power < 0:
            raise SymExprError("Expoente negativo em Poly.symbol")
        return cls._raw({_unit_exponents(symbol, power): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Exponents, coeff: Scalar = 1) -> 'Poly':
        coeff = Fraction(coeff)
        return cls._raw({tuple(exps): coeff} if coeff else {})

    @classmethod
    def coerce(cls, value: Any) -> 'Poly':
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"Não é possível converter {type(value).__name__} em Poly")

    # ------------------------------------------------------------------
    # Inspeção
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Exponents, Fraction]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXPONENTS in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise SymExprError(f"Polinômio não constante: {self}")
        return self._terms.get(ZERO_EXPONENTS, Fraction(0))

    def degree(self) -> int:
        """Grau total (-1 para o polinômio nulo)"""
        return max((sum(exps) for exps in self._terms), default=-1)

    def degree_in(self, symbol: Symbol) -> int:
        index = int(symbol)
        return max((exps[index] for exps in self._terms), default=-1)

    def symbols(self) -> frozenset:
        found = set()
        for exps in self._terms:
            found.update(Symbol(i) for i, e in enumerate(exps) if e)
        return frozenset(found)

    def contains(self, symbol: Symbol) -> bool:
        return self.degree_in(symbol) > 0

    def leading_term(self) -> Tuple[Exponents, Fraction]:
        """Termo líder na ordem lexicográfica A1 > A2 > ... > rho"""
        if not self._terms:
            raise SymExprError("Polinômio nulo não tem termo líder")
        exps = max(self._terms)
        return exps, self._terms[exps]

    def content(self) -> Fraction:
        """Racional positivo c tal que self/c tem coeficientes inteiros primos entre si"""
        if not self._terms:
            return Fraction(1)
        coeffs = self._terms.values()
        num = reduce(gcd, (c.numerator for c in coeffs))
        den = reduce(lcm, (c.denominator for c in coeffs))
        return Fraction(abs(num), den)

    def monomial_gcd(self) -> Exponents:
        if not self._terms:
            return ZERO_EXPONENTS
        return tuple(min(col) for col in zip(*self._terms))

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------

    def __add__(self, other: Any) -> 'Poly':
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for exps, coeff in other._terms.items():
            value = result.get(exps, 0) + coeff
            if value:
                result[exps] = value
            else:
                result.pop(exps, None)
        return Poly._raw(result)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly._raw({exps: -coeff for exps, coeff in self._terms.items()})

    def __sub__(self, other: Any) -> 'Poly':
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'Poly':
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> 'Poly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        result: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = _add_exponents(e1, e2)
                value = result.get(exps, 0) + c1 * c2
                if value:
                    result[exps] = value
                else:
                    result.pop(exps, None)
        return Poly._raw(result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> 'Poly':
        if not isinstance(power, int) or power < 0:
            raise SymExprError(f"Expoente inválido para Poly: {power!r}")
        if power == 0:
            return Poly.one()
        half = self ** (power // 2)
        if power % 2:
            return self * half * half
        return half * half

    def scale(self, factor: Scalar) -> 'Poly':
        factor = Fraction(factor)
        if not factor:
            return Poly.zero()
        return Poly._raw({exps: coeff * factor for exps, coeff in self._terms.items()})

    def shift(self, exps: Exponents) -> 'Poly':
        """Multiplica por um monômio de coeficiente 1"""
        return Poly._raw({_add_exponents(e, exps): c for e, c in self._terms.items()})

    def divide_monomial(self, exps: Exponents) -> 'Poly':
        result = {}
        for e, c in self._terms.items():
            reduced = tuple(x - y for x, y in zip(e, exps))
            if min(reduced) < 0:
                raise InexactDivision(f"Monômio não divide {self}")
            result[reduced] = c
        return Poly._raw(result)

    def exact_div(self, divisor: 'Poly') -> 'Poly':
        """
        Divisão exata pelo algoritmo do termo líder (ordem lex).
        Levanta InexactDivision se sobrar resto.
        """
        divisor = Poly.coerce(divisor)
        if divisor.is_zero():
            raise SymExprError("Divisão de polinômio por zero")
        lead_exps, lead_coeff = divisor.leading_term()
        quotient: Dict[Exponents, Fraction] = {}
        remainder = self
        while not remainder.is_zero():
            rem_exps, rem_coeff = remainder.leading_term()
            if not _divides(lead_exps, rem_exps):
                raise InexactDivision(f"{self} não é divisível por {divisor}")
            exps = tuple(x - y for x, y in zip(rem_exps, lead_exps))
            coeff = rem_coeff / lead_coeff
            quotient[exps] = quotient.get(exps, 0) + coeff
            remainder = remainder - divisor.shift(exps).scale(coeff)
        return Poly._raw({e: c for e, c in quotient.items() if c})

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # ------------------------------------------------------------------
    # Cálculo e substituição
    # ------------------------------------------------------------------

    def partial(self, symbol: Symbol) -> 'Poly':
        """Derivada parcial formal em relação a symbol"""
        index = int(symbol)
        result = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e:
                lowered = exps[:index] + (e - 1,) + exps[index + 1:]
                result[lowered] = coeff * e
        return Poly._raw(result)

    def coefficient(self, symbol: Symbol, power: int) -> 'Poly':
        """Coeficiente de symbol**power, visto como polinômio nos demais símbolos"""
        index = int(symbol)
        result = {}
        for exps, coeff in self._terms.items():
            if exps[index] == power:
                result[exps[:index] + (0,) + exps[index + 1:]] = coeff
        return Poly._raw(result)

    def evaluate(self, point: Mapping[Symbol, Any]) -> Any:
        """
        Avalia o polinômio. Os valores podem vir de qualquer anel que aceite
        multiplicação por Fraction (int, Fraction, float, RatFunc, ...).
        """
        total: Any = 0
        for exps, coeff in self._terms.items():
            term: Any = coeff
            for index, e in enumerate(exps):
                if e:
                    try:
                        value = point[Symbol(index)]
                    except KeyError:
                        raise SymExprError(f"Valor ausente para {Symbol(index).name}") from None
                    term = term * value ** e
            total = total + term
        return total

    def substitute(self, mapping: Mapping[Symbol, 'Poly']) -> 'Poly':
        """Troca símbolos por polinômios; os demais símbolos permanecem"""
        point = {s: Poly.symbol(s) for s in self.symbols()}
        point.update({s: Poly.coerce(p) for s, p in mapping.items()})
        return Poly.coerce(self.evaluate(point))

    # ------------------------------------------------------------------
    # Texto
    # ------------------------------------------------------------------

    def sorted_terms(self):
        """Ordem canônica: grau total decrescente, depois lex decrescente"""
        return sorted(self._terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])))

    def to_text(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for index, e in enumerate(exps):
                if e == 1:
                    factors.append(Symbol(index).name)
                elif e > 1:
                    factors.append(f'{Symbol(index).name}^{e}')
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = '*'.join(factors)
            else:
                body = f"{magnitude}*{'*'.join(factors)}"
            sign = '-' if coeff < 0 else '+'
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'Poly({self.to_text()})'
