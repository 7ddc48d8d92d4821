"""
Formas na álgebra graduada do coreferencial: base (subconjunto vertical de
{dt, e1, e2, e3}) x (símbolo horizontal), coeficientes RatFunc.

Convenção única de ordem: dt < e1 < e2 < e3, símbolo horizontal por último.
Aqui e1, e2, e3 denotam eta1, eta2, eta3 (sem os fatores A_i).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence

from coframe.exceptions import CoframeError, DegreeOverflow, DerivativeSymbolPresent
from coframe.horizontal import HorizontalSymbol, multiply
from coframe.raw import blade_sign
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.rewrite import RewriteRule, rewrite
from symexpr.symbols import DERIVATIVE_OF, DERIVATIVES, FUNCTIONS, Symbol

logger = logging.getLogger(__name__)

MAX_DEGREE = 8

VERTICAL_NAMES = ('dt', 'e1', 'e2', 'e3')
DT, E1, E2, E3 = 0, 1, 2, 3


@dataclass(frozen=True)
class BasisElement:
    vertical: int
    horizontal: HorizontalSymbol = HorizontalSymbol.UNIT

    def __post_init__(self):
        if not 0 <= self.vertical < 16:
            raise CoframeError(f"Máscara vertical inválida: {self.vertical}")

    @classmethod
    def of(cls, *names: str, horizontal: Any = HorizontalSymbol.UNIT) -> 'BasisElement':
        """BasisElement.of('dt', 'e1', horizontal='w1')"""
        mask = 0
        for name in names:
            try:
                mask |= 1 << VERTICAL_NAMES.index(name)
            except ValueError:
                raise CoframeError(f"Gerador vertical desconhecido: {name!r}") from None
        if isinstance(horizontal, str):
            horizontal = HorizontalSymbol[horizontal.upper()]
        return cls(mask, HorizontalSymbol(horizontal))

    @property
    def indices(self) -> tuple:
        return tuple(i for i in range(4) if self.vertical >> i & 1)

    @property
    def degree(self) -> int:
        return len(self.indices) + self.horizontal.degree

    def sort_key(self):
        return (self.degree, self.indices, int(self.horizontal))

    @property
    def label(self) -> str:
        parts = [VERTICAL_NAMES[i] for i in self.indices]
        if self.horizontal is not HorizontalSymbol.UNIT:
            parts.append(self.horizontal.label)
        return '^'.join(parts) if parts else '1'

    def __str__(self) -> str:
        return self.label


ALL_BASIS = tuple(
    sorted(
        (BasisElement(mask, h) for mask in range(16) for h in HorizontalSymbol),
        key=BasisElement.sort_key,
    )
)


def wedge_basis(a: BasisElement, b: BasisElement) -> Optional[tuple]:
    """(sinal inteiro, BasisElement) ou None se o produto se anula"""
    if a.vertical & b.vertical:
        return None
    product = multiply(a.horizontal, b.horizontal)
    if product is None:
        return None
    factor, horizontal = product
    # símbolos horizontais têm grau par e comutam com tudo
    sign = blade_sign(a.vertical, b.vertical)
    return sign * factor, BasisElement(a.vertical | b.vertical, horizontal)


class Form:
    """Forma homogênea imutável"""

    __slots__ = ('_coeffs', 'degree')

    def __init__(self, coeffs: Optional[Mapping[BasisElement, Any]] = None, degree: Optional[int] = None):
        cleaned: Dict[BasisElement, RatFunc] = {}
        for basis, coeff in (coeffs or {}).items():
            coeff = RatFunc.coerce(coeff)
            if not coeff.is_zero():
                cleaned[basis] = coeff
        degrees = {basis.degree for basis in cleaned}
        if len(degrees) > 1:
            raise CoframeError(f"Forma não homogênea: graus {sorted(degrees)}")
        if degrees:
            found = degrees.pop()
            if degree is not None and degree != found:
                raise CoframeError(f"Grau declarado {degree} difere do grau {found}")
            degree = found
        self._coeffs = cleaned
        self.degree = degree

    # ------------------------------------------------------------------
    # Construtores
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, degree: Optional[int] = None) -> 'Form':
        return cls({}, degree)

    @classmethod
    def scalar(cls, coeff: Any) -> 'Form':
        return cls({BasisElement(0): coeff}, 0)

    @classmethod
    def basis(cls, *names: str, horizontal: Any = HorizontalSymbol.UNIT, coeff: Any = 1) -> 'Form':
        element = BasisElement.of(*names, horizontal=horizontal)
        return cls({element: coeff}, element.degree)

    # ------------------------------------------------------------------
    # Inspeção
    # ------------------------------------------------------------------

    def items(self):
        return sorted(self._coeffs.items(), key=lambda item: item[0].sort_key())

    def __len__(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def component(self, basis: BasisElement) -> RatFunc:
        return self._coeffs.get(basis, RatFunc.constant(0))

    def __getitem__(self, basis: BasisElement) -> RatFunc:
        return self.component(basis)

    def symbols(self) -> frozenset:
        found = frozenset()
        for coeff in self._coeffs.values():
            found |= coeff.symbols()
        return found

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------

    def _check_degree(self, other: 'Form'):
        if self.degree is not None and other.degree is not None and self.degree != other.degree:
            raise CoframeError(f"Soma de formas de graus {self.degree} e {other.degree}")

    def __add__(self, other: 'Form') -> 'Form':
        if not isinstance(other, Form):
            return NotImplemented
        self._check_degree(other)
        coeffs = dict(self._coeffs)
        for basis, coeff in other._coeffs.items():
            coeffs[basis] = coeffs[basis] + coeff if basis in coeffs else coeff
        degree = self.degree if self.degree is not None else other.degree
        return Form(coeffs, degree)

    def __neg__(self) -> 'Form':
        return Form({basis: -coeff for basis, coeff in self._coeffs.items()}, self.degree)

    def __sub__(self, other: 'Form') -> 'Form':
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor: Any) -> 'Form':
        """Produto por escalar (int, Fraction, Poly ou RatFunc)"""
        if isinstance(factor, Form):
            return NotImplemented
        factor = RatFunc.coerce(factor)
        return Form({basis: coeff * factor for basis, coeff in self._coeffs.items()}, self.degree)

    __rmul__ = __mul__

    def wedge(self, other: 'Form') -> 'Form':
        return wedge(self, other)

    def __xor__(self, other: 'Form') -> 'Form':
        return wedge(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.component(k) == other.component(k) for k in keys)

    __hash__ = None

    # ------------------------------------------------------------------
    # Substituição e avaliação
    # ------------------------------------------------------------------

    def map_coefficients(self, func) -> 'Form':
        return Form({basis: func(coeff) for basis, coeff in self._coeffs.items()}, self.degree)

    def substitute(self, mapping: Mapping[Symbol, Any]) -> 'Form':
        return self.map_coefficients(lambda coeff: coeff.substitute(mapping))

    def rewrite(self, rules: Sequence[RewriteRule]) -> 'Form':
        return self.map_coefficients(lambda coeff: rewrite(coeff, rules))

    def to_text(self) -> str:
        if not self._coeffs:
            return '0'
        return '\n'.join(f'({coeff}) {basis.label}' for basis, coeff in self.items())

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'Form(degree={self.degree}, terms={len(self._coeffs)})'


def wedge(a: Form, b: Form) -> Form:
    """Produto exterior bilinear; sinal pelas transposições verticais"""
    if a.degree is not None and b.degree is not None and a.degree + b.degree > MAX_DEGREE:
        raise DegreeOverflow(f"Grau {a.degree} + {b.degree} excede {MAX_DEGREE}")
    degree = None if a.degree is None or b.degree is None else a.degree + b.degree
    coeffs: Dict[BasisElement, RatFunc] = {}
    for ba, ca in a._coeffs.items():
        for bb, cb in b._coeffs.items():
            product = wedge_basis(ba, bb)
            if product is None:
                continue
            sign, basis = product
            term = ca * cb * sign
            coeffs[basis] = coeffs[basis] + term if basis in coeffs else term
    return Form(coeffs, degree)


def wedge_all(forms: Iterable[Form]) -> Form:
    result = Form.scalar(1)
    for form in forms:
        result = wedge(result, form)
    return result


# ----------------------------------------------------------------------
# Derivada exterior
# ----------------------------------------------------------------------

ConstantForm = Dict[BasisElement, Fraction]


def _generator_differential(index: int) -> ConstantForm:
    """d dos geradores verticais: d(dt) = 0, d(eta_i) = w_i - 2 eta_{i+1} ^ eta_{i+2}"""
    H = HorizontalSymbol
    if index == DT:
        return {}
    if index == E1:
        return {BasisElement(0, H.W1): Fraction(1), BasisElement.of('e2', 'e3'): Fraction(-2)}
    if index == E2:
        # -2 eta3 ^ eta1 = +2 eta1 ^ eta3
        return {BasisElement(0, H.W2): Fraction(1), BasisElement.of('e1', 'e3'): Fraction(2)}
    return {BasisElement(0, H.W3): Fraction(1), BasisElement.of('e1', 'e2'): Fraction(-2)}


def _horizontal_differential(symbol: HorizontalSymbol) -> ConstantForm:
    """d w_i = 2 w_{i+1} ^ eta_{i+2} - 2 eta_{i+1} ^ w_{i+2}; dw = d(vol) = 0"""
    H = HorizontalSymbol
    if symbol is H.W1:
        return {BasisElement.of('e3', horizontal=H.W2): Fraction(2), BasisElement.of('e2', horizontal=H.W3): Fraction(-2)}
    if symbol is H.W2:
        return {BasisElement.of('e1', horizontal=H.W3): Fraction(2), BasisElement.of('e3', horizontal=H.W1): Fraction(-2)}
    if symbol is H.W3:
        return {BasisElement.of('e2', horizontal=H.W1): Fraction(2), BasisElement.of('e1', horizontal=H.W2): Fraction(-2)}
    return {}


def _wedge_constant(left: ConstantForm, right: ConstantForm) -> ConstantForm:
    result: ConstantForm = {}
    for ba, ca in left.items():
        for bb, cb in right.items():
            product = wedge_basis(ba, bb)
            if product is None:
                continue
            sign, basis = product
            result[basis] = result.get(basis, 0) + sign * ca * cb
    return {b: c for b, c in result.items() if c}


@lru_cache(maxsize=None)
def basis_differential(basis: BasisElement) -> tuple:
    """
    d de um elemento de base com coeficiente 1, pela regra de Leibniz:
    d(g ^ resto) = dg ^ resto - g ^ d(resto).
    Retorna tuple de pares (BasisElement, Fraction) para permitir cache.
    """
    indices = basis.indices
    if not indices:
        return tuple(_horizontal_differential(basis.horizontal).items())
    first = indices[0]
    rest = BasisElement(basis.vertical & ~(1 << first), basis.horizontal)
    generator = {BasisElement(1 << first): Fraction(1)}
    result = _wedge_constant(_generator_differential(first), {rest: Fraction(1)})
    for element, coeff in _wedge_constant(generator, dict(basis_differential(rest))).items():
        result[element] = result.get(element, 0) - coeff
    return tuple((b, c) for b, c in result.items() if c)


def ext_d(form: Form) -> Form:
    """
    d(c * beta) = sum_X (dc/dX) dX * dt ^ beta + c * d(beta),
    com X em {A1, A2, A3, B, C}.
    """
    degree = None if form.degree is None else form.degree + 1
    if degree is not None and degree > MAX_DEGREE:
        raise DegreeOverflow(f"d de uma forma de grau {form.degree}")
    dt = BasisElement(1 << DT)
    coeffs: Dict[BasisElement, RatFunc] = {}

    def accumulate(basis: BasisElement, term: RatFunc):
        coeffs[basis] = coeffs[basis] + term if basis in coeffs else term

    for basis, coeff in form._coeffs.items():
        present = [s.name for s in DERIVATIVES if coeff.contains(s)]
        if present:
            raise DerivativeSymbolPresent(f"Coeficiente de {basis.label} contém {present}")
        chain = wedge_basis(dt, basis)
        if chain is not None:
            sign, target = chain
            for function in FUNCTIONS:
                if coeff.contains(function):
                    derivative = coeff.partial(function) * RatFunc.symbol(DERIVATIVE_OF[function])
                    accumulate(target, derivative * sign)
        for target, constant in basis_differential(basis):
            accumulate(target, coeff * constant)
    return Form(coeffs, degree)


def eval_numeric(form: Form, point: Mapping[Symbol, Any]) -> Dict[BasisElement, Any]:
    """Avaliação componente a componente (DivisionByZero propagado)"""
    return {basis: coeff.evaluate(point) for basis, coeff in form.items()}


def max_abs_component(form: Form, point: Mapping[Symbol, Any]) -> float:
    values = eval_numeric(form, point)
    return float(max((abs(v) for v in values.values()), default=0.0))


def coefficient_form(poly: Poly, *names: str, horizontal: Any = HorizontalSymbol.UNIT) -> Form:
    """Atalho: poly * elemento de base"""
    return Form.basis(*names, horizontal=horizontal, coeff=RatFunc(poly))
