"""
Símbolos horizontais {1, w1, w2, w3, w, vol} e sua tabela de produtos.

Em termos de eta4..eta7:
  w1 = 2(eta45 - eta67), w2 = 2(eta46 - eta75), w3 = 2(eta47 - eta56),
  w  = 2(eta45 + eta67), vol = eta4567.
"""
import logging
from enum import IntEnum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from coframe.exceptions import CoframeError
from coframe.raw import RawForm

logger = logging.getLogger(__name__)


class HorizontalSymbol(IntEnum):
    UNIT = 0
    W1 = 1
    W2 = 2
    W3 = 3
    W = 4
    VOL = 5

    @property
    def degree(self) -> int:
        if self is HorizontalSymbol.UNIT:
            return 0
        if self is HorizontalSymbol.VOL:
            return 4
        return 2

    @property
    def label(self) -> str:
        return self.name.lower()


H = HorizontalSymbol

# (coeficiente, símbolo) ou None quando o produto é nulo
Product = Optional[Tuple[int, HorizontalSymbol]]

PRODUCT_TABLE: Dict[Tuple[HorizontalSymbol, HorizontalSymbol], Product] = {
    (H.UNIT, H.UNIT): (1, H.UNIT),
    (H.UNIT, H.W1): (1, H.W1),
    (H.UNIT, H.W2): (1, H.W2),
    (H.UNIT, H.W3): (1, H.W3),
    (H.UNIT, H.W): (1, H.W),
    (H.UNIT, H.VOL): (1, H.VOL),
    (H.W1, H.UNIT): (1, H.W1),
    (H.W1, H.W1): (-8, H.VOL),
    (H.W1, H.W2): None,
    (H.W1, H.W3): None,
    (H.W1, H.W): None,
    (H.W1, H.VOL): None,
    (H.W2, H.UNIT): (1, H.W2),
    (H.W2, H.W1): None,
    (H.W2, H.W2): (-8, H.VOL),
    (H.W2, H.W3): None,
    (H.W2, H.W): None,
    (H.W2, H.VOL): None,
    (H.W3, H.UNIT): (1, H.W3),
    (H.W3, H.W1): None,
    (H.W3, H.W2): None,
    (H.W3, H.W3): (-8, H.VOL),
    (H.W3, H.W): None,
    (H.W3, H.VOL): None,
    (H.W, H.UNIT): (1, H.W),
    (H.W, H.W1): None,
    (H.W, H.W2): None,
    (H.W, H.W3): None,
    (H.W, H.W): (8, H.VOL),
    (H.W, H.VOL): None,
    (H.VOL, H.UNIT): (1, H.VOL),
    (H.VOL, H.W1): None,
    (H.VOL, H.W2): None,
    (H.VOL, H.W3): None,
    (H.VOL, H.W): None,
    (H.VOL, H.VOL): None,
}


def multiply(left: HorizontalSymbol, right: HorizontalSymbol) -> Product:
    """Consulta a tabela"""
    return PRODUCT_TABLE[(left, right)]


def raw_expansion(symbol: HorizontalSymbol) -> RawForm:
    """Expansão em eta4..eta7 (geradores 0..3 da álgebra crua)"""
    e = RawForm.blade
    if symbol is H.UNIT:
        return RawForm({0: 1})
    if symbol is H.W1:
        return (e((0, 1)) - e((2, 3))).scale(2)
    if symbol is H.W2:
        return (e((0, 2)) - e((3, 1))).scale(2)
    if symbol is H.W3:
        return (e((0, 3)) - e((1, 2))).scale(2)
    if symbol is H.W:
        return (e((0, 1)) + e((2, 3))).scale(2)
    return e((0, 1, 2, 3))


def decompose(form: RawForm) -> Product:
    """Escreve uma forma crua como c * símbolo, se possível"""
    if form.is_zero():
        return None
    for symbol in HorizontalSymbol:
        candidate = raw_expansion(symbol)
        mask = next(iter(candidate.terms))
        if mask not in form.terms:
            continue
        ratio = Fraction(form.terms[mask]) / Fraction(candidate.terms[mask])
        if candidate.scale(ratio) == form:
            if ratio.denominator != 1:
                raise CoframeError(f"Coeficiente não inteiro {ratio} em {symbol.label}")
            return int(ratio), symbol
    raise CoframeError(f"Forma fora da subálgebra horizontal: {form}")


def horizontal_oracle() -> Dict[Tuple[HorizontalSymbol, HorizontalSymbol], Product]:
    """Tabela de produtos calculada por força bruta em eta4..eta7"""
    table = {}
    for left in HorizontalSymbol:
        for right in HorizontalSymbol:
            product = raw_expansion(left).wedge(raw_expansion(right))
            table[(left, right)] = decompose(product)
    return table


def table_mismatches() -> Dict[Tuple[HorizontalSymbol, HorizontalSymbol], Tuple[Product, Product]]:
    """Entradas em que a tabela fixa difere do oráculo: {par: (tabela, oráculo)}"""
    oracle = horizontal_oracle()
    mismatches = {}
    for key, expected in oracle.items():
        found = PRODUCT_TABLE.get(key)
        if found != expected:
            mismatches[key] = (found, expected)
    if mismatches:
        logger.error(f"Tabela horizontal diverge do oráculo em {len(mismatches)} entradas")
    return mismatches
