"""
A 4-forma de Spin(7) e o trio de 2-formas de Kähler no coreferencial do cone.

e0 = dt, ei = Ai * eta_i (i = 1, 2, 3). A parte horizontal usa
w1, w2, w3, w, vol; em particular
  e45 - e67 = ((B^2 + C^2)/4) w1 + ((B^2 - C^2)/4) w.
"""
from fractions import Fraction
from functools import lru_cache

from coframe.forms import Form, ext_d, wedge
from coframe.horizontal import HorizontalSymbol
from structures.exceptions import StructureError
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.symbols import Symbol

H = HorizontalSymbol
A1, A2, A3, B, C = (Poly.symbol(s) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C))
SCALE = {1: A1, 2: A2, 3: A3}

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)

S = B ** 2 + C ** 2
D = B ** 2 - C ** 2
BC = B * C


def e(index: int) -> Form:
    """Coreferencial métrico: e0 = dt, ei = Ai eta_i"""
    if index == 0:
        return Form.basis('dt')
    return Form.basis(f'e{index}', coeff=RatFunc(SCALE[index]))


def e2(i: int, j: int) -> Form:
    return wedge(e(i), e(j))


def horizontal(symbol: HorizontalSymbol, coeff: Poly) -> Form:
    return Form.basis(horizontal=symbol, coeff=RatFunc(coeff))


@lru_cache(maxsize=None)
def build_phi() -> Form:
    phi = wedge(e2(0, 1), e2(2, 3))
    phi = phi + horizontal(H.VOL, B ** 2 * C ** 2)
    phi = phi + wedge(e2(0, 1) - e2(2, 3), horizontal(H.W1, S * QUARTER))
    phi = phi + wedge(e2(0, 1) - e2(2, 3), horizontal(H.W, D * QUARTER))
    phi = phi + wedge(e2(0, 2) - e2(3, 1), horizontal(H.W2, BC * HALF))
    phi = phi + wedge(e2(0, 3) - e2(1, 2), horizontal(H.W3, BC * HALF))
    return phi


@lru_cache(maxsize=None)
def build_omega_bar(k: int) -> Form:
    """As três 2-formas: k = 1 (forma de Kähler), k = 2, 3 (parceiras hiperkähler)"""
    if k == 1:
        return -e2(0, 1) + e2(2, 3) + horizontal(H.W1, S * QUARTER) + horizontal(H.W, D * QUARTER)
    if k == 2:
        return e2(0, 2) + e2(1, 3) - horizontal(H.W2, BC * HALF)
    if k == 3:
        return -e2(0, 3) + e2(1, 2) - horizontal(H.W3, BC * HALF)
    raise StructureError(f"Índice de forma de Kähler inválido: {k}")


@lru_cache(maxsize=None)
def dphi() -> Form:
    return ext_d(build_phi())


@lru_cache(maxsize=None)
def domega_bar(k: int) -> Form:
    return ext_d(build_omega_bar(k))


def forms_by_label():
    """Rótulos usados nos relatórios de fechamento"""
    return {
        'phi': dphi(),
        'omega1': domega_bar(1),
        'omega2': domega_bar(2),
        'omega3': domega_bar(3),
    }
