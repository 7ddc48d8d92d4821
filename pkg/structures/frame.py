"""
Verificação no referencial ortonormal e0..e7.

Expande uma Form num ponto numérico usando eta_i = e_i / A_i,
eta4,5 = e4,5 / B e eta6,7 = e6,7 / C, e compara com as formas padrão:
a 4-forma de Cayley (14 termos) e as três 2-formas de Kähler.
"""
import logging
from typing import Any, Dict, Mapping

from coframe.forms import Form
from coframe.horizontal import raw_expansion
from coframe.raw import RawForm
from structures.cayley import build_omega_bar, build_phi
from symexpr.symbols import Symbol

logger = logging.getLogger(__name__)


def _blade(*indices: int, coeff: Any = 1) -> RawForm:
    return RawForm.blade(indices, coeff)


def _pair(a: int, b: int, c: int, d: int, sign: int = -1) -> RawForm:
    """e_ab + sign * e_cd"""
    return _blade(a, b) + _blade(c, d, coeff=sign)


def standard_cayley() -> RawForm:
    """e0123 + e4567 + (e01 - e23)(e45 - e67) + (e02 - e31)(e46 - e75) + (e03 - e12)(e47 - e56)"""
    phi = _blade(0, 1, 2, 3) + _blade(4, 5, 6, 7)
    phi = phi + _pair(0, 1, 2, 3).wedge(_pair(4, 5, 6, 7))
    phi = phi + _pair(0, 2, 3, 1).wedge(_pair(4, 6, 7, 5))
    phi = phi + _pair(0, 3, 1, 2).wedge(_pair(4, 7, 5, 6))
    return phi


def standard_kahler(k: int) -> RawForm:
    if k == 1:
        return _blade(0, 1, coeff=-1) + _blade(2, 3) + _blade(4, 5) + _blade(6, 7, coeff=-1)
    if k == 2:
        return _blade(0, 2) + _blade(1, 3) + _blade(4, 6, coeff=-1) + _blade(7, 5)
    return _blade(0, 3, coeff=-1) + _blade(1, 2) + _blade(4, 7, coeff=-1) + _blade(5, 6)


def orthonormal_expansion(form: Form, point: Mapping[Symbol, float]) -> RawForm:
    """Form avaliada no ponto, reescrita em e0..e7"""
    vertical_scale = {0: 1.0, 1: point[Symbol.A1], 2: point[Symbol.A2], 3: point[Symbol.A3]}
    horizontal_scale = {0: point[Symbol.B], 1: point[Symbol.B], 2: point[Symbol.C], 3: point[Symbol.C]}
    result = RawForm()
    for basis, coeff in form.items():
        value = float(coeff.evaluate(point))
        vertical = _blade(*basis.indices, coeff=value)
        for index in basis.indices:
            vertical = vertical.scale(1.0 / vertical_scale[index])
        # eta4..eta7 -> e4..e7
        shifted = {}
        for mask, c in raw_expansion(basis.horizontal).terms.items():
            factor = 1.0
            for g in range(4):
                if mask >> g & 1:
                    factor /= horizontal_scale[g]
            shifted[mask << 4] = c * factor
        result = result + vertical.wedge(RawForm(shifted))
    return result


def orthonormal_components(form: Form, point: Mapping[Symbol, float]) -> Dict[tuple, float]:
    """{(índices de e0..e7): valor}"""
    raw = orthonormal_expansion(form, point)
    return {tuple(i for i in range(8) if mask >> i & 1): value for mask, value in raw.terms.items()}


def _max_deviation(found: RawForm, expected: RawForm) -> float:
    masks = set(found.terms) | set(expected.terms)
    return max((abs(found.terms.get(m, 0.0) - expected.terms.get(m, 0.0)) for m in masks), default=0.0)


def cayley_deviation(point: Mapping[Symbol, float]) -> float:
    return _max_deviation(orthonormal_expansion(build_phi(), point), standard_cayley())


def kahler_deviation(point: Mapping[Symbol, float], k: int) -> float:
    return _max_deviation(orthonormal_expansion(build_omega_bar(k), point), standard_kahler(k))


def self_wedge_volume(point: Mapping[Symbol, float]) -> float:
    """Coeficiente de e01234567 em Phi ^ Phi (14 para uma forma de Cayley)"""
    raw = orthonormal_expansion(build_phi(), point)
    return raw.wedge(raw).terms.get(0xFF, 0.0)
