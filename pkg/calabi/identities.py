"""
Identidades exatas da família.

Com rho = r^2, F(rho) = (rho^4 - 2 alpha^4 rho^2 + beta) / (rho (rho^2 - alpha^4))
é a solução geral de dF/drho + F G = 4, G = 1/rho + 1/(rho - alpha^2) + 1/(rho + alpha^2).
"""
import logging
from fractions import Fraction
from typing import Iterable

from calabi.family import F_of_r
from structures.reference import reference_system
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.rewrite import RewriteRule, rewrite
from symexpr.symbols import Symbol

logger = logging.getLogger(__name__)

RHO = Poly.symbol(Symbol.rho)
ALPHA = Poly.symbol(Symbol.alpha)
BETA = Poly.symbol(Symbol.beta)

EXACT_RADII = (2, 3, 5)


def F_symbolic() -> RatFunc:
    return RatFunc(RHO ** 4 - 2 * ALPHA ** 4 * RHO ** 2 + BETA, RHO * (RHO ** 2 - ALPHA ** 4))


def G_symbolic(drop_middle: bool = False) -> RatFunc:
    terms = [RatFunc(1, RHO), RatFunc(1, RHO - ALPHA ** 2), RatFunc(1, RHO + ALPHA ** 2)]
    if drop_middle:
        del terms[1]
    return sum(terms[1:], terms[0])


def F_identity_residual(drop_middle: bool = False) -> RatFunc:
    F = F_symbolic()
    return F.partial(Symbol.rho) + F * G_symbolic(drop_middle) - 4


def verify_F_identity(drop_middle: bool = False) -> bool:
    """dF/drho + F G - 4 = 0 como função racional em (rho, alpha, beta)"""
    residual = F_identity_residual(drop_middle)
    if not residual.is_zero():
        logger.warning(f"Identidade de F falhou: resíduo {residual}")
        return False
    return True


def verify_root_normalization() -> bool:
    """beta = 2 alpha^4 - 1 põe a raiz em rho = 1"""
    F = F_symbolic().substitute({Symbol.beta: 2 * ALPHA ** 4 - 1, Symbol.rho: 1})
    return F.is_zero()


def alpha0_identity_residual(r: Fraction) -> Fraction:
    """
    rhs(dA1) - (-1 - 3/r^8) no membro alpha = 0, em aritmética racional.
    A1 só aparece ao quadrado em rhs(dA1), então A1^2 -> F(0, r) basta.
    """
    r = Fraction(r)
    rule = RewriteRule(Symbol.A1, 2, Poly.constant(F_of_r(0, r)))
    reduced = rewrite(reference_system()[Symbol.dA1], [rule])
    value = reduced.evaluate({Symbol.A2: -r, Symbol.A3: r, Symbol.B: r, Symbol.C: r})
    return value - (-1 - 3 / r ** 8)


def verify_alpha0_identity(radii: Iterable[int] = EXACT_RADII) -> bool:
    failures = {r: alpha0_identity_residual(r) for r in radii}
    failures = {r: v for r, v in failures.items() if v != 0}
    for r, value in failures.items():
        logger.warning(f"Identidade alpha = 0 falhou em r = {r}: resíduo {value}")
    return not failures
