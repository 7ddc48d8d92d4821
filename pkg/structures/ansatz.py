"""
Redução do sistema pelo ansatz A3 = -A2, B^2 = A2^2 + alpha^2, C^2 = A2^2 - alpha^2.
"""
import logging
from dataclasses import dataclass, field
from typing import List

from structures.cayley import domega_bar
from structures.exceptions import ReductionFailure
from structures.system import OdeSystem
from symexpr.exceptions import InexactDivision
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.rewrite import RewriteRule, rewrite
from symexpr.symbols import Symbol

logger = logging.getLogger(__name__)

A1, A2, A3, B, C = (Poly.symbol(s) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C))
ALPHA = Poly.symbol(Symbol.alpha)

A3_RULE = RewriteRule(Symbol.A3, 1, -A2)
ANSATZ_RULES = [
    A3_RULE,
    RewriteRule(Symbol.B, 2, A2 ** 2 + ALPHA ** 2),
    RewriteRule(Symbol.C, 2, A2 ** 2 - ALPHA ** 2),
]


@dataclass
class ReductionItem:
    name: str
    description: str
    passed: bool
    residual: str


@dataclass
class AnsatzReport:
    items: List[ReductionItem] = field(default_factory=list)
    reduced_dA1: str = ''
    reduced_dA2: str = ''

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)


def _check(report: AnsatzReport, name: str, description: str, residual: RatFunc):
    passed = residual.is_zero()
    report.items.append(ReductionItem(name, description, passed, residual.to_text()))
    if not passed:
        logger.error(f"Redução {name} falhou: resíduo {residual}")
        raise ReductionFailure(name, residual)


def reduce_ansatz(system: OdeSystem) -> AnsatzReport:
    """
    (i)   rhs(dA2) + rhs(dA3) com A3 -> -A2 vale -2(B^2 + C^2 - 2A2^2)/(BC);
    (ii)  2B rhs(dB) - 2C rhs(dC) é múltiplo de (A2 + A3), logo (B^2 - C^2)' = 0;
    (iii) com todas as regras, rhs(dA1) = -4 + A1^2/A2^2 + 2A1^2A2^2/(A2^4 - alpha^4)
          e 2A2 rhs(dA2) = -2A1.
    """
    report = AnsatzReport()

    total = rewrite(system[Symbol.dA2] + system[Symbol.dA3], [A3_RULE])
    expected = RatFunc(-2 * (B ** 2 + C ** 2 - 2 * A2 ** 2), B * C)
    _check(report, 'i', "A2' + A3' = -2(B^2 + C^2 - 2A2^2)/(BC)", total - expected)

    even = RatFunc(2 * B) * system[Symbol.dB] - RatFunc(2 * C) * system[Symbol.dC]
    try:
        even.num.exact_div(A2 + A3)
        divisible = RatFunc(0)
    except InexactDivision:
        divisible = even
    _check(report, 'ii.a', "2BB' - 2CC' divisível por A2 + A3", divisible)
    _check(report, 'ii.b', "(B^2 - C^2)' = 0 no ansatz", rewrite(even, [A3_RULE]))

    reduced_a1 = rewrite(system[Symbol.dA1], ANSATZ_RULES)
    expected_a1 = (
        RatFunc(-4)
        + RatFunc(A1 ** 2, A2 ** 2)
        + RatFunc(2 * A1 ** 2 * A2 ** 2, A2 ** 4 - ALPHA ** 4)
    )
    _check(report, 'iii.a', "A1' = -4 + A1^2/A2^2 + 2A1^2A2^2/(A2^4 - alpha^4)", reduced_a1 - expected_a1)

    reduced_a2 = rewrite(system[Symbol.dA2], ANSATZ_RULES)
    _check(report, 'iii.b', "(A2^2)' = 2A2 A2' = -2A1", RatFunc(2 * A2) * reduced_a2 + RatFunc(2 * A1))

    report.reduced_dA1 = reduced_a1.to_text()
    report.reduced_dA2 = reduced_a2.to_text()
    return report


def verify_kahler_on_ansatz(system: OdeSystem) -> bool:
    """dOmega1 com as derivadas do sistema se anula exatamente no ansatz"""
    residual = domega_bar(1).substitute(system.substitution()).rewrite(ANSATZ_RULES)
    if not residual.is_zero():
        logger.warning(f"dOmega1 não se anula no ansatz: {[b.label for b, _ in residual.items()]}")
        return False
    return True
