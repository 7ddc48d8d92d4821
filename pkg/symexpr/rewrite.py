"""
Reescrita por regras symbol**power -> polinômio, aplicada até ponto fixo.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Sequence

from symexpr.exceptions import NonTerminating, SymExprError
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.symbols import Symbol

logger = logging.getLogger(__name__)

MAX_PASSES = 64


@dataclass(frozen=True)
class RewriteRule:
    """symbol**power -> replacement (power 1 ou par)"""
    symbol: Symbol
    power: int
    replacement: Poly

    def __post_init__(self):
        if self.power != 1 and (self.power < 2 or self.power % 2):
            raise SymExprError(f"Regra inválida: potência {self.power} de {self.symbol.name}")

    def applies_to(self, poly: Poly) -> bool:
        return poly.degree_in(self.symbol) >= self.power

    def apply(self, poly: Poly) -> Poly:
        """Uma passada: cada symbol**(q*power + s) vira replacement**q * symbol**s"""
        index = int(self.symbol)
        powers: Dict[int, Poly] = {}
        result = Poly.zero()
        for exps, coeff in poly.items():
            quotient, rest = divmod(exps[index], self.power)
            if not quotient:
                result = result + Poly.monomial(exps, coeff)
                continue
            if quotient not in powers:
                powers[quotient] = self.replacement ** quotient
            reduced = exps[:index] + (rest,) + exps[index + 1:]
            result = result + powers[quotient].shift(reduced).scale(coeff)
        return result

    def __str__(self) -> str:
        lhs = self.symbol.name if self.power == 1 else f'{self.symbol.name}^{self.power}'
        return f'{lhs} -> {self.replacement}'


def rewrite_poly(poly: Poly, rules: Sequence[RewriteRule]) -> Poly:
    """Aplica as regras em ordem, repetidamente, até nenhuma se aplicar"""
    degree_guard = 4 * max(poly.degree(), 1) + 4 * sum(max(r.replacement.degree(), 1) for r in rules) + 16
    current = poly
    for _ in range(MAX_PASSES):
        if not any(rule.applies_to(current) for rule in rules):
            return current
        for rule in rules:
            if rule.applies_to(current):
                current = rule.apply(current)
        if current.degree() > degree_guard:
            raise NonTerminating(f"Grau {current.degree()} excede o limite {degree_guard}")
    logger.error(f"Reescrita sem ponto fixo após {MAX_PASSES} passadas: {[str(r) for r in rules]}")
    raise NonTerminating(f"Sem ponto fixo após {MAX_PASSES} passadas")


def rewrite(f: RatFunc, rules: Sequence[RewriteRule]) -> RatFunc:
    """Reescreve numerador e denominador até ponto fixo"""
    f = RatFunc.coerce(f)
    return RatFunc(rewrite_poly(f.num, rules), rewrite_poly(f.den, rules))
