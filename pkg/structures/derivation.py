"""
Derivação do sistema de EDOs a partir de dPhi = 0.

Os coeficientes de dPhi são afins nos símbolos de derivada dA1..dC:
cada componente de grau 5 dá uma equação linear. Escolhe-se um conjunto
independente de cinco equações e resolve-se por Cramer/Bareiss.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from coframe.forms import BasisElement, Form
from structures.cayley import dphi
from structures.exceptions import SingularSystem, StructureError
from structures.linsolve import rank_fraction, solve_cramer
from structures.system import OdeSystem
from symexpr.poly import Poly
from symexpr.rewrite import RewriteRule
from symexpr.symbols import DERIVATIVES, Symbol

logger = logging.getLogger(__name__)

# ponto racional genérico para escolher linhas independentes
SELECTION_POINT = {
    Symbol.A1: Fraction(3, 7),
    Symbol.A2: Fraction(-5, 11),
    Symbol.A3: Fraction(13, 17),
    Symbol.B: Fraction(19, 23),
    Symbol.C: Fraction(29, 31),
}

BC_EQUAL_RULES = [RewriteRule(Symbol.C, 1, Poly.symbol(Symbol.B))]


@dataclass
class LinearEquation:
    """sum_X coefficients[dX] * dX + constant = 0, vinda da componente basis"""
    basis: BasisElement
    coefficients: Dict[Symbol, Poly]
    constant: Poly

    def has_derivatives(self) -> bool:
        return any(not c.is_zero() for c in self.coefficients.values())


def linear_equations(form: Optional[Form] = None) -> List[LinearEquation]:
    """Extrai as equações lineares de cada componente (verifica que são afins)"""
    form = form if form is not None else dphi()
    zeros = {s: Poly.zero() for s in DERIVATIVES}
    equations = []
    for basis, coeff in form.items():
        if not coeff.is_polynomial():
            raise StructureError(f"Componente {basis.label} não é polinomial")
        poly = coeff.as_poly()
        constant = poly.substitute(zeros)
        coefficients = {s: poly.partial(s).substitute(zeros) for s in DERIVATIVES}
        rebuilt = constant
        for s, c in coefficients.items():
            rebuilt = rebuilt + c * Poly.symbol(s)
        if rebuilt != poly:
            raise StructureError(f"Componente {basis.label} não é afim nas derivadas")
        equations.append(LinearEquation(basis, coefficients, constant))
    return equations


def select_independent(equations: List[LinearEquation]) -> List[LinearEquation]:
    rows = [
        [eq.coefficients[s].evaluate(SELECTION_POINT) for s in DERIVATIVES]
        for eq in equations
    ]
    chosen = rank_fraction(rows)
    if len(chosen) < len(DERIVATIVES):
        raise SingularSystem(f"Apenas {len(chosen)} equações independentes em dPhi")
    return [equations[i] for i in chosen[:len(DERIVATIVES)]]


def derive_ode(bc_equal: bool = False) -> OdeSystem:
    """Resolve dPhi = 0 nas derivadas; com bc_equal, especializa C -> B"""
    equations = linear_equations()
    for eq in equations:
        if not eq.has_derivatives() and not eq.constant.is_zero():
            raise SingularSystem(f"Componente {eq.basis.label} impõe restrição sem derivadas")
    selected = select_independent([eq for eq in equations if eq.has_derivatives()])
    logger.info(f"dPhi: {len(equations)} componentes, equações usadas: {[eq.basis.label for eq in selected]}")
    matrix = [[eq.coefficients[s] for s in DERIVATIVES] for eq in selected]
    rhs = [-eq.constant for eq in selected]
    solution = solve_cramer(matrix, rhs)
    system = OdeSystem(dict(zip(DERIVATIVES, solution)), name='sistema derivado')
    if bc_equal:
        system = system.rewrite(BC_EQUAL_RULES, name='sistema derivado B=C')
    return system


def substituted_dphi(system: OdeSystem) -> Form:
    return dphi().substitute(system.substitution())


def verify_lemma1(system: OdeSystem) -> bool:
    """True sse dPhi se anula identicamente com as derivadas dadas por system"""
    residual = substituted_dphi(system)
    if not residual.is_zero():
        labels = [basis.label for basis, _ in residual.items()]
        logger.warning(f"{system.name}: dPhi não se anula nas componentes {labels}")
        return False
    return True


def dphi_components_text() -> List[str]:
    """Componentes não nulas de dPhi (grau 5), para inspeção"""
    return [f'{basis.label}: {coeff}' for basis, coeff in dphi().items()]
