"""
Relatório de fechamento: max |componente| de dPhi, dOmega1, dOmega2, dOmega3
com as derivadas dadas pelo sistema, num ponto numérico.

A avaliação é exata: cada double de entrada vira o Fraction que ele
representa, e só o resultado final volta para double.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Mapping

from structures.cayley import forms_by_label
from structures.system import OdeSystem
from symexpr.symbols import FUNCTIONS, Symbol

LABELS = ('phi', 'omega1', 'omega2', 'omega3')


@dataclass
class ClosureReport:
    phi: float
    omega1: float
    omega2: float
    omega3: float
    components: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, float]:
        return {label: getattr(self, label) for label in LABELS}


def exact_point(point: Mapping[Symbol, Any]) -> Dict[Symbol, Fraction]:
    return {s: Fraction(point[s]) for s in FUNCTIONS}


def closure_report(point: Mapping[Symbol, Any], system: OdeSystem) -> ClosureReport:
    """DivisionByZero é propagado se algum denominador se anula no ponto"""
    values = exact_point(point)
    values.update(system.evaluate_exact(values))
    maxima = {}
    components = {}
    for label, form in forms_by_label().items():
        evaluated = {basis.label: abs(float(coeff.evaluate(values))) for basis, coeff in form.items()}
        components[label] = evaluated
        maxima[label] = max(evaluated.values(), default=0.0)
    return ClosureReport(components=components, **maxima)
