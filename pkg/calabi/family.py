"""
Família explícita de métricas no parâmetro radial r >= 1.

    N(r) = r^8 - 2 alpha^4 (r^4 - 1) - 1 = (r^4 - 1)(r^4 + 1 - 2 alpha^4)
    F(r) = N(r) / (r^2 (r^4 - alpha^4))
    A1 = -sqrt(F), A2 = -r, A3 = r, B = sqrt(r^2 + alpha^2), C = sqrt(r^2 - alpha^2)
    dt/dr = r / sqrt(F)

A constante de integração vale beta = 2 alpha^4 - 1, o que põe a maior raiz
de N em r = 1.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

import numpy as np

from calabi.exceptions import DomainError
from flows.exceptions import InvalidSpec
from flows.state import State
from structures.reference import reference_bc_equal_system, reference_system
from structures.system import OdeSystem
from symexpr.symbols import FUNCTIONS, Symbol

logger = logging.getLogger(__name__)

# tolerância relativa da restrição 2 a^2 = B^2 + C^2 em homothety_class
CONSTRAINT_TOL = 1e-12


def _exact(value: Any) -> Any:
    """int e Fraction viram Fraction; double fica double"""
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value)
    return value


def integration_constant(alpha: Any) -> Any:
    return 2 * _exact(alpha) ** 4 - 1


def N(alpha: Any, r: Any) -> Any:
    alpha, r = _exact(alpha), _exact(r)
    return (r - 1) * (r + 1) * (r * r + 1) * (r ** 4 + 1 - 2 * alpha ** 4)


def F_of_r(alpha: Any, r: Any) -> Any:
    """Exato com entradas racionais; DomainError se r <= alpha"""
    alpha, r = _exact(alpha), _exact(r)
    if r <= alpha:
        raise DomainError(f"F indefinida para r = {r} <= alpha = {alpha}")
    return N(alpha, r) / (r * r * (r ** 4 - alpha ** 4))


def _F(alpha: Any, r: Any) -> Any:
    """F com o limite alpha = 1 já simplificado: (r^4 - 1)/r^2. Mantém o tipo de ponto flutuante."""
    if alpha == 1:
        return (r - 1) * (r + 1) * (r * r + 1) / (r * r)
    return F_of_r(alpha, r)


def dF_dr(alpha: float, r: float) -> float:
    if alpha == 1:
        return 2 * r + 2 / r ** 3
    a4 = alpha ** 4
    p = (r - 1) * (r + 1) * (r * r + 1)
    q = r ** 4 + 1 - 2 * a4
    d = r ** 6 - a4 * r * r
    dd = 6 * r ** 5 - 2 * a4 * r
    return (4 * r ** 3 * (p + q) * d - p * q * dd) / (d * d)


@dataclass(frozen=True)
class MetricSample:
    alpha: float
    r: float
    t_of_r_derivative: float
    A1: float
    A2: float
    A3: float
    B: float
    C: float
    coordinate_singularity: bool = False

    @property
    def values(self) -> np.ndarray:
        return np.array([self.A1, self.A2, self.A3, self.B, self.C])

    def as_point(self) -> Dict[Symbol, float]:
        return dict(zip(FUNCTIONS, self.values.tolist()))

    def as_state(self, t: float = 0.0) -> State:
        return State.from_array(t, self.values)


def sample(alpha: float, r: float) -> MetricSample:
    """
    Funções métricas com sinais A1 <= 0, A2 < 0, A3 > 0. Em r = 1 a
    derivada dt/dr diverge e a amostra sai marcada como singularidade de
    coordenada.
    """
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha = {alpha} fora de [0, 1]")
    if r < 1:
        raise DomainError(f"r = {r} < 1 está fora da família")
    if alpha < 1 and r <= alpha:
        raise DomainError(f"r = {r} <= alpha = {alpha}")
    F = float(_F(alpha, r))
    at_root = r == 1
    return MetricSample(
        alpha=alpha,
        r=r,
        t_of_r_derivative=math.inf if at_root else r / math.sqrt(F),
        A1=-math.sqrt(F),
        A2=-r,
        A3=r,
        B=math.sqrt(r * r + alpha * alpha),
        C=math.sqrt((r - alpha) * (r + alpha)),
        coordinate_singularity=at_root,
    )


def _derivatives(alpha: Any, r: Any, values: np.ndarray) -> np.ndarray:
    """
    Derivadas em t pela regra da cadeia d/dt = (sqrt(F)/r) d/dr.
    Para X = +-r vale dX/dt = -A1 X / r^2, o que cobre as duas escolhas de sinal.
    """
    a1, a2, a3, b, c = values
    drdt = -a1 / r
    return np.array([
        -dF_dr(alpha, r) / (2 * r),
        drdt * a2 / r,
        drdt * a3 / r,
        drdt * r / b,
        drdt * r / c,
    ], dtype=values.dtype)


def closed_form_derivatives(s: MetricSample) -> np.ndarray:
    return _derivatives(s.alpha, s.r, s.values)


def sample_residuals(s: MetricSample, system: OdeSystem) -> np.ndarray:
    return closed_form_derivatives(s) - system.evaluate(s.values)


def _residuals(system: OdeSystem, alpha: float, r: float, dtype) -> np.ndarray:
    """Forma fechada e lado direito avaliados inteiramente no dtype"""
    alpha, r = dtype(alpha), dtype(r)
    F = _F(alpha, r)
    values = np.array([
        -np.sqrt(F), -r, r, np.sqrt(r * r + alpha * alpha), np.sqrt((r - alpha) * (r + alpha)),
    ], dtype=dtype)
    return _derivatives(alpha, r, values) - system.evaluate(values, dtype)


def residuals(alpha: float, r: float, dtype=np.float64) -> np.ndarray:
    """Derivada da forma fechada menos o lado direito do sistema geral, por equação"""
    s = sample(alpha, r)
    if s.coordinate_singularity:
        raise DomainError(f"Resíduos exigem r > 1 (r = {r})")
    return _residuals(reference_system(), alpha, r, dtype)


def residuals_extended(alpha: float, r: float) -> np.ndarray:
    """Os mesmos resíduos em np.longdouble; devem ser menores que em double"""
    return residuals(alpha, r, dtype=np.longdouble)


def residuals_bc_equal(r: float) -> np.ndarray:
    """O membro alpha = 0 (B = C) também resolve o sistema B = C"""
    s = sample(0.0, r)
    if s.coordinate_singularity:
        raise DomainError(f"Resíduos exigem r > 1 (r = {r})")
    return _residuals(reference_bc_equal_system(), 0.0, r, np.float64)


def homothety_class(a3_0: float, b_0: float, c_0: float) -> Tuple[float, float]:
    """
    Dados iniciais -A2(0) = A3(0) = a, B(0), C(0) com 2a^2 = B^2 + C^2:
    a solução é a homotetia de fator a do membro alpha com
    alpha^2 = (B^2 - C^2) / (2a^2).
    """
    a = a3_0
    if not a > 0 or not b_0 > 0 or not c_0 > 0:
        raise InvalidSpec(f"Dados iniciais não positivos: a = {a}, B = {b_0}, C = {c_0}")
    total = b_0 * b_0 + c_0 * c_0
    if abs(2 * a * a - total) > CONSTRAINT_TOL * total:
        raise InvalidSpec(f"2a^2 = {2 * a * a} difere de B^2 + C^2 = {total}")
    alpha2 = (b_0 * b_0 - c_0 * c_0) / (2 * a * a)
    if not 0 <= alpha2 < 1:
        raise InvalidSpec(f"alpha^2 = {alpha2} fora de [0, 1)")
    return math.sqrt(alpha2), a
