"""
Limites em r -> 1+ por extrapolação de Richardson.

As funções da família são analíticas em s = sqrt(r - 1), proporcional a t
perto da raiz; os valores em r_k = 1 + h 4^-k (s_k = sqrt(h) 2^-k) são
extrapolados para s = 0 pelo esquema de Neville.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

from calabi.exceptions import DomainError
from calabi.family import MetricSample, closed_form_derivatives, sample

logger = logging.getLogger(__name__)

STEP = 1e-6
LEVELS = 5

ABS_DA1_TOL = 1e-6
VANISHING_TOL = 1e-8


def neville_at_zero(nodes: List[float], values: List[float]) -> float:
    """Valor em x = 0 do polinômio interpolador pelos pontos (nodes, values)"""
    table = list(values)
    n = len(nodes)
    for level in range(1, n):
        for i in range(n - level):
            x_i, x_j = nodes[i], nodes[i + level]
            table[i] = (x_j * table[i] - x_i * table[i + 1]) / (x_j - x_i)
    return table[0]


def richardson_limit(alpha: float, quantity: Callable[[MetricSample], float],
                     h: float = STEP, levels: int = LEVELS) -> float:
    radii = [1.0 + h * 4.0 ** -k for k in range(levels)]
    nodes = [(r - 1.0) ** 0.5 for r in radii]
    values = [quantity(sample(alpha, r)) for r in radii]
    return neville_at_zero(nodes, values)


def _abs_da1(s: MetricSample) -> float:
    return abs(closed_form_derivatives(s)[0])


def _db(s: MetricSample) -> float:
    return closed_form_derivatives(s)[3]


def _dc(s: MetricSample) -> float:
    return closed_form_derivatives(s)[4]


def _da2_minus_da3(s: MetricSample) -> float:
    derivatives = closed_form_derivatives(s)
    return derivatives[1] - derivatives[2]


@dataclass
class LimitReport:
    alpha: float
    A1: float
    abs_dA1: float
    dB: float
    dC: float
    A2_plus_A3: float
    dA2_minus_dA3: float
    A2_at_root: float
    A3_at_root: float

    def checks(self) -> Dict[str, bool]:
        return {
            'A1 -> 0': abs(self.A1) < VANISHING_TOL,
            '|dA1/dt| -> 4': abs(self.abs_dA1 - 4.0) < ABS_DA1_TOL,
            'dB/dt -> 0': abs(self.dB) < VANISHING_TOL,
            'dC/dt -> 0': abs(self.dC) < VANISHING_TOL,
            'A2 + A3 -> 0': abs(self.A2_plus_A3) < VANISHING_TOL,
            'dA2/dt - dA3/dt -> 0': abs(self.dA2_minus_dA3) < VANISHING_TOL,
            'A2(1) = -1, A3(1) = 1': self.A2_at_root == -1.0 and self.A3_at_root == 1.0,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks().values())

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


def smoothness_limits(alpha: float) -> LimitReport:
    if not 0 <= alpha < 1:
        raise DomainError(f"Limites na raiz exigem 0 <= alpha < 1 (alpha = {alpha})")
    root = sample(alpha, 1.0)
    report = LimitReport(
        alpha=alpha,
        A1=richardson_limit(alpha, lambda s: s.A1),
        abs_dA1=richardson_limit(alpha, _abs_da1),
        dB=richardson_limit(alpha, _db),
        dC=richardson_limit(alpha, _dc),
        A2_plus_A3=richardson_limit(alpha, lambda s: s.A2 + s.A3),
        dA2_minus_dA3=richardson_limit(alpha, _da2_minus_da3),
        A2_at_root=root.A2,
        A3_at_root=root.A3,
    )
    if not report.passed:
        failed = [name for name, ok in report.checks().items() if not ok]
        logger.warning(f"Limites em alpha = {alpha} fora da tolerância: {failed}")
    return report
