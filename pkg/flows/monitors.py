"""
Monitores de invariantes conservadas ao longo de uma trajetória.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from flows.exceptions import InvalidSpec
from flows.state import State, Trajectory

logger = logging.getLogger(__name__)

# tolerância relativa para decidir se o estado inicial satisfaz uma invariante
ON_ANSATZ_TOL = 1e-12


def _bc_difference(state: State) -> float:
    return state.B ** 2 - state.C ** 2


def _ansatz_sum(state: State) -> float:
    return state.B ** 2 + state.C ** 2 - 2.0 * state.A2 ** 2


def _a_sum(state: State) -> float:
    return abs(state.A2 + state.A3)


def _scale(state: State) -> float:
    return max(abs(state.A2), abs(state.B), abs(state.C), 1.0) ** 2


@dataclass
class DriftReport:
    bc_difference: float
    ansatz_sum: Optional[float] = None
    a_sum: Optional[float] = None
    sign_ok: bool = True

    def as_dict(self) -> Dict[str, object]:
        return {
            'bc_difference_drift': self.bc_difference,
            'ansatz_sum_drift': self.ansatz_sum,
            'a_sum_drift': self.a_sum,
            'sign_ok': self.sign_ok,
        }

    def max_drift(self) -> float:
        return max(v for v in (self.bc_difference, self.ansatz_sum, self.a_sum) if v is not None)


def monitor(trajectory: Trajectory) -> DriftReport:
    """
    Deriva máxima de B^2 - C^2 (sempre), de B^2 + C^2 - 2 A2^2 e de
    |A2 + A3| (só quando o estado inicial as satisfaz).
    """
    initial = trajectory.initial
    reference = _bc_difference(initial)
    track_sum = abs(_ansatz_sum(initial)) <= ON_ANSATZ_TOL * _scale(initial)
    track_a = _a_sum(initial) <= ON_ANSATZ_TOL * max(abs(initial.A2), 1.0)

    report = DriftReport(
        bc_difference=0.0,
        ansatz_sum=0.0 if track_sum else None,
        a_sum=0.0 if track_a else None,
    )
    for state in trajectory:
        report.bc_difference = max(report.bc_difference, abs(_bc_difference(state) - reference))
        if track_sum:
            report.ansatz_sum = max(report.ansatz_sum, abs(_ansatz_sum(state)))
        if track_a:
            report.a_sum = max(report.a_sum, _a_sum(state))
        if not state.sign_ok():
            report.sign_ok = False
    logger.debug(f"Derivas: {report.as_dict()}")
    return report


def on_ansatz(state: State) -> bool:
    return (abs(_ansatz_sum(state)) <= ON_ANSATZ_TOL * _scale(state)
            and _a_sum(state) <= ON_ANSATZ_TOL * max(abs(state.A2), 1.0))


def ansatz_projection(initial: State) -> Callable[[np.ndarray], np.ndarray]:
    """
    Projeção de cada passo aceito na variedade A3 = -A2, B^2 + C^2 = 2 A2^2,
    B^2 - C^2 = constante do estado inicial. A variedade é invariante mas
    transversalmente instável ao longo do cone (|A2 + A3| cresce como t^3),
    então sem projeção o erro local acaba dominando as derivas.
    """
    if not on_ansatz(initial):
        raise InvalidSpec(f"Estado inicial fora do ansatz: {initial}")
    half_difference = 0.5 * _bc_difference(initial)

    def project(values: np.ndarray) -> np.ndarray:
        a1, a2, a3, _, _ = values
        a = 0.5 * (a3 - a2)
        return np.array([a1, -a, a, np.sqrt(a * a + half_difference), np.sqrt(a * a - half_difference)])

    return project
