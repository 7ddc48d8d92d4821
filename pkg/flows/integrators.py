"""
Integrador explícito adaptativo Dormand-Prince 5(4).

Passo aceito quando a norma do erro local (máximo de
|err| / (atol + rtol * max(|y|, |y_novo|))) é <= 1; o novo passo é
h * clamp(0.9 * norma^(-1/5), 0.2, 5). Estágios que caem numa
singularidade ou estados que violam a convenção de sinais são rejeitados
com redução do passo. Uma projeção opcional é aplicada a cada passo
aceito antes da avaliação do lado direito no novo ponto.
"""
import logging
from typing import Callable, Optional

import numpy as np

from flows.exceptions import InvalidSpec, SignConventionViolation, SingularDenominator, StepUnderflow
from flows.state import State, Trajectory
from structures.system import OdeSystem

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-14
UNDERFLOW_FACTOR = 1e-14
# rejeições seguidas por estágio singular no mesmo t
MAX_SINGULAR_REJECTIONS = 12
MIN_REL_TOL = 1e-13
MAX_REL_TOL = 1e-6

# função de evento terminal: g(state) muda de sinal no evento
EventFunction = Callable[[State], float]
# aplicada a cada passo aceito (ver flows.monitors.ansatz_projection)
Projection = Callable[[np.ndarray], np.ndarray]


def rhs_eval(state: State, system: OdeSystem) -> np.ndarray:
    """Derivadas (A1', A2', A3', B', C') em double"""
    return _rhs(state.values, system, state.t)


def _rhs(values: np.ndarray, system: OdeSystem, t: float) -> np.ndarray:
    if np.any(np.abs(values) < SINGULAR_TOL):
        raise SingularDenominator(f"Função métrica anula-se em t = {t}: {values.tolist()}")
    return system.evaluate(values)


def _sign_ok(values: np.ndarray) -> bool:
    a1, a2, a3, b, c = values
    return a1 <= 0 and a2 <= 0 and a3 >= 0 and b > 0 and c > 0


class DormandPrince54:
    """Par 5(4) de Dormand-Prince, sete estágios"""

    order = 5

    c = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
    a = [
        [],
        [1 / 5],
        [3 / 40, 9 / 40],
        [44 / 45, -56 / 15, 32 / 9],
        [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
        [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
        [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
    ]
    b = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
    # b5 - b4: estimativa do erro local
    e = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])

    SAFETY = 0.9
    MIN_FACTOR = 0.2
    MAX_FACTOR = 5.0

    def __init__(self, system: OdeSystem, rel_tol: float = 1e-10, abs_tol: Optional[float] = None,
                 max_steps: int = 1_000_000, projection: Optional[Projection] = None):
        if not MIN_REL_TOL <= rel_tol <= MAX_REL_TOL:
            raise InvalidSpec(f"rel_tol = {rel_tol} fora de [{MIN_REL_TOL}, {MAX_REL_TOL}]")
        self.system = system
        self.rel_tol = rel_tol
        self.abs_tol = rel_tol if abs_tol is None else abs_tol
        self.max_steps = max_steps
        self.projection = projection

    # ------------------------------------------------------------------

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        return _rhs(y, self.system, t)

    def project(self, y: np.ndarray) -> np.ndarray:
        return y if self.projection is None else self.projection(y)

    def step(self, t: float, y: np.ndarray, h: float, k0: np.ndarray):
        """Um passo; retorna (y_novo, norma do erro). SingularDenominator num estágio propaga."""
        k = np.empty((7, y.size))
        k[0] = k0
        for i in range(1, 7):
            stage = y + h * np.dot(self.a[i], k[:i])
            k[i] = self.rhs(t + self.c[i] * h, stage)
        y_new = y + h * np.dot(self.b, k)
        err = h * np.dot(self.e, k)
        scale = self.abs_tol + self.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        return y_new, float(np.max(np.abs(err) / scale))

    def initial_step(self, t: float, y: np.ndarray, f0: np.ndarray) -> float:
        scale = self.abs_tol + self.rel_tol * np.abs(y)
        d0 = float(np.max(np.abs(y) / scale))
        d1 = float(np.max(np.abs(f0) / scale))
        h = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-6
        return min(h, 0.1 * max(t, 1e-3))

    def _factor(self, err: float) -> float:
        if err == 0.0:
            return self.MAX_FACTOR
        return min(self.MAX_FACTOR, max(self.MIN_FACTOR, self.SAFETY * err ** (-1 / self.order)))

    # ------------------------------------------------------------------

    def integrate(self, initial: State, t_end: float, event: Optional[EventFunction] = None) -> Trajectory:
        trajectory = Trajectory()
        trajectory.append(initial)
        if not initial.sign_ok():
            trajectory.status = 'error'
            raise SignConventionViolation(f"Estado inicial fora da convenção de sinais: {initial}", trajectory)
        t, y = initial.t, initial.values
        if t_end <= t:
            trajectory.status = 'complete'
            return trajectory
        try:
            f = self.rhs(t, y)
        except SingularDenominator as exc:
            trajectory.status = 'error'
            exc.trajectory = trajectory
            raise
        g_prev = event(initial) if event else None
        if g_prev == 0.0:
            trajectory.status = 'event'
            return trajectory
        h = self.initial_step(t, y, f)
        last_rejection = ''
        singular_rejections = 0

        for _ in range(self.max_steps):
            remaining = t_end - t
            if remaining <= 1e-15 * max(abs(t_end), 1.0):
                break
            h = min(h, remaining)
            if h < UNDERFLOW_FACTOR * max(abs(t), 1.0):
                trajectory.status = 'error'
                message = f"Passo {h:.3e} abaixo de 1e-14 * max(|t|, 1) em t = {t}"
                if last_rejection == 'singular':
                    raise SingularDenominator(message + " (estágio singular)", trajectory)
                if last_rejection == 'sign':
                    raise SignConventionViolation(message + " (violação de sinais)", trajectory)
                raise StepUnderflow(message, trajectory)

            try:
                y_new, err = self.step(t, y, h, f)
            except SingularDenominator as exc:
                trajectory.rejected += 1
                last_rejection = 'singular'
                singular_rejections += 1
                if singular_rejections >= MAX_SINGULAR_REJECTIONS:
                    trajectory.status = 'error'
                    raise SingularDenominator(
                        f"{singular_rejections} rejeições seguidas por estágio singular em t = {t}: {exc}", trajectory
                    ) from exc
                h *= 0.25
                continue
            singular_rejections = 0
            y_new = self.project(y_new)
            if not np.all(np.isfinite(y_new)):
                trajectory.rejected += 1
                last_rejection = 'nan'
                h *= 0.25
                continue
            if err > 1.0:
                trajectory.rejected += 1
                last_rejection = 'error'
                h *= max(self.MIN_FACTOR, self.SAFETY * err ** (-1 / self.order))
                continue
            if not _sign_ok(y_new):
                trajectory.rejected += 1
                last_rejection = 'sign'
                h *= 0.5
                continue

            t_new = t + h
            if t_end - t_new <= 1e-15 * max(abs(t_end), 1.0):
                t_new = t_end
            try:
                f_new = self.rhs(t_new, y_new)
            except SingularDenominator as exc:
                trajectory.append(State.from_array(t_new, y_new))
                trajectory.status = 'error'
                exc.trajectory = trajectory
                raise

            trajectory.accepted += 1
            trajectory.max_error = max(trajectory.max_error, err)
            new_state = State.from_array(t_new, y_new)

            if event is not None:
                g_new = event(new_state)
                if np.sign(g_new) != np.sign(g_prev):
                    if g_new == 0.0:
                        located = new_state
                    else:
                        try:
                            located = self._locate_event(event, t, y, f, h, g_prev, g_new)
                        except SingularDenominator as exc:
                            trajectory.status = 'error'
                            exc.trajectory = trajectory
                            raise
                    trajectory.append(located)
                    trajectory.status = 'event'
                    logger.info(f"Evento terminal em t = {located.t:.12g}")
                    return trajectory
                g_prev = g_new

            trajectory.append(new_state)
            t, y, f = t_new, y_new, f_new
            h *= self._factor(err)
            last_rejection = ''
        else:
            trajectory.status = 'error'
            raise StepUnderflow(f"Limite de {self.max_steps} passos atingido em t = {t}", trajectory)

        trajectory.status = 'complete'
        return trajectory

    def _locate_event(self, event: EventFunction, t: float, y: np.ndarray, f: np.ndarray, h: float,
                      g_left: float, g_right: float) -> State:
        """Raiz de g(passo(h*)) em h* em (0, h] pelo método de Illinois"""
        left, right = 0.0, h
        state_right = State.from_array(t + h, self.project(self.step(t, y, h, f)[0]))
        side = 0
        for _ in range(60):
            mid = right - g_right * (right - left) / (g_right - g_left)
            if not left < mid < right:
                mid = 0.5 * (left + right)
            state_mid = State.from_array(t + mid, self.project(self.step(t, y, mid, f)[0]))
            g_mid = event(state_mid)
            if g_mid == 0.0 or abs(right - left) < 1e-15 * max(abs(t), 1.0):
                return state_mid
            if np.sign(g_mid) == np.sign(g_right):
                right, g_right, state_right = mid, g_mid, state_mid
                if side == -1:
                    g_left *= 0.5
                side = -1
            else:
                left, g_left = mid, g_mid
                if side == 1:
                    g_right *= 0.5
                side = 1
            if abs(g_mid) < 1e-15 * max(abs(g_left), abs(g_right), 1.0):
                return state_mid
        return state_right


def integrate(initial: State, system: OdeSystem, t_end: float, rel_tol: float = 1e-10,
              event: Optional[EventFunction] = None, projection: Optional[Projection] = None) -> Trajectory:
    """Trajetória de initial até t_end (ou até o evento terminal)"""
    solver = DormandPrince54(system, rel_tol=rel_tol, projection=projection)
    trajectory = solver.integrate(initial, t_end, event=event)
    logger.info(
        f"{system.name}: {trajectory.accepted} passos aceitos, {trajectory.rejected} rejeitados, "
        f"status {trajectory.status}"
    )
    return trajectory


def until_abs_a2(target: float) -> EventFunction:
    """Evento |A2| = target"""
    return lambda state: abs(state.A2) - target
