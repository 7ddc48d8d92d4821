"""
Sementes em t = epsilon para o início singular em t = 0.

symmetric(alpha): série da família explícita normalizada com raiz r0 = 1
  (r^2 = 1 + 4t^2 + O(t^4), A1 = -4t + O(t^3)); com fator de homotetia
  lambda, o estado é lambda * semente_unitária(epsilon / lambda).
bc_equal(a, b): limites de L'Hôpital do sistema B = C em t = 0:
  A1'(0) = -4, A2'(0) = A3'(0) = p = a^2/b^2 - 1, B'(0) = 0,
  B''(0) = (4 - 2p)/b.
"""
import logging
import math

from flows.exceptions import InvalidSpec
from flows.state import SeedSpec, State

logger = logging.getLogger(__name__)

MAX_EPSILON = 1e-2


def bc_equal_slope(a: float, b: float) -> float:
    """A2'(0) = A3'(0) autoconsistente com o sistema B = C"""
    return a * a / (b * b) - 1.0


def validate(spec: SeedSpec):
    if not 0 < spec.epsilon <= MAX_EPSILON:
        raise InvalidSpec(f"epsilon = {spec.epsilon} fora de (0, {MAX_EPSILON}]")
    if spec.kind == 'symmetric':
        if not 0 <= spec.alpha < 1:
            raise InvalidSpec(f"alpha = {spec.alpha} fora de [0, 1)")
        if not spec.scale > 0:
            raise InvalidSpec(f"fator de homotetia {spec.scale} não positivo")
    elif spec.kind == 'bc_equal':
        if not 0 < spec.a < spec.b:
            raise InvalidSpec(f"bc_equal exige 0 < a < b (a = {spec.a}, b = {spec.b})")
    else:
        raise InvalidSpec(f"Tipo de semente desconhecido: {spec.kind!r}")


def seed(spec: SeedSpec) -> State:
    validate(spec)
    eps = spec.epsilon
    if spec.kind == 'symmetric':
        lam = spec.scale
        s = eps / lam
        rho = 1.0 + 4.0 * s * s
        alpha2 = spec.alpha * spec.alpha
        state = State(
            t=eps,
            A1=-4.0 * s * lam,
            A2=-math.sqrt(rho) * lam,
            A3=math.sqrt(rho) * lam,
            B=math.sqrt(rho + alpha2) * lam,
            C=math.sqrt(rho - alpha2) * lam,
        )
    else:
        a, b = spec.a, spec.b
        p = bc_equal_slope(a, b)
        bb = b + (2.0 - p) * eps * eps / b
        state = State(t=eps, A1=-4.0 * eps, A2=-a + p * eps, A3=a + p * eps, B=bb, C=bb)
    logger.debug(f"Semente {spec.kind} em t = {eps}: {state}")
    return state
