"""
Sistemas de referência escritos à mão: o sistema geral e o caso B = C.
"""
from functools import lru_cache

from structures.system import OdeSystem
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc
from symexpr.symbols import Symbol

A1, A2, A3, B, C = (Poly.symbol(s) for s in (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C))


@lru_cache(maxsize=None)
def reference_system() -> OdeSystem:
    S = B ** 2 + C ** 2
    return OdeSystem(
        {
            Symbol.dA1: RatFunc((A2 - A3) ** 2 - A1 ** 2, A2 * A3) + RatFunc(A1 ** 2 * S, B ** 2 * C ** 2),
            Symbol.dA2: RatFunc(A1 ** 2 - A2 ** 2 + A3 ** 2, A1 * A3) - RatFunc(S - 2 * A2 ** 2, B * C),
            Symbol.dA3: RatFunc(A1 ** 2 + A2 ** 2 - A3 ** 2, A1 * A2) - RatFunc(S - 2 * A3 ** 2, B * C),
            Symbol.dB: (
                -RatFunc(C * A1 + B * A2 + B * A3, B * C)
                - RatFunc((C ** 2 - B ** 2) * (A2 + A3), 2 * A2 * A3 * C)
            ),
            Symbol.dC: (
                -RatFunc(B * A1 + C * A2 + C * A3, B * C)
                - RatFunc((B ** 2 - C ** 2) * (A2 + A3), 2 * A2 * A3 * B)
            ),
        },
        name='sistema geral',
    )


@lru_cache(maxsize=None)
def reference_bc_equal_system() -> OdeSystem:
    """Caso B = C; a equação de C repete a de B"""
    dB = -RatFunc(A1 + A2 + A3, B)
    return OdeSystem(
        {
            Symbol.dA1: RatFunc(2 * A1 ** 2, B ** 2) + RatFunc((A2 - A3) ** 2 - A1 ** 2, A2 * A3),
            Symbol.dA2: RatFunc(2 * A2 ** 2, B ** 2) + RatFunc((A3 - A1) ** 2 - A2 ** 2, A1 * A3),
            Symbol.dA3: RatFunc(2 * A3 ** 2, B ** 2) + RatFunc((A1 - A2) ** 2 - A3 ** 2, A1 * A2),
            Symbol.dB: dB,
            Symbol.dC: dB,
        },
        name='sistema B=C',
    )
