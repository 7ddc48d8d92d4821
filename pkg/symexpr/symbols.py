"""
Universo fixo de indeterminadas.

As funções métricas A1, A2, A3, B, C, seus símbolos de derivada
dA1..dC e os parâmetros alpha, beta, rho da família explícita.
"""
from enum import IntEnum
from typing import Dict

from symexpr.exceptions import SymExprError


class Symbol(IntEnum):
    A1 = 0
    A2 = 1
    A3 = 2
    B = 3
    C = 4
    dA1 = 5
    dA2 = 6
    dA3 = 7
    dB = 8
    dC = 9
    alpha = 10
    beta = 11
    rho = 12


NSYMBOLS = len(Symbol)

FUNCTIONS = (Symbol.A1, Symbol.A2, Symbol.A3, Symbol.B, Symbol.C)
DERIVATIVES = (Symbol.dA1, Symbol.dA2, Symbol.dA3, Symbol.dB, Symbol.dC)

DERIVATIVE_OF: Dict[Symbol, Symbol] = dict(zip(FUNCTIONS, DERIVATIVES))
FUNCTION_OF: Dict[Symbol, Symbol] = dict(zip(DERIVATIVES, FUNCTIONS))


def parse_symbol(name: str) -> Symbol:
    """Converte um nome ('A1', 'dB', 'alpha', ...) no símbolo correspondente"""
    try:
        return Symbol[name]
    except KeyError:
        raise SymExprError(f"Símbolo desconhecido: {name!r}") from None
