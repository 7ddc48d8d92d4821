"""
Avaliação vetorizada (numpy) de listas de funções racionais em double
ou em outro dtype de ponto flutuante (np.longdouble para a checagem em
precisão estendida).
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from symexpr.exceptions import DivisionByZero, SymExprError
from symexpr.poly import Poly
from symexpr.ratfunc import FLOAT_ZERO, RatFunc
from symexpr.symbols import NSYMBOLS, Symbol


def point_vector(point: Mapping[Symbol, float], dtype=np.float64) -> np.ndarray:
    """Vetor de NSYMBOLS posições; símbolos ausentes ficam NaN"""
    values = np.full(NSYMBOLS, np.nan, dtype=dtype)
    for symbol, value in point.items():
        values[int(symbol)] = value
    return values


class CompiledPolys:
    """Vários polinômios empilhados numa matriz de expoentes comum"""

    def __init__(self, polys: Sequence[Poly]):
        monomials = sorted({exps for poly in polys for exps, _ in poly.items()})
        index = {exps: i for i, exps in enumerate(monomials)}
        self.exponents = np.array(monomials, dtype=np.int64).reshape(len(monomials), NSYMBOLS)
        self.shape = (len(polys), len(monomials))
        self.entries: List[Tuple[int, int, Fraction]] = [
            (row, index[exps], coeff) for row, poly in enumerate(polys) for exps, coeff in poly.items()
        ]
        self._matrices: Dict[np.dtype, np.ndarray] = {}
        used = self.exponents.any(axis=0)
        self.required = frozenset(Symbol(i) for i in np.flatnonzero(used))

    def matrix(self, dtype) -> np.ndarray:
        """Coeficientes no dtype pedido, arredondados uma vez a partir do racional"""
        dtype = np.dtype(dtype)
        if dtype not in self._matrices:
            matrix = np.zeros(self.shape, dtype=dtype)
            for row, col, coeff in self.entries:
                matrix[row, col] = dtype.type(coeff.numerator) / dtype.type(coeff.denominator)
            self._matrices[dtype] = matrix
        return self._matrices[dtype]

    def __call__(self, values: np.ndarray) -> np.ndarray:
        if not len(self.exponents):
            return np.zeros(self.shape[0], dtype=values.dtype)
        monomials = np.prod(values ** self.exponents, axis=1)
        return self.matrix(values.dtype) @ monomials


class CompiledRatFuncs:
    """Avaliador numérico (double por padrão) de uma sequência fixa de RatFunc"""

    def __init__(self, funcs: Sequence[RatFunc]):
        funcs = [RatFunc.coerce(f) for f in funcs]
        self.size = len(funcs)
        self.numerators = CompiledPolys([f.num for f in funcs])
        self.denominators = CompiledPolys([f.den for f in funcs])
        self.required = self.numerators.required | self.denominators.required

    def __call__(self, values: np.ndarray) -> np.ndarray:
        missing = [s.name for s in self.required if np.isnan(values[int(s)])]
        if missing:
            raise SymExprError(f"Valores ausentes para {sorted(missing)}")
        # 0**0 = 1 em numpy; NaN**0 também, então símbolos não usados não contaminam
        dens = self.denominators(values)
        if np.any(np.abs(dens) < FLOAT_ZERO):
            raise DivisionByZero("Denominador se anula no ponto")
        return self.numerators(values) / dens

    def evaluate(self, point: Mapping[Symbol, float], dtype=np.float64) -> np.ndarray:
        return self(point_vector(point, dtype))
