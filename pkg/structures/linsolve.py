"""
Eliminação sem frações (Bareiss) sobre o anel de polinômios.
"""
import logging
from fractions import Fraction
from typing import List, Sequence

from structures.exceptions import SingularSystem
from symexpr.poly import Poly
from symexpr.ratfunc import RatFunc

logger = logging.getLogger(__name__)


def det_bareiss(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinante por Bareiss; cada passo divide exatamente pelo pivô anterior"""
    n = len(matrix)
    if n == 0:
        return Poly.one()
    M: List[List[Poly]] = [[Poly.coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in M):
        raise ValueError("Matriz não quadrada")
    if n == 1:
        return M[0][0]
    sign = 1
    previous = Poly.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[i], M[k] = M[k], M[i]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = pivot * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = elt.exact_div(previous) if k else elt
        previous = pivot
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def solve_cramer(matrix: Sequence[Sequence[Poly]], rhs: Sequence[Poly]) -> List[RatFunc]:
    """Resolve matrix * x = rhs sobre o corpo de frações; SingularSystem se det = 0"""
    det = det_bareiss(matrix)
    if det.is_zero():
        raise SingularSystem("Determinante identicamente nulo")
    logger.debug(f"Determinante do sistema: {det}")
    solution = []
    for column in range(len(matrix)):
        replaced = [
            [rhs[i] if j == column else entry for j, entry in enumerate(row)]
            for i, row in enumerate(matrix)
        ]
        solution.append(RatFunc(det_bareiss(replaced), det))
    return solution


def rank_fraction(matrix: Sequence[Sequence[Fraction]]) -> List[int]:
    """Índices de linhas linearmente independentes (eliminação gaussiana exata, gulosa)"""
    basis: List[List[Fraction]] = []
    pivots: List[int] = []
    chosen = []
    for index, row in enumerate(matrix):
        vector = [Fraction(x) for x in row]
        for base, col in zip(basis, pivots):
            if vector[col]:
                factor = vector[col] / base[col]
                vector = [v - factor * b for v, b in zip(vector, base)]
        pivot = next((c for c, v in enumerate(vector) if v), None)
        if pivot is not None:
            basis.append(vector)
            pivots.append(pivot)
            chosen.append(index)
    return chosen
