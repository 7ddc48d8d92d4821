class SymExprError(Exception):
    """Erro base da aritmética simbólica"""


class DivisionByZero(SymExprError, ZeroDivisionError):
    """Denominador nulo na construção ou avaliação de uma função racional"""


class NonTerminating(SymExprError):
    """Conjunto de regras de reescrita não atinge ponto fixo"""


class InexactDivision(SymExprError):
    """Divisão polinomial com resto não nulo"""
