class CoframeError(Exception):
    """Erro base da álgebra exterior"""


class DegreeOverflow(CoframeError):
    """Produto exterior com grau total acima de 8"""


class DerivativeSymbolPresent(CoframeError):
    """Coeficiente já contém símbolos de derivada (d aplicado duas vezes)"""
