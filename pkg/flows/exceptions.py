class FlowError(Exception):
    """Erro base da integração; carrega a trajetória parcial, se houver"""

    def __init__(self, message: str, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class SingularDenominator(FlowError):
    """Alguma das funções A1, A2, A3, B, C está a menos de 1e-14 de zero"""


class StepUnderflow(FlowError):
    """Passo menor que 1e-14 * max(|t|, 1)"""


class SignConventionViolation(FlowError):
    """Passo aceito violaria A1 <= 0, A2 <= 0, A3 >= 0, B > 0, C > 0"""


class InvalidSpec(FlowError):
    """Semente com parâmetros fora do domínio"""
