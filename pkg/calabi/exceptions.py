class CalabiError(Exception):
    """Erro base do app calabi"""


class DomainError(CalabiError):
    """Parâmetros (alpha, r) fora do domínio da família"""
