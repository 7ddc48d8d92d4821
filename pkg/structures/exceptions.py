class StructureError(Exception):
    """Erro base do app structures"""


class SingularSystem(StructureError):
    """Sistema linear nas derivadas é degenerado"""


class ReductionFailure(StructureError):
    """Redução pelo ansatz deixou resíduo não nulo"""

    def __init__(self, item: str, residual):
        self.item = item
        self.residual = residual
        super().__init__(f"Item {item}: resíduo {residual}")
