"""
Álgebra exterior "crua" sobre n geradores, com monômios em bitmask.

Serve de oráculo: expande w1, w2, w3, w e vol em eta4..eta7 e, na
verificação do referencial ortonormal, trabalha com e0..e7.
"""
from typing import Any, Dict, Iterable


def blade_sign(left: int, right: int) -> int:
    """Sinal de reordenar left^right (bitmasks disjuntos) em ordem crescente"""
    swaps = 0
    bits = right
    while bits:
        low = bits & -bits
        # geradores de left com índice maior que o de low
        swaps += bin(left & ~((low << 1) - 1)).count('1')
        bits ^= low
    return -1 if swaps % 2 else 1


class RawForm:
    """Combinação linear de monômios em bitmask"""

    __slots__ = ('terms',)

    def __init__(self, terms: Dict[int, Any] = None):
        self.terms = {mask: c for mask, c in (terms or {}).items() if c != 0}

    @classmethod
    def generator(cls, index: int) -> 'RawForm':
        return cls({1 << index: 1})

    @classmethod
    def blade(cls, indices: Iterable[int], coeff: Any = 1) -> 'RawForm':
        form = cls({0: coeff})
        for index in indices:
            form = form.wedge(cls.generator(index))
        return form

    def __add__(self, other: 'RawForm') -> 'RawForm':
        terms = dict(self.terms)
        for mask, c in other.terms.items():
            terms[mask] = terms.get(mask, 0) + c
        return RawForm(terms)

    def __neg__(self) -> 'RawForm':
        return RawForm({mask: -c for mask, c in self.terms.items()})

    def __sub__(self, other: 'RawForm') -> 'RawForm':
        return self + (-other)

    def scale(self, factor: Any) -> 'RawForm':
        return RawForm({mask: c * factor for mask, c in self.terms.items()})

    def wedge(self, other: 'RawForm') -> 'RawForm':
        terms: Dict[int, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                mask = m1 | m2
                terms[mask] = terms.get(mask, 0) + blade_sign(m1, m2) * c1 * c2
        return RawForm(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RawForm):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f'RawForm({self.terms})'
