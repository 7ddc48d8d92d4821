"""
OdeSystem: lados direitos das cinco derivadas como RatFunc em A1..C.
"""
from typing import Any, Dict, Mapping, Optional, Sequence

import numpy as np

from structures.exceptions import StructureError
from symexpr.numeric import CompiledRatFuncs
from symexpr.ratfunc import RatFunc
from symexpr.rewrite import RewriteRule, rewrite
from symexpr.symbols import DERIVATIVES, FUNCTION_OF, FUNCTIONS, Symbol


class OdeSystem:
    """X' = rhs[dX] para X em {A1, A2, A3, B, C}"""

    def __init__(self, rhs: Mapping[Symbol, Any], name: str = 'system'):
        missing = [s.name for s in DERIVATIVES if s not in rhs]
        if missing:
            raise StructureError(f"Sistema {name} sem lado direito para {missing}")
        self.rhs: Dict[Symbol, RatFunc] = {s: RatFunc.coerce(rhs[s]) for s in DERIVATIVES}
        self.name = name
        self._compiled: Optional[CompiledRatFuncs] = None

    def __getitem__(self, symbol: Symbol) -> RatFunc:
        return self.rhs[symbol]

    def items(self):
        return [(s, self.rhs[s]) for s in DERIVATIVES]

    def substitution(self) -> Dict[Symbol, RatFunc]:
        return dict(self.rhs)

    def has_monomial_denominators(self) -> bool:
        return all(f.has_monomial_denominator() for f in self.rhs.values())

    def equals(self, other: 'OdeSystem') -> bool:
        return all(self.rhs[s] == other.rhs[s] for s in DERIVATIVES)

    def mismatches(self, other: 'OdeSystem') -> Dict[str, RatFunc]:
        """Componentes que diferem: {nome: diferença}"""
        return {
            s.name: self.rhs[s] - other.rhs[s]
            for s in DERIVATIVES
            if not self.rhs[s] == other.rhs[s]
        }

    def rewrite(self, rules: Sequence[RewriteRule], name: Optional[str] = None) -> 'OdeSystem':
        return OdeSystem({s: rewrite(f, rules) for s, f in self.rhs.items()}, name or self.name)

    def perturbed(self, symbol: Symbol, delta: Any = 1) -> 'OdeSystem':
        rhs = dict(self.rhs)
        rhs[symbol] = rhs[symbol] + RatFunc.coerce(delta)
        return OdeSystem(rhs, f'{self.name}+perturbação({symbol.name})')

    # ------------------------------------------------------------------
    # Avaliação numérica
    # ------------------------------------------------------------------

    @property
    def compiled(self) -> CompiledRatFuncs:
        if self._compiled is None:
            self._compiled = CompiledRatFuncs([self.rhs[s] for s in DERIVATIVES])
        return self._compiled

    def evaluate(self, values: Sequence[float], dtype=np.float64) -> np.ndarray:
        """values = (A1, A2, A3, B, C); dtype=np.longdouble para precisão estendida"""
        return self.compiled.evaluate(dict(zip(FUNCTIONS, values)), dtype)

    def evaluate_exact(self, point: Mapping[Symbol, Any]) -> Dict[Symbol, Any]:
        return {s: self.rhs[s].evaluate(point) for s in DERIVATIVES}

    # ------------------------------------------------------------------
    # Texto
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, str]:
        return {s.name: self.rhs[s].to_text() for s in DERIVATIVES}

    def to_text(self) -> str:
        return '\n'.join(f"{FUNCTION_OF[s].name}' = {self.rhs[s]}" for s in DERIVATIVES)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'OdeSystem({self.name})'
