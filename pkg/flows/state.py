"""
Estado (t, A1, A2, A3, B, C), especificação de semente e trajetória.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

import numpy as np

from symexpr.symbols import FUNCTIONS, Symbol

CSV_HEADER = ('t', 'A1', 'A2', 'A3', 'B', 'C')


@dataclass(frozen=True)
class State:
    t: float
    A1: float
    A2: float
    A3: float
    B: float
    C: float

    @classmethod
    def from_array(cls, t: float, values: np.ndarray) -> 'State':
        return cls(float(t), *(float(v) for v in values))

    @property
    def values(self) -> np.ndarray:
        return np.array([self.A1, self.A2, self.A3, self.B, self.C])

    def as_point(self) -> Dict[Symbol, float]:
        return dict(zip(FUNCTIONS, (self.A1, self.A2, self.A3, self.B, self.C)))

    def sign_ok(self) -> bool:
        """A1 <= 0, A2 <= 0, A3 >= 0, B > 0, C > 0"""
        return self.A1 <= 0 and self.A2 <= 0 and self.A3 >= 0 and self.B > 0 and self.C > 0

    def row(self) -> tuple:
        return (self.t, self.A1, self.A2, self.A3, self.B, self.C)


@dataclass(frozen=True)
class SeedSpec:
    """kind: 'symmetric' (alpha, scale) ou 'bc_equal' (a, b)"""
    kind: str
    epsilon: float = 1e-4
    alpha: float = 0.0
    a: float = 0.0
    b: float = 0.0
    scale: float = 1.0

    @classmethod
    def symmetric(cls, alpha: float, epsilon: float = 1e-4, scale: float = 1.0) -> 'SeedSpec':
        return cls('symmetric', epsilon=epsilon, alpha=alpha, scale=scale)

    @classmethod
    def bc_equal(cls, a: float, b: float, epsilon: float = 1e-4) -> 'SeedSpec':
        return cls('bc_equal', epsilon=epsilon, a=a, b=b)


@dataclass
class Trajectory:
    samples: List[State] = field(default_factory=list)
    accepted: int = 0
    rejected: int = 0
    max_error: float = 0.0
    status: str = 'running'
    message: str = ''

    def append(self, state: State):
        if self.samples and state.t <= self.samples[-1].t:
            raise ValueError(f"t não crescente: {state.t} <= {self.samples[-1].t}")
        self.samples.append(state)

    @property
    def initial(self) -> State:
        return self.samples[0]

    @property
    def final(self) -> State:
        return self.samples[-1]

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[State]:
        return iter(self.samples)

    def rows(self) -> Iterator[tuple]:
        for state in self.samples:
            yield state.row()

    def at_or_after(self, t: float) -> Optional[State]:
        return next((s for s in self.samples if s.t >= t), None)

    def diagnostics(self) -> Dict[str, object]:
        return {
            'samples': len(self.samples),
            'accepted': self.accepted,
            'rejected': self.rejected,
            'max_error': self.max_error,
            'status': self.status,
            'message': self.message,
        }
