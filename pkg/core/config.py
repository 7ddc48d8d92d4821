"""
Configuração de uma execução.

Precedência: opções da linha de comando > arquivo --config (linhas
`chave = valor`, comentários com #) > SPIN7_SETTINGS.
"""
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from django.conf import settings

from core.exceptions import ConfigError
from flows.integrators import MAX_REL_TOL, MIN_REL_TOL
from flows.state import SeedSpec, State

logger = logging.getLogger(__name__)

COMMANDS = ('derive', 'verify', 'family', 'integrate', 'check_holonomy', 'explore_alc')
SPACINGS = ('linear', 'log')
FORMATS = ('csv', 'json')

RRange = Tuple[float, float, int, str]


def parse_float_list(text: str) -> List[float]:
    return [float(item) for item in text.replace(';', ',').split(',') if item.strip()]


def parse_r_range(text: str) -> RRange:
    parts = [item.strip() for item in text.split(',')]
    if len(parts) != 4:
        raise ValueError("r_range exige 'min,max,amostras,espacamento'")
    return float(parts[0]), float(parts[1]), int(parts[2]), parts[3]


# chave do arquivo -> conversor do texto
FILE_KEYS: Dict[str, Callable[[str], Any]] = {
    'alpha': float,
    'alpha_grid': parse_float_list,
    'r_range': parse_r_range,
    'rel_tol': float,
    'epsilon': float,
    't_end': float,
    'threads': int,
    'output_path': str,
    'format': str,
}


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Lê `chave = valor`; chave desconhecida ou valor ilegível levanta ConfigError"""
    values: Dict[str, Any] = {}
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except OSError as e:
        raise ConfigError(f"Não foi possível ler {path}: {e}") from e
    for number, raw in enumerate(lines, start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{path}:{number}: esperado 'chave = valor'")
        key, text = (part.strip() for part in line.split('=', 1))
        if key not in FILE_KEYS:
            raise ConfigError(f"{path}:{number}: chave desconhecida {key!r}")
        try:
            values[key] = FILE_KEYS[key](text)
        except ValueError as e:
            raise ConfigError(f"{path}:{number}: valor inválido para {key}: {e}") from e
    return values


@dataclass
class RunConfig:
    command: str
    alpha: Optional[float] = None
    alpha_grid: List[float] = field(default_factory=list)
    r_range: RRange = (1.001, 50.0, 200, 'log')
    ic: Optional[Union[SeedSpec, State]] = None
    rel_tol: float = 1e-10
    epsilon: float = 1e-4
    t_end: float = 100.0
    threads: int = 1
    output_path: Optional[str] = None
    format: str = 'csv'

    @classmethod
    def defaults(cls, command: str) -> 'RunConfig':
        config = settings.SPIN7_SETTINGS
        return cls(
            command=command,
            alpha_grid=list(config['ALPHA_GRID']),
            r_range=tuple(config['R_RANGE']),
            rel_tol=config['REL_TOL'],
            epsilon=config['EPSILON'],
            t_end=config['T_END'],
            threads=config['THREADS'],
        )

    @classmethod
    def build(cls, command: str, options: Mapping[str, Any]) -> 'RunConfig':
        """options: dicionário do BaseCommand; None significa 'não informado'"""
        if command not in COMMANDS:
            raise ConfigError(f"Comando desconhecido: {command!r}")
        config = cls.defaults(command)
        if options.get('config'):
            config = replace(config, **read_config_file(options['config']))
        known = {f.name for f in fields(cls)} - {'command'}
        overrides = {key: value for key, value in options.items() if key in known and value is not None}
        if overrides.get('alpha_grid') is not None and 'alpha' not in overrides:
            # grade na linha de comando vence alpha do arquivo
            overrides['alpha'] = None
        config = replace(config, **overrides)
        config.validate()
        logger.debug(f"Configuração de {command}: {config}")
        return config

    def validate(self):
        if not MIN_REL_TOL <= self.rel_tol <= MAX_REL_TOL:
            raise ConfigError(f"rel_tol = {self.rel_tol} fora de [{MIN_REL_TOL}, {MAX_REL_TOL}]")
        r_min, r_max, samples, spacing = self.r_range
        if spacing not in SPACINGS:
            raise ConfigError(f"Espaçamento {spacing!r} inválido (use {SPACINGS})")
        if not 1 <= r_min < r_max or samples < 1:
            raise ConfigError(f"r_range inválido: {self.r_range}")
        if self.format not in FORMATS:
            raise ConfigError(f"Formato {self.format!r} inválido (use {FORMATS})")
        if self.threads < 1:
            raise ConfigError(f"threads = {self.threads} deve ser positivo")

    def alphas(self) -> List[float]:
        """alpha único (linha de comando ou arquivo) ou a grade"""
        return [self.alpha] if self.alpha is not None else list(self.alpha_grid)

    def r_values(self) -> List[float]:
        r_min, r_max, samples, spacing = self.r_range
        if samples == 1:
            return [r_min]
        grid = np.geomspace(r_min, r_max, samples) if spacing == 'log' else np.linspace(r_min, r_max, samples)
        return [float(r) for r in grid]
