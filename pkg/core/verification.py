"""
Suítes de verificação exata.

Cada suíte é um BaseCheck; o VerificationManager executa as suítes pedidas
(todas, por omissão) e devolve um veredito por suíte.
"""
import logging
import random
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Type

from calabi.identities import (
    F_identity_residual, verify_alpha0_identity, verify_F_identity, verify_root_normalization,
)
from coframe.forms import ALL_BASIS, MAX_DEGREE, Form, ext_d
from coframe.horizontal import HorizontalSymbol, table_mismatches
from core.exceptions import ConfigError
from structures.ansatz import reduce_ansatz, verify_kahler_on_ansatz
from structures.derivation import derive_ode, verify_lemma1
from structures.exceptions import ReductionFailure
from structures.frame import cayley_deviation, kahler_deviation, self_wedge_volume
from structures.reference import reference_bc_equal_system, reference_system
from symexpr.symbols import FUNCTIONS

logger = logging.getLogger(__name__)

FRAME_TOL = 1e-12


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ''
    residual: str = ''

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


class BaseCheck:
    """Classe base para todas as verificações"""

    suite = ''
    name = ''

    def check(self) -> CheckResult:
        raise NotImplementedError

    def result(self, passed: bool, detail: str = '', residual: str = '') -> CheckResult:
        return CheckResult(self.suite, self.name, passed, detail, residual)

    def run(self) -> CheckResult:
        try:
            result = self.check()
        except Exception as e:
            logger.exception(f"Erro na verificação {self.suite}")
            return self.result(False, f'{type(e).__name__}', str(e))
        if result.passed:
            logger.info(f"{self.suite}: ok")
        else:
            logger.error(f"{self.suite}: falhou ({result.residual})")
        return result


class Lemma1Check(BaseCheck):
    suite = 'lemma1'
    name = 'dPhi = 0 equivale ao sistema geral'

    def check(self) -> CheckResult:
        derived = derive_ode()
        mismatches = derived.mismatches(reference_system())
        if mismatches:
            residual = '; '.join(f'{key}: {value}' for key, value in mismatches.items())
            return self.result(False, 'sistema derivado difere do de referência', residual)
        if not verify_lemma1(reference_system()):
            return self.result(False, 'dPhi não se anula com o sistema de referência', 'dPhi != 0')
        return self.result(True, '5 lados direitos idênticos; dPhi = 0 após substituição')


class AnsatzCheck(BaseCheck):
    suite = 'ansatz'
    name = 'redução pelo ansatz'

    def check(self) -> CheckResult:
        try:
            report = reduce_ansatz(reference_system())
        except ReductionFailure as e:
            return self.result(False, f'item {e.item}', str(e.residual))
        return self.result(True, f"A1' reduzido: {report.reduced_dA1}")


class FIdentityCheck(BaseCheck):
    suite = 'f-identity'
    name = 'identidade de F'

    def check(self) -> CheckResult:
        if not verify_F_identity():
            return self.result(False, "dF/drho + F G != 4", str(F_identity_residual()))
        if not verify_root_normalization():
            return self.result(False, 'beta = 2 alpha^4 - 1 não anula F em rho = 1', 'F(1) != 0')
        if not verify_alpha0_identity():
            return self.result(False, "alpha = 0: rhs(dA1) != -1 - 3/r^8", 'ver log')
        return self.result(True, 'identidade exata em (rho, alpha, beta); alpha = 0 exata em r = 2, 3, 5')


class D2Check(BaseCheck):
    suite = 'd2'
    name = 'd^2 = 0 nos geradores'

    def generators(self) -> List[Form]:
        vertical = [Form.basis(name) for name in ('dt', 'e1', 'e2', 'e3')]
        horizontal = [Form.basis(horizontal=symbol) for symbol in HorizontalSymbol if symbol is not HorizontalSymbol.UNIT]
        return vertical + horizontal

    def check(self) -> CheckResult:
        failures = [form.to_text() for form in self.generators() if not ext_d(ext_d(form)).is_zero()]
        if failures:
            return self.result(False, 'd^2 != 0', ', '.join(failures))
        return self.result(True, f'{len(self.generators())} geradores')


class DSquaredAllCheck(BaseCheck):
    suite = 'd-squared-all'
    name = 'd^2 = 0 em toda a base'

    def check(self) -> CheckResult:
        failures = []
        for basis in ALL_BASIS:
            if basis.degree + 2 > MAX_DEGREE:
                continue
            if not ext_d(ext_d(Form({basis: 1}))).is_zero():
                failures.append(basis.label)
        if failures:
            return self.result(False, 'd^2 != 0', ', '.join(failures))
        return self.result(True, f'{len(ALL_BASIS)} elementos de base')


class HorizontalTableCheck(BaseCheck):
    suite = 'horizontal-table'
    name = 'horizontal table'

    def check(self) -> CheckResult:
        mismatches = table_mismatches()
        if mismatches:
            residual = '; '.join(
                f'{left.label}*{right.label}: tabela {found}, oráculo {expected}'
                for (left, right), (found, expected) in mismatches.items()
            )
            return self.result(False, f'{len(mismatches)} entradas divergem', residual)
        return self.result(True, 'tabela fixa igual ao oráculo em eta4..eta7')


class BcEqualCheck(BaseCheck):
    suite = 'bc-equal'
    name = 'especialização B = C'

    def check(self) -> CheckResult:
        mismatches = derive_ode(bc_equal=True).mismatches(reference_bc_equal_system())
        if mismatches:
            residual = '; '.join(f'{key}: {value}' for key, value in mismatches.items())
            return self.result(False, 'sistema B = C difere', residual)
        return self.result(True, 'sistema derivado com C -> B igual ao sistema B = C')


class KahlerAnsatzCheck(BaseCheck):
    suite = 'kahler-ansatz'
    name = 'dOmega1 = 0 no ansatz'

    def check(self) -> CheckResult:
        if not verify_kahler_on_ansatz(reference_system()):
            return self.result(False, 'dOmega1 não se anula', 'ver log')
        return self.result(True, 'dOmega1 reescrito pelo ansatz é a forma nula')


class CayleyFrameCheck(BaseCheck):
    suite = 'cayley-frame'
    name = 'forma de Cayley no referencial ortonormal'
    points = 20

    def check(self) -> CheckResult:
        rng = random.Random(7)
        worst = 0.0
        for _ in range(self.points):
            point = {s: rng.choice([-1, 1]) * rng.uniform(0.2, 3.0) for s in FUNCTIONS}
            worst = max(worst, cayley_deviation(point), *(kahler_deviation(point, k) for k in (1, 2, 3)))
            volume = self_wedge_volume(point)
            if abs(volume - 14.0) > FRAME_TOL * 14:
                return self.result(False, 'Phi ^ Phi != 14 vol', f'{volume!r}')
        if worst >= FRAME_TOL:
            return self.result(False, 'desvio da forma padrão', f'{worst:.3e}')
        return self.result(True, f'desvio máximo {worst:.3e} em {self.points} pontos')


class CheckFactory:
    """Factory para criar verificações pelo nome da suíte"""

    CHECKS: Dict[str, Type[BaseCheck]] = {
        check.suite: check
        for check in (
            Lemma1Check, AnsatzCheck, FIdentityCheck, D2Check, HorizontalTableCheck,
            BcEqualCheck, KahlerAnsatzCheck, CayleyFrameCheck, DSquaredAllCheck,
        )
    }

    @classmethod
    def suites(cls) -> List[str]:
        return list(cls.CHECKS)

    @classmethod
    def create_check(cls, suite: str) -> BaseCheck:
        try:
            return cls.CHECKS[suite]()
        except KeyError:
            raise ConfigError(f"Suíte desconhecida: {suite!r} (disponíveis: {', '.join(cls.CHECKS)})") from None


@dataclass
class VerificationReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    def as_dict(self) -> Dict[str, object]:
        return {'passed': self.passed, 'results': [result.as_dict() for result in self.results]}


class VerificationManager:
    """Gerenciador das suítes de verificação"""

    def __init__(self, suites: Optional[Sequence[str]] = None):
        names = list(suites) if suites else CheckFactory.suites()
        self.checks = [CheckFactory.create_check(name) for name in names]

    def run(self) -> VerificationReport:
        report = VerificationReport()
        for check in self.checks:
            report.results.append(check.run())
        logger.info(f"Verificação: {len(report.results) - len(report.failed)}/{len(report.results)} suítes ok")
        return report
