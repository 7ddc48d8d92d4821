"""
Evidência de holonomia pelo fechamento de Phi e das formas de Kähler
ao longo da família. Os rótulos são evidência de fechamento neste
coreferencial, não prova de holonomia.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from django.conf import settings

from calabi.exceptions import DomainError
from calabi.family import sample
from structures.closure import LABELS, ClosureReport, closure_report
from structures.reference import reference_system

logger = logging.getLogger(__name__)

SP2_LABEL = 'Sp(2) evidence'
SU4_LABEL = 'SU(4) evidence'
INCONCLUSIVE_LABEL = 'inconclusive'


@dataclass
class HolonomyEvidence:
    alpha: float
    label: str
    maxima: Dict[str, float]
    radii: List[float] = field(default_factory=list)
    reports: List[ClosureReport] = field(default_factory=list)

    def as_dict(self) -> Dict[str, object]:
        return {
            'alpha': self.alpha,
            'label': self.label,
            'maxima': self.maxima,
            'per_r': [{'r': r, **report.as_dict()} for r, report in zip(self.radii, self.reports)],
        }


def classify(maxima: Dict[str, float], closed_tol: float, open_tol: float) -> str:
    if maxima['phi'] >= closed_tol or maxima['omega1'] >= closed_tol:
        return INCONCLUSIVE_LABEL
    if maxima['omega2'] < closed_tol and maxima['omega3'] < closed_tol:
        return SP2_LABEL
    if maxima['omega2'] >= open_tol:
        return SU4_LABEL
    return INCONCLUSIVE_LABEL


def holonomy_evidence(alpha: float, radii: Optional[Sequence[float]] = None) -> HolonomyEvidence:
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha = {alpha} fora de [0, 1]")
    config = settings.SPIN7_SETTINGS
    radii = list(radii or config['HOLONOMY_R_GRID'])
    system = reference_system()

    reports = [closure_report(sample(alpha, r).as_point(), system) for r in radii]
    maxima = {label: max(getattr(report, label) for report in reports) for label in LABELS}
    label = classify(maxima, config['CLOSED_TOL'], config['OPEN_TOL'])
    logger.info(f"alpha = {alpha}: {label} ({maxima})")
    return HolonomyEvidence(alpha=alpha, label=label, maxima=maxima, radii=radii, reports=reports)
