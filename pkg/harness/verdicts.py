from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

CONSISTENT = 'consistent-at-depth'
REFUTED = 'refuted'
OBSERVED = 'observed'

FALSIFIER_NOTE = ('definitions quantify over all gauges and partitions; '
                  'consistent-at-depth is the strongest positive verdict')


@dataclass
class EpsilonRow:
    epsilon: float
    max_sum: float
    verdict: str
    trial: Optional[int] = None
    witness: Optional[Any] = None
    sums: List[float] = field(default_factory=list)
    rejected: int = 0

    def to_dict(self) -> dict:
        return {'epsilon': self.epsilon, 'max_sum': self.max_sum, 'verdict': self.verdict,
                'trial': self.trial, 'witness': self.witness, 'sums': self.sums,
                'rejected': self.rejected}

    def summary(self) -> dict:
        return {'epsilon': self.epsilon, 'max_sum': self.max_sum, 'verdict': self.verdict,
                'trial': self.trial}


@dataclass
class HarnessReport:
    check: str
    notion: str
    rows: List[Any] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return REFUTED if any(r.verdict == REFUTED for r in self.rows) else CONSISTENT

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    def row(self, epsilon: float) -> EpsilonRow:
        return next(r for r in self.rows if getattr(r, 'epsilon', None) == epsilon)

    def to_dict(self) -> dict:
        return {'check': self.check, 'notion': self.notion, 'verdict': self.verdict,
                'rows': self.rows, 'parameters': self.parameters, 'warnings': self.warnings,
                'note': FALSIFIER_NOTE}

    def table(self) -> List[dict]:
        return [dict({'check': self.check, 'notion': self.notion}, **r.summary()) for r in self.rows]


def verdict_for(max_sum: float, epsilon: float) -> str:
    return REFUTED if max_sum >= epsilon else CONSISTENT
