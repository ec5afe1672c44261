import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, Optional, Tuple

from errors import InputError

SEED_ENV = 'GAUGEKIT_SEED'
JOBS_ENV = 'GAUGEKIT_JOBS'


@dataclass(frozen=True)
class Settings:
    """Resolved run configuration shared by the library and the CLI."""

    eta_n: Optional[float] = None
    p_n: Optional[float] = None
    refinement_budget: int = 2 ** 24
    subset_budget: int = 2 ** 16
    box_budget: int = 2 ** 25
    quadrature_order: int = 7
    seminorm_depth: int = 4
    epsilons: Tuple[float, ...] = (0.5, 0.1, 0.02)
    seed: int = 0
    jobs: int = 1
    hk_tolerance: float = 1e-6
    hk_panel_budget: int = 2 ** 22

    def __post_init__(self):
        if self.quadrature_order < 1:
            raise InputError("must be >= 1", 'quadrature_order')
        if self.seminorm_depth < 0:
            raise InputError("must be >= 0", 'seminorm_depth')
        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise InputError("must be a nonempty list of positive numbers", 'epsilons')
        if self.jobs < 1:
            raise InputError("must be >= 1", 'jobs')
        if not 0 <= self.seed < 2 ** 64:
            raise InputError("must be a 64-bit unsigned integer", 'seed')

    def with_overrides(self, **overrides: Any) -> 'Settings':
        """Return a copy with the non-None overrides applied."""
        known = {f.name for f in fields(self)}
        clean = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise InputError("unknown setting", key)
            if key == 'epsilons':
                value = tuple(float(v) for v in value)
            clean[key] = value
        return replace(self, **clean)

    def as_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['epsilons'] = list(self.epsilons)
        return data


def load_settings(path: Optional[str] = None, environ: Optional[Dict[str, str]] = None,
                  **overrides: Any) -> Settings:
    """Defaults < settings file < explicit overrides < environment."""
    settings = Settings()
    if path:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            raise InputError(f"cannot read settings file: {e}", 'config')
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e}", 'config')
        if not isinstance(data, dict):
            raise InputError("settings file must hold an object", 'config')
        settings = settings.with_overrides(**data)
    settings = settings.with_overrides(**overrides)

    env = os.environ if environ is None else environ
    env_overrides: Dict[str, Any] = {}
    for name, key in ((SEED_ENV, 'seed'), (JOBS_ENV, 'jobs')):
        raw = env.get(name)
        if raw is None or raw == '':
            continue
        try:
            env_overrides[key] = int(raw)
        except ValueError:
            raise InputError(f"not an integer: {raw!r}", name)
    return settings.with_overrides(**env_overrides)
