"""Settings file support."""

import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

import yaml
from sympy import isprime

from svsegre.groebner import Budget
from svsegre.models import ValidationError
from svsegre.poly import DEFAULT_PRIME
from svsegre.rng import DEFAULT_RATIONAL_BOUND
from svsegre.scheme import DEFAULT_FAMILY_SLACK, DEFAULT_RETRIES


@dataclass
class Settings:
    """Tunables shared by all commands."""
    prime: int = DEFAULT_PRIME
    rational_bound: int = DEFAULT_RATIONAL_BOUND
    retries: int = DEFAULT_RETRIES
    max_pairs: int = 200000
    max_basis: int = 5000
    stabilization_cap: int = 64
    family_slack: int = DEFAULT_FAMILY_SLACK
    seed: int = 1

    def validate(self):
        """Validate settings."""
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"Setting '{f.name}' must be an integer, got {value!r}")
        if not isprime(self.prime):
            raise ValidationError(f"Setting 'prime' must be a prime, got {self.prime}")
        for name in ('rational_bound', 'max_pairs', 'max_basis'):
            if getattr(self, name) < 1:
                raise ValidationError(f"Setting '{name}' must be positive")
        if self.retries < 0:
            raise ValidationError("Setting 'retries' must be non-negative")
        if self.family_slack < 1:
            raise ValidationError("Setting 'family_slack' must be at least 1")
        if self.stabilization_cap < 2:
            raise ValidationError("Setting 'stabilization_cap' must be at least 2")

    @property
    def budget(self) -> Budget:
        return Budget(max_pairs=self.max_pairs, max_basis=self.max_basis)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Settings':
        """Create Settings from a mapping, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(
                f"Unknown setting(s): {', '.join(unknown)}. "
                f"Valid settings: {', '.join(sorted(known))}"
            )
        settings = cls(**data)
        settings.validate()
        return settings

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_settings(path: Optional[str] = None) -> Settings:
    """Load settings from a YAML file; defaults when no path is given.

    Raises:
        ValidationError: If the file is missing, malformed or invalid.
    """
    if path is None:
        return Settings()
    if not os.path.exists(path):
        raise ValidationError(f"Settings file not found: {path}")
    try:
        with open(path, 'r') as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ValidationError(f"Invalid YAML in settings file: {e}")
    if data is None:
        return Settings()
    if not isinstance(data, dict):
        raise ValidationError("Settings file must contain a mapping of setting names to values")
    return Settings.from_dict(data)
