"""Error hierarchy and result records shared by every module."""

import dataclasses
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple


class SvsegreError(Exception):
    """Base class for all library errors; carries the CLI exit status."""
    exit_code = 1


class ValidationError(SvsegreError):
    """Exception raised when validation fails with actionable messages."""
    pass


class RingMismatchError(ValidationError):
    """Operands live in different polynomial rings."""
    pass


class NonHomogeneousError(ValidationError):
    """A homogeneous polynomial or ideal was required."""
    pass


class MixedDimensionError(ValidationError):
    """The input cycle mixes components of different dimensions."""
    pass


class NonIsolatedError(ValidationError):
    """The origin is not an isolated point of the zero set."""
    pass


class CheckFailedError(SvsegreError):
    """A consistency check reported inequality."""
    exit_code = 2


class GenericityError(SvsegreError):
    """Random choices stayed non-generic after the retry budget."""
    exit_code = 3


class GenericityAnomalyError(GenericityError):
    """Independent trials of a generic computation disagree."""

    def __init__(self, message: str, trials: List[int]):
        super().__init__(message)
        self.trials = trials


class BudgetExceededError(SvsegreError):
    """A Groebner computation ran past its pair or basis budget."""
    exit_code = 4


class ParseError(SvsegreError):
    """Syntax error in an input file, with its position."""
    exit_code = 5

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension and degree read off a Hilbert series."""
    dim: int
    degree: int

    def validate(self):
        if self.dim < -1:
            raise ValidationError(f"dimension {self.dim} is below -1")
        if self.dim >= 0 and self.degree < 1:
            raise ValidationError(
                f"a nonempty scheme of dimension {self.dim} must have positive degree, "
                f"got {self.degree}"
            )
        if self.dim == -1 and self.degree != 0:
            raise ValidationError("the empty scheme has degree 0")


@dataclass(frozen=True)
class MassReport:
    """Both sides of the mass formula for one SV run."""
    lhs: int
    rhs: int
    ok: bool
    residual_forced_zero: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {'lhs': self.lhs, 'rhs': self.rhs, 'ok': self.ok}


@dataclass(frozen=True)
class SVResult:
    """Degree vector of a Stückrad-Vogel run plus its audit trail.

    ``v_degrees[k]`` is the ordinary degree of the SV cycle of codimension k
    in the input cycle; ``out_trace[k]`` is ``(dim, degree)`` of the cycle left
    outside Z after step k.
    """
    n: int
    d: int
    mu_dim: int
    mu_degree: int
    v_degrees: Tuple[int, ...]
    residual_degree: int
    out_trace: Tuple[Tuple[int, int], ...]
    seed: int
    retries: int = 0
    sections: int = 0  # dimension of the span of the section family

    def validate(self):
        if len(self.v_degrees) != self.mu_dim + 1:
            raise ValidationError(
                f"expected {self.mu_dim + 1} SV degrees, got {len(self.v_degrees)}"
            )
        negative = [k for k, v in enumerate(self.v_degrees) if v < 0]
        if negative:
            raise ValidationError(
                f"SV cycles are effective, but codimensions {negative} have negative degree"
            )
        if self.residual_degree < 0:
            raise ValidationError("residual degree must be non-negative")

    def same_degrees(self, other: 'SVResult') -> bool:
        return (self.v_degrees == other.v_degrees
                and self.residual_degree == other.residual_degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'twist': self.d,
            'mu_dim': self.mu_dim,
            'v_degrees': list(self.v_degrees),
            'residual_degree': self.residual_degree,
            'out_trace': [list(step) for step in self.out_trace],
            'seed': self.seed,
            'retries': self.retries,
        }


@dataclass(frozen=True)
class SegreNumbers:
    """Segre numbers e_kappa..e_n of an ideal at the origin."""
    kappa: int
    e: Tuple[int, ...]
    seed: int
    below_kappa: Tuple[int, ...] = ()

    @property
    def zeros_below_kappa_ok(self) -> bool:
        return all(value == 0 for value in self.below_kappa)

    def number(self, k: int) -> int:
        """Return e_k, which is 0 below kappa."""
        if k < self.kappa:
            return 0
        return self.e[k - self.kappa]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kappa': self.kappa,
            'e': list(self.e),
            'zeros_below_kappa_ok': self.zeros_below_kappa_ok,
            'seed': self.seed,
        }


COMMANDS = (
    'sv', 'segre', 'mass-check', 'gysin', 'mult',
    'segre-numbers', 'check-gata1', 'check-roundtrip',
)

SV_COMMANDS = ('sv', 'segre', 'mass-check', 'check-gata1', 'check-roundtrip')


@dataclass
class JobSpec:
    """One CLI invocation, fully resolved."""
    command: str
    input_path: Optional[str] = None
    field: Optional[str] = None
    seed: int = 1
    trials: int = 1
    twist: Optional[int] = None
    output_format: str = 'table'
    budget: Optional[int] = None
    twists: Tuple[int, ...] = ()
    gamma: Tuple[int, ...] = (1,)
    ambient: Optional[int] = None
    dim: Optional[int] = None
    chart: Optional[Tuple[int, ...]] = None
    options: Dict[str, Any] = dataclasses.field(default_factory=dict)

    def validate(self):
        """Validate job configuration."""
        if self.command not in COMMANDS:
            raise ValidationError(
                f"Unknown command '{self.command}'. "
                f"Must be one of: {', '.join(COMMANDS)}"
            )
        if self.output_format not in ('table', 'json'):
            raise ValidationError(
                f"Output format must be 'table' or 'json', got '{self.output_format}'"
            )
        if self.trials < 1:
            raise ValidationError(f"--trials must be at least 1, got {self.trials}")
        if self.twist is not None and self.twist < 1:
            raise ValidationError(f"--twist must be positive, got {self.twist}")
        if self.budget is not None and self.budget < 1:
            raise ValidationError(f"--budget must be positive, got {self.budget}")
        if self.input_path is None and self.command not in ('gysin',):
            raise ValidationError(f"Command '{self.command}' needs an input file")
        if self.command in ('gysin', 'check-gata1') and not self.twists:
            raise ValidationError(
                f"Command '{self.command}' needs --twists, e.g. --twists 2,2"
            )
        if self.command == 'gysin' and self.input_path is None and self.ambient is None:
            raise ValidationError("gysin needs an input file or --n")
        if self.command == 'mult' and self.dim is None:
            raise ValidationError("mult needs --dim, the expected dimension of V(I)")
        if not self.runs_sv and (self.trials != 1 or self.twist is not None):
            raise ValidationError(
                f"--trials and --twist only apply to SV runs; '{self.command}' "
                f"{self._sv_hint()}"
            )
        if self.command == 'gysin' and self.twist is not None and self.twist != self.twists[0]:
            raise ValidationError(
                f"--twist {self.twist} differs from the common twist {self.twists[0]}; "
                f"the SV comparison would be skipped"
            )

    @property
    def runs_sv(self) -> bool:
        """Whether the command performs an SV run."""
        if self.command in SV_COMMANDS:
            return True
        return (self.command == 'gysin' and self.input_path is not None
                and len(set(self.twists)) == 1 and tuple(self.gamma) == (1,))

    def _sv_hint(self) -> str:
        if self.command == 'gysin':
            return "runs SV only with an input file, equal twists and the default --gamma"
        return "does not run SV"
