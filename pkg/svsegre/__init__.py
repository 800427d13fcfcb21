"""svsegre - Stückrad-Vogel cycles, Segre classes and Segre numbers with exact arithmetic."""

from svsegre.chern import (
    CohomClass,
    SplitBundle,
    chern_total,
    ci_product_check,
    gysin_from_sv,
    gysin_map,
    segre_from_sv,
    segre_regular_embedding,
    segre_total,
    sv_from_segre,
)
from svsegre.groebner import Budget, Ideal, colon, hilbert, intersect, saturate
from svsegre.models import (
    BudgetExceededError,
    CheckFailedError,
    GenericityAnomalyError,
    GenericityError,
    ParseError,
    SvsegreError,
    ValidationError,
)
from svsegre.mult import AffineIdeal, hs_multiplicity, local_length, mult_at_origin, segre_numbers
from svsegre.rng import RandomSource
from svsegre.scheme import ProjScheme, SectionFamily, equalize_degrees, make_scheme
from svsegre.sv import sv_mass_check, sv_repeat, sv_run

__version__ = "0.1.0"

__all__ = [
    'AffineIdeal',
    'Budget',
    'BudgetExceededError',
    'CheckFailedError',
    'CohomClass',
    'GenericityAnomalyError',
    'GenericityError',
    'Ideal',
    'ParseError',
    'ProjScheme',
    'RandomSource',
    'SectionFamily',
    'SplitBundle',
    'SvsegreError',
    'ValidationError',
    'chern_total',
    'ci_product_check',
    'colon',
    'equalize_degrees',
    'gysin_from_sv',
    'gysin_map',
    'hilbert',
    'hs_multiplicity',
    'intersect',
    'local_length',
    'make_scheme',
    'mult_at_origin',
    'saturate',
    'segre_from_sv',
    'segre_numbers',
    'segre_regular_embedding',
    'segre_total',
    'sv_from_segre',
    'sv_mass_check',
    'sv_repeat',
    'sv_run',
]
